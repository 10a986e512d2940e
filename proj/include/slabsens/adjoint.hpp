#pragma once

#include "slabsens/bvp.hpp"
#include "slabsens/params.hpp"

namespace slabsens {

/// The four solved adjoint fields plus the three derived by reuse rules.
/// The two remaining members of the second-order family are identically zero
/// and are therefore not represented at all.
struct AdjointBundle {
  ScalarField psi;     // first adjoint: D psi'' - sigma_a psi = sigma_d delta(x-b)
  ScalarField lambda1; // source psi
  ScalarField theta1;  // source phi
  ScalarField theta2;  // source Q/D - (sigma_a/D) phi
  ScalarField lambda4; // derived: psi / sigma_d
  ScalarField theta3;  // derived: -phi / Q
  ScalarField lambda2; // derived: -(sigma_a/D) lambda1
  std::size_t solve_count = 0; // large-scale adjoint solves behind the bundle
};

/// Solves the first adjoint system; ledger gains one first-adjoint entry.
/// psi carries a derivative kink at the detector (slope jump sigma_d/D) and
/// is nonpositive across the slab in this sign convention.
ScalarField solve_first_adjoint(const ModelParameters& p, const Grid& grid,
                                SolveLedger& ledger);

/// Performs the three remaining large-scale solves (lambda1, theta1, theta2)
/// and fills the derived members; bundle.solve_count ends at 4 including psi.
AdjointBundle solve_second_adjoints(const ModelParameters& p, const Grid& grid,
                                    const ScalarField& psi,
                                    const ScalarField& phi,
                                    SolveLedger& ledger);

// Closed forms for the solved fields, used as grid-convergence oracles.
// Each vanishes at x = +-a.
double closed_form_psi(const ModelParameters& p, double x);
double closed_form_lambda1(const ModelParameters& p, double x);
double closed_form_theta1(const ModelParameters& p, double x);
double closed_form_theta2(const ModelParameters& p, double x);
double closed_form_theta3(const ModelParameters& p, double x);

} // namespace slabsens
