#pragma once

#include "slabsens/bvp.hpp"
#include "slabsens/params.hpp"
#include "slabsens/sensitivities.hpp"

namespace slabsens {

/// A joint variation of the four parameters.
struct ParameterVariation {
  double d_sigma_a = 0.0;  // [cm^-1]
  double d_diff = 0.0;     // [cm]
  double d_q = 0.0;        // [n/(cm^3 s)]
  double d_sigma_d = 0.0;  // [cm^-1]

  [[nodiscard]] std::array<double, kNumParams> as_array() const {
    return {d_sigma_a, d_diff, d_q, d_sigma_d};
  }
};

/// Solves the forward sensitivity equation for the flux variation h_phi:
/// L h_phi = -[(dD) phi'' - (d_sigma_a) phi + dQ], h_phi(+-a) = 0, with
/// phi'' eliminated via the governing equation. Ledger-tagged verification;
/// these solves never count against the adjoint budget. When `phi` is null a
/// reference flux is solved first (also tagged verification); passing the
/// discrete flux keeps the discrete duality identity exact.
ScalarField solve_forward_sensitivity(const ModelParameters& p,
                                      const Grid& grid,
                                      const ParameterVariation& variation,
                                      SolveLedger& ledger,
                                      const ScalarField* phi = nullptr);

/// Closed form of h_phi for the same variation (exact, no solve).
double closed_form_h_phi(const ModelParameters& p,
                         const ParameterVariation& variation, double x);

/// Full first variation of the response: direct effect d_sigma_d * phi(b)
/// plus indirect effect sigma_d * h_phi(b).
double total_first_variation(const ModelParameters& p, const Grid& grid,
                             const ParameterVariation& variation,
                             const ScalarField& h_phi);

} // namespace slabsens
