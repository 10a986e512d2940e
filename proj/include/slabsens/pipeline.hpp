#pragma once

#include "slabsens/adjoint.hpp"
#include "slabsens/bvp.hpp"
#include "slabsens/params.hpp"
#include "slabsens/sensitivities.hpp"

namespace slabsens {

/// Everything the pipeline produces for one detector position. The ledger is
/// private to the bundle: one forward solve for the flux and exactly four
/// adjoint-tagged solves behind the complete first- plus second-order set.
struct ResponseBundle {
  ModelParameters params;
  Grid grid;
  ScalarField phi;
  AdjointBundle adjoints;
  double response_numeric;
  double response_analytic;
  SensitivityVector first_quad, first_closed;
  SensitivityMatrix second_quad, second_closed;
  SymmetryReport sym_quad, sym_closed;
  SolveLedger ledger;
};

ResponseBundle compute_response_bundle(const ModelParameters& p,
                                       const Grid& grid);

} // namespace slabsens
