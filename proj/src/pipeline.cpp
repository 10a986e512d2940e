#include "slabsens/pipeline.hpp"

#include "slabsens/analytic.hpp"

namespace slabsens {

ResponseBundle compute_response_bundle(const ModelParameters& p,
                                       const Grid& grid) {
  p.validate();
  SolveLedger ledger;

  ScalarField phi = solve_bvp(p, grid, SourceSpec::uniform(grid, -p.source_q),
                              ledger, SolveTag::forward);
  ScalarField psi = solve_first_adjoint(p, grid, ledger);
  AdjointBundle adj = solve_second_adjoints(p, grid, psi, phi, ledger);

  const double response_numeric = p.sigma_d * sample_at(phi, p.detector_b);
  SensitivityVector first_quad = first_order_quadrature(adj, phi, p);
  SensitivityMatrix second_quad = second_order_quadrature(adj, phi, p);
  SymmetryReport sym_quad = symmetry_report(adj, phi, p);

  return ResponseBundle{p,
                        grid,
                        std::move(phi),
                        std::move(adj),
                        response_numeric,
                        analytic_response(p),
                        first_quad,
                        first_order_closed_form(p),
                        second_quad,
                        second_order_closed_form(p),
                        std::move(sym_quad),
                        symmetry_report_closed_form(p),
                        ledger};
}

} // namespace slabsens
