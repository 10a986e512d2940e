#include "slabsens/forward.hpp"

#include <cmath>

#include "slabsens/analytic.hpp"

namespace slabsens {

ScalarField solve_forward_sensitivity(const ModelParameters& p,
                                      const Grid& grid,
                                      const ParameterVariation& variation,
                                      SolveLedger& ledger,
                                      const ScalarField* phi) {
  const double siga = p.sigma_a, d = p.diff_coeff, q = p.source_q;

  ScalarField phi_local(grid);
  if (phi == nullptr) {
    phi_local = solve_bvp(p, grid, SourceSpec::uniform(grid, -q), ledger,
                          SolveTag::verification);
    phi = &phi_local;
  } else if (!(phi->grid == grid)) {
    throw std::invalid_argument("solve_forward_sensitivity: grid mismatch");
  }

  SourceSpec src;
  src.smooth.resize(grid.n_nodes);
  for (std::size_t i = 0; i < grid.n_nodes; ++i) {
    const double phi_second = (siga * (*phi)[i] - q) / d; // governing equation
    src.smooth[i] = -(variation.d_diff * phi_second -
                      variation.d_sigma_a * (*phi)[i] + variation.d_q);
  }
  return solve_bvp(p, grid, src, ledger, SolveTag::verification);
}

double closed_form_h_phi(const ModelParameters& p,
                         const ParameterVariation& variation, double x) {
  const double siga = p.sigma_a, d = p.diff_coeff, q = p.source_q;
  const double a_val = helper_A_at(p, x);
  const double b_val = helper_B_at(p, x);
  return -(variation.d_sigma_a * q / siga - variation.d_q) * a_val / siga -
         (variation.d_diff / d - variation.d_sigma_a / siga) * q /
             (2.0 * std::sqrt(d * siga)) * b_val;
}

double total_first_variation(const ModelParameters& p, const Grid& grid,
                             const ParameterVariation& variation,
                             const ScalarField& h_phi) {
  if (!(h_phi.grid == grid))
    throw std::invalid_argument("total_first_variation: grid mismatch");
  const double phi_b = analytic_flux(p, p.detector_b);
  return variation.d_sigma_d * phi_b +
         p.sigma_d * sample_at(h_phi, p.detector_b);
}

} // namespace slabsens
