#include "slabsens/adjoint.hpp"

#include <cmath>

#include "slabsens/analytic.hpp"

namespace slabsens {

ScalarField solve_first_adjoint(const ModelParameters& p, const Grid& grid,
                                SolveLedger& ledger) {
  return solve_bvp(p, grid, SourceSpec::delta(p.detector_b, p.sigma_d),
                   ledger, SolveTag::first_adjoint);
}

AdjointBundle solve_second_adjoints(const ModelParameters& p, const Grid& grid,
                                    const ScalarField& psi,
                                    const ScalarField& phi,
                                    SolveLedger& ledger) {
  if (!(psi.grid == grid) || !(phi.grid == grid))
    throw std::invalid_argument("adjoint bundle: grid mismatch");

  const double siga = p.sigma_a, d = p.diff_coeff, q = p.source_q;

  ScalarField lambda1 = solve_bvp(p, grid, SourceSpec::from_field(psi),
                                  ledger, SolveTag::second_adjoint);
  ScalarField theta1 = solve_bvp(p, grid, SourceSpec::from_field(phi),
                                 ledger, SolveTag::second_adjoint);

  ScalarField theta2_src(grid);
  for (std::size_t i = 0; i < grid.n_nodes; ++i)
    theta2_src[i] = q / d - siga / d * phi[i];
  ScalarField theta2 = solve_bvp(p, grid, SourceSpec::from_field(theta2_src),
                                 ledger, SolveTag::second_adjoint);

  // Reuse rules: no further solves. lambda4 rescales the detector source to
  // unit strength; theta3 satisfies the unit-source equation, which -phi/Q
  // solves exactly; lambda2's source is -(sigma_a/D) times lambda1's.
  ScalarField lambda4(grid), theta3(grid), lambda2(grid);
  for (std::size_t i = 0; i < grid.n_nodes; ++i) {
    lambda4[i] = psi[i] / p.sigma_d;
    theta3[i] = -phi[i] / q;
    lambda2[i] = -siga / d * lambda1[i];
  }

  return AdjointBundle{psi,     std::move(lambda1), std::move(theta1),
                       std::move(theta2), std::move(lambda4),
                       std::move(theta3), std::move(lambda2), 4};
}

double closed_form_psi(const ModelParameters& p, double x) {
  const double k = p.reciprocal_diffusion_length();
  const double a = p.half_thickness_a, b = p.detector_b;
  const double pref = p.sigma_d / std::sqrt(p.sigma_a * p.diff_coeff);
  // Green-product form. The piecewise c_b form is equivalent on paper but
  // cancels catastrophically for detectors on the negative half; here both
  // factors are nonnegative and the boundary zeros are exact.
  const double lo = std::min(x, b), hi = std::max(x, b);
  return -pref * sinh_ratio((a + lo) * k, 2.0 * a * k) *
         std::sinh((a - hi) * k);
}

namespace {

// Particular solution of the lambda1 system. The source is psi itself, which
// lies in the operator's kernel directions, so the particular solution picks
// up the resonance factor x*cosh(..)/(2kD) on the smooth part and an extra
// sinh term behind the detector kink.
double lambda1_particular(const ModelParameters& p, double x) {
  const double k = p.reciprocal_diffusion_length();
  const double a = p.half_thickness_a, b = p.detector_b;
  const double pref = p.sigma_d / std::sqrt(p.sigma_a * p.diff_coeff);
  const double c_b = sinh_ratio((b - a) * k, 2.0 * a * k);
  const double two_kd = 2.0 * k * p.diff_coeff;
  double v = c_b * x * std::cosh((x + a) * k) / two_kd;
  if (x >= b) {
    const double y = x - b;
    v += y * std::cosh(y * k) / two_kd - std::sinh(y * k) / (2.0 * p.sigma_a);
  }
  return pref * v;
}

} // namespace

double closed_form_lambda1(const ModelParameters& p, double x) {
  const double k = p.reciprocal_diffusion_length();
  const double a = p.half_thickness_a;
  // Homogeneous correction with k-scaled arguments; unscaled sinh(x)/cosh(x)
  // cannot meet the boundary conditions (see the unit tests).
  const double pa = lambda1_particular(p, a);
  const double pma = lambda1_particular(p, -a);
  const double alpha1 = -(pa - pma) / (2.0 * std::sinh(a * k));
  const double alpha2 = -(pa + pma) / (2.0 * std::cosh(a * k));
  return lambda1_particular(p, x) + alpha1 * std::sinh(x * k) +
         alpha2 * std::cosh(x * k);
}

double closed_form_theta1(const ModelParameters& p, double x) {
  const double q = p.source_q, siga = p.sigma_a;
  const double root = std::sqrt(p.diff_coeff * siga);
  return q / (2.0 * siga * root) * helper_B_at(p, x) -
         q / (siga * siga) * helper_A_at(p, x);
}

double closed_form_theta2(const ModelParameters& p, double x) {
  const double k = p.reciprocal_diffusion_length();
  const double d = p.diff_coeff;
  return -p.source_q / (2.0 * k * d * d) * helper_B_at(p, x);
}

double closed_form_theta3(const ModelParameters& p, double x) {
  return -helper_A_at(p, x) / p.sigma_a; // equals -phi(x)/Q
}

} // namespace slabsens
