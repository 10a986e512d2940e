#include "slabsens/analytic.hpp"

#include <cmath>

namespace slabsens {

namespace {

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

} // namespace

double cosh_ratio(double num, double den) {
  // cosh(z) = exp(|z|) * (1 + exp(-2|z|)) / 2
  const double n = std::abs(num), d = std::abs(den);
  return std::exp(n - d) * (1.0 + std::exp(-2.0 * n)) /
         (1.0 + std::exp(-2.0 * d));
}

double sinh_ratio(double num, double den) {
  // sinh(z) = sign(z) * exp(|z|) * (1 - exp(-2|z|)) / 2; -expm1 keeps the
  // numerator accurate for small |num|.
  const double n = std::abs(num), d = std::abs(den);
  return sign_of(num) * sign_of(den) * std::exp(n - d) *
         (-std::expm1(-2.0 * n)) / (-std::expm1(-2.0 * d));
}

double sinh_over_cosh(double num, double den) {
  const double n = std::abs(num), d = std::abs(den);
  return sign_of(num) * std::exp(n - d) * (-std::expm1(-2.0 * n)) /
         (1.0 + std::exp(-2.0 * d));
}

double sech(double z) {
  const double a = std::abs(z);
  return 2.0 * std::exp(-a) / (1.0 + std::exp(-2.0 * a));
}

double helper_A_at(const ModelParameters& p, double x) {
  const double k = p.reciprocal_diffusion_length();
  return 1.0 - cosh_ratio(x * k, p.half_thickness_a * k);
}

double helper_B_at(const ModelParameters& p, double x) {
  const double k = p.reciprocal_diffusion_length();
  const double a = p.half_thickness_a;
  // B = [a sinh(ak) cosh(xk) - x sinh(xk) cosh(ak)] / cosh^2(ak); tanh goes
  // through the same kernel as the second term so B(+-a) closes exactly
  return a * sinh_over_cosh(a * k, a * k) * cosh_ratio(x * k, a * k) -
         x * sinh_over_cosh(x * k, a * k);
}

double helper_A(const ModelParameters& p) {
  return helper_A_at(p, p.detector_b);
}

double helper_B(const ModelParameters& p) {
  return helper_B_at(p, p.detector_b);
}

double helper_C(const ModelParameters& p) {
  const double k = p.reciprocal_diffusion_length();
  const double a = p.half_thickness_a;
  const double b = p.detector_b;
  const double ratio = cosh_ratio(b * k, a * k);
  const double s = sech(a * k);
  return 2.0 * a * a * ratio * s * s +
         2.0 * a * b * std::tanh(a * k) * sinh_over_cosh(b * k, a * k) -
         (a * a + b * b) * ratio;
}

double analytic_flux(const ModelParameters& p, double x) {
  if (std::abs(x) > p.half_thickness_a)
    throw std::domain_error("flux position outside the slab");
  return p.source_q / p.sigma_a * helper_A_at(p, x);
}

double analytic_response(const ModelParameters& p) {
  return p.sigma_d * analytic_flux(p, p.detector_b);
}

} // namespace slabsens
