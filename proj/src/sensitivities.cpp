#include "slabsens/sensitivities.hpp"

#include <cmath>

#include "slabsens/analytic.hpp"

namespace slabsens {

const std::array<const char*, kNumParams> kParamNames = {
    "sigma_a", "diff_coeff", "source_q", "sigma_d"};

double SensitivityMatrix::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < kNumParams; ++i)
    for (std::size_t j = i; j < kNumParams; ++j)
      m = std::max(m, std::abs(at(i, j)));
  return m;
}

bool within_mixed_tolerance(double x, double y, double rel, double floor) {
  return std::abs(x - y) <= std::max(rel * std::abs(y), floor);
}

SensitivityVector first_order_quadrature(const AdjointBundle& bundle,
                                         const ScalarField& phi,
                                         const ModelParameters& p) {
  const double siga = p.sigma_a, d = p.diff_coeff, q = p.source_q;
  const double psi_phi = integrate(bundle.psi, phi);
  const double psi_int = integrate(bundle.psi);

  SensitivityVector v;
  v.method = Method::quadrature;
  v.s[0] = psi_phi;
  // phi'' in the D-sensitivity integrand is eliminated via the governing
  // equation: phi'' = (sigma_a*phi - Q)/D.
  v.s[1] = -siga / d * psi_phi + q / d * psi_int;
  v.s[2] = -psi_int;
  v.s[3] = sample_at(phi, p.detector_b);
  return v;
}

SensitivityVector first_order_closed_form(const ModelParameters& p) {
  const double siga = p.sigma_a, d = p.diff_coeff, q = p.source_q,
               sigd = p.sigma_d;
  const double k = p.reciprocal_diffusion_length();
  const double a_val = helper_A(p), b_val = helper_B(p);

  SensitivityVector v;
  v.method = Method::closed_form;
  v.s[0] = q * sigd *
           (-a_val / (siga * siga) +
            b_val / (2.0 * siga * std::sqrt(d * siga)));
  v.s[1] = -(q * sigd / (2.0 * d * siga)) * k * b_val;
  v.s[2] = sigd / siga * a_val;
  v.s[3] = q / siga * a_val;
  return v;
}

namespace {

struct QuadratureTerms {
  double psi_phi, psi_int;
  double lam1_phi_plus_th1_psi, lam1_int;
  double lam2_phi, lam2_int, th2_psi;
  double th3_psi;
  double th1_b, th2_b, th3_b;
};

QuadratureTerms collect_terms(const AdjointBundle& bundle,
                              const ScalarField& phi,
                              const ModelParameters& p) {
  QuadratureTerms t{};
  t.psi_phi = integrate(bundle.psi, phi);
  t.psi_int = integrate(bundle.psi);
  t.lam1_phi_plus_th1_psi =
      integrate(bundle.lambda1, phi) + integrate(bundle.theta1, bundle.psi);
  t.lam1_int = integrate(bundle.lambda1);
  t.lam2_phi = integrate(bundle.lambda2, phi);
  t.lam2_int = integrate(bundle.lambda2);
  t.th2_psi = integrate(bundle.theta2, bundle.psi);
  t.th3_psi = integrate(bundle.theta3, bundle.psi);
  t.th1_b = sample_at(bundle.theta1, p.detector_b);
  t.th2_b = sample_at(bundle.theta2, p.detector_b);
  t.th3_b = sample_at(bundle.theta3, p.detector_b);
  return t;
}

} // namespace

SensitivityMatrix second_order_quadrature(const AdjointBundle& bundle,
                                          const ScalarField& phi,
                                          const ModelParameters& p) {
  const double siga = p.sigma_a, d = p.diff_coeff, q = p.source_q,
               sigd = p.sigma_d;
  const QuadratureTerms t = collect_terms(bundle, phi, p);

  SensitivityMatrix m;
  m.method = Method::quadrature;
  m.set(0, 0, t.lam1_phi_plus_th1_psi);
  m.set(0, 1, -siga / d * t.lam1_phi_plus_th1_psi + q / d * t.lam1_int -
                  sigd / d * t.th1_b);
  m.set(0, 2, -t.lam1_int);
  m.set(0, 3, t.th1_b);
  // The mixed-D entries carry direct-effect terms in 1/D alongside the
  // adjoint integrals; all second derivatives of phi and psi are eliminated
  // via the governing equations before integration.
  m.set(1, 1, siga / (d * d) * t.psi_phi - q / (d * d) * t.psi_int -
                  (siga / d * t.lam2_phi - q / d * t.lam2_int) -
                  (siga / d * t.th2_psi + sigd / d * t.th2_b));
  m.set(1, 2, 1.0 / d * t.psi_int - t.lam2_int);
  m.set(1, 3, t.th2_b);
  m.set(2, 2, 0.0); // the response is linear in Q
  m.set(2, 3, -t.th3_b);
  m.set(3, 3, 0.0); // and linear in sigma_d
  return m;
}

SensitivityMatrix second_order_closed_form(const ModelParameters& p) {
  const double siga = p.sigma_a, d = p.diff_coeff, q = p.source_q,
               sigd = p.sigma_d;
  const double k = p.reciprocal_diffusion_length();
  const double a_val = helper_A(p), b_val = helper_B(p), c_val = helper_C(p);
  const SensitivityVector first = first_order_closed_form(p);

  SensitivityMatrix m;
  m.method = Method::closed_form;
  m.set(0, 0, q * sigd / (siga * siga * siga) *
                  (2.0 * a_val - 1.25 * k * b_val + 0.25 * k * k * c_val));
  m.set(0, 1, q * sigd * k / (4.0 * d * siga * siga) * (b_val - k * c_val));
  m.set(0, 2, first[0] / q);
  m.set(0, 3, first[0] / sigd);
  m.set(1, 1, q * sigd * k / (4.0 * d * d * siga) * (3.0 * b_val + k * c_val));
  m.set(1, 2, first[1] / q);
  m.set(1, 3, first[1] / sigd);
  m.set(2, 2, 0.0);
  m.set(2, 3, a_val / siga);
  m.set(3, 3, 0.0);
  return m;
}

SensitivityVector to_relative(const SensitivityVector& v,
                              const ModelParameters& p, double response) {
  if (!(response > 0.0))
    throw std::invalid_argument("relative sensitivities need R > 0");
  const std::array<double, kNumParams> alpha = {p.sigma_a, p.diff_coeff,
                                                p.source_q, p.sigma_d};
  SensitivityVector r = v;
  for (std::size_t i = 0; i < kNumParams; ++i)
    r.s[i] = v[i] * alpha[i] / response;
  return r;
}

SensitivityMatrix to_relative(const SensitivityMatrix& m,
                              const ModelParameters& p, double response) {
  if (!(response > 0.0))
    throw std::invalid_argument("relative sensitivities need R > 0");
  const std::array<double, kNumParams> alpha = {p.sigma_a, p.diff_coeff,
                                                p.source_q, p.sigma_d};
  SensitivityMatrix r;
  r.method = m.method;
  for (std::size_t i = 0; i < kNumParams; ++i)
    for (std::size_t j = i; j < kNumParams; ++j)
      r.set(i, j, m.at(i, j) * alpha[i] * alpha[j] / response);
  return r;
}

SymmetryReport symmetry_report(const AdjointBundle& bundle,
                               const ScalarField& phi,
                               const ModelParameters& p) {
  const double siga = p.sigma_a, d = p.diff_coeff, q = p.source_q,
               sigd = p.sigma_d;
  const QuadratureTerms t = collect_terms(bundle, phi, p);
  const SensitivityMatrix m = second_order_quadrature(bundle, phi, p);

  // Alternate routes through the higher-index adjoint systems.
  const double lam4_phi = integrate(bundle.lambda4, phi);
  const double lam4_int = integrate(bundle.lambda4);
  const double s41 = lam4_phi;
  const double s42 = -(siga / d * lam4_phi - q / d * lam4_int);
  const double s31 = -t.th3_psi;
  const double s32 = siga / d * t.th3_psi + sigd / d * t.th3_b;
  const double s21 = -1.0 / d * t.psi_phi + t.lam2_phi + t.th2_psi;

  SymmetryReport r{{SymmetryPair{"S12/S21", m.at(0, 1), s21},
                    SymmetryPair{"S13/S31", m.at(0, 2), s31},
                    SymmetryPair{"S14/S41", m.at(0, 3), s41},
                    SymmetryPair{"S23/S32", m.at(1, 2), s32},
                    SymmetryPair{"S24/S42", m.at(1, 3), s42}},
                   Method::quadrature};
  return r;
}

SymmetryReport symmetry_report_closed_form(const ModelParameters& p) {
  const SensitivityMatrix m = second_order_closed_form(p);
  const SensitivityVector first = first_order_closed_form(p);

  // The identity routes divide the first-order forms by sigma_d or Q; the
  // detector-sampled routes evaluate the theta fields at b. Both reduce to
  // the same algebra, so agreement here probes consistent implementation,
  // not discretization.
  const double s41 = first[0] / p.sigma_d;
  const double s42 = first[1] / p.sigma_d;
  const double s31 = first[0] / p.source_q;
  const double s32 = first[1] / p.source_q;
  const double s14 = closed_form_theta1(p, p.detector_b);
  const double s24 = closed_form_theta2(p, p.detector_b);

  SymmetryReport r{{SymmetryPair{"S12/S21", m.at(0, 1), m.at(0, 1)},
                    SymmetryPair{"S13/S31", m.at(0, 2), s31},
                    SymmetryPair{"S14/S41", s14, s41},
                    SymmetryPair{"S23/S32", m.at(1, 2), s32},
                    SymmetryPair{"S24/S42", s24, s42}},
                   Method::closed_form};
  return r;
}

} // namespace slabsens
