#pragma once

#include "slabsens/params.hpp"

namespace slabsens {

// Stable hyperbolic ratios. Arguments like a*k reach ~17.5 at nominal
// parameters and ~35 in intermediate expressions, where naive evaluation of
// cosh/cosh-type ratios loses precision. The identities below hold for all
// arguments and never form the difference of two large numbers.

/// cosh(num)/cosh(den)
double cosh_ratio(double num, double den);

/// sinh(num)/sinh(den); den must be nonzero
double sinh_ratio(double num, double den);

/// sinh(num)/cosh(den)
double sinh_over_cosh(double num, double den);

/// 1/cosh(z); underflows gracefully to 0 for very large |z|
double sech(double z);

// Hyperbolic profile helpers. A is dimensionless, B = dA/dk [cm],
// C = dB/dk [cm^2]; all are even in the detector position.
double helper_A(const ModelParameters& p);
double helper_B(const ModelParameters& p);
double helper_C(const ModelParameters& p);

// Same helpers evaluated at an arbitrary position instead of detector_b.
double helper_A_at(const ModelParameters& p, double x);
double helper_B_at(const ModelParameters& p, double x);

/// phi(x) = (Q/sigma_a) * [1 - cosh(x k)/cosh(a k)]; zero at x = +-a.
double analytic_flux(const ModelParameters& p, double x);

/// R = sigma_d * phi(b) [n/(cm^3 s)]
double analytic_response(const ModelParameters& p);

} // namespace slabsens
