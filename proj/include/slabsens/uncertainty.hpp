#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slabsens/params.hpp"
#include "slabsens/sensitivities.hpp"

namespace slabsens {

/// Relative standard deviation per parameter, uncorrelated Gaussian model.
struct UncertaintyCase {
  std::string name;
  std::array<double, kNumParams> sigma_rel{}; // order: sigma_a, D, Q, sigma_d

  [[nodiscard]] std::array<double, kNumParams>
  absolute_sigmas(const ModelParameters& p) const {
    return {sigma_rel[0] * p.sigma_a, sigma_rel[1] * p.diff_coeff,
            sigma_rel[2] * p.source_q, sigma_rel[3] * p.sigma_d};
  }

  /// The five standard cases: 15% on one parameter at a time (Q, sigma_d,
  /// sigma_a, D), then 10% on all four.
  static std::vector<UncertaintyCase> standard_cases();
};

/// Second-order moments of one response under one uncertainty case.
struct ResponseMoments {
  double expected_value;        // [response units]
  double variance;              // [units^2]
  double third_central_moment;  // [units^3]
  double skewness;              // dimensionless
};

double expected_value(double nominal_response, const SensitivityMatrix& m,
                      const UncertaintyCase& c, const ModelParameters& p);

double variance(const SensitivityVector& v, const SensitivityMatrix& m,
                const UncertaintyCase& c, const ModelParameters& p);

double covariance(const SensitivityVector& vk, const SensitivityMatrix& mk,
                  const SensitivityVector& vl, const SensitivityMatrix& ml,
                  const UncertaintyCase& c, const ModelParameters& p);

/// cov/sqrt(var_k var_l); overshoots beyond 1 by less than 1e-12 are clipped.
double correlation(double cov, double var_k, double var_l);

/// Returns (third central moment, skewness); skewness is 0 when variance is 0.
std::pair<double, double> third_moment_and_skewness(
    const SensitivityVector& v, const SensitivityMatrix& m,
    const UncertaintyCase& c, const ModelParameters& p);

ResponseMoments compute_moments(double nominal_response,
                                const SensitivityVector& v,
                                const SensitivityMatrix& m,
                                const UncertaintyCase& c,
                                const ModelParameters& p);

/// Empirical moments of the sampled Taylor surrogate with batch standard
/// errors. The surrogate keeps the linear terms and the diagonal quadratic
/// terms, i.e. exactly the terms the moment formulas model; mixed-index
/// quadratic terms would shift variance and skewness away from those
/// formulas (see the unit tests for the measured effect).
struct SurrogateSample {
  double mean, variance, skewness;
  double se_mean, se_variance, se_skewness;
};

SurrogateSample sample_surrogate_moments(double nominal_response,
                                         const SensitivityVector& v,
                                         const SensitivityMatrix& m,
                                         const UncertaintyCase& c,
                                         const ModelParameters& p,
                                         std::size_t n_samples,
                                         std::uint64_t seed,
                                         std::size_t n_batches = 25);

} // namespace slabsens
