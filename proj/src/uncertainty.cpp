#include "slabsens/uncertainty.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace slabsens {

std::vector<UncertaintyCase> UncertaintyCase::standard_cases() {
  return {
      {"case1", {0.0, 0.0, 0.15, 0.0}},
      {"case2", {0.0, 0.0, 0.0, 0.15}},
      {"case3", {0.15, 0.0, 0.0, 0.0}},
      {"case4", {0.0, 0.15, 0.0, 0.0}},
      {"case5", {0.10, 0.10, 0.10, 0.10}},
  };
}

double expected_value(double nominal_response, const SensitivityMatrix& m,
                      const UncertaintyCase& c, const ModelParameters& p) {
  const auto sig = c.absolute_sigmas(p);
  double shift = 0.0;
  for (std::size_t i = 0; i < kNumParams; ++i)
    shift += m.at(i, i) * sig[i] * sig[i];
  return nominal_response + 0.5 * shift;
}

double variance(const SensitivityVector& v, const SensitivityMatrix& m,
                const UncertaintyCase& c, const ModelParameters& p) {
  const auto sig = c.absolute_sigmas(p);
  double var = 0.0;
  for (std::size_t i = 0; i < kNumParams; ++i) {
    const double s2 = sig[i] * sig[i];
    var += v[i] * v[i] * s2 + 0.5 * m.at(i, i) * m.at(i, i) * s2 * s2;
  }
  return var;
}

double covariance(const SensitivityVector& vk, const SensitivityMatrix& mk,
                  const SensitivityVector& vl, const SensitivityMatrix& ml,
                  const UncertaintyCase& c, const ModelParameters& p) {
  const auto sig = c.absolute_sigmas(p);
  double cov = 0.0;
  for (std::size_t i = 0; i < kNumParams; ++i) {
    const double s2 = sig[i] * sig[i];
    cov += vk[i] * vl[i] * s2 + 0.5 * mk.at(i, i) * ml.at(i, i) * s2 * s2;
  }
  return cov;
}

double correlation(double cov, double var_k, double var_l) {
  if (!(var_k > 0.0) || !(var_l > 0.0))
    throw std::invalid_argument("correlation needs positive variances");
  double rho = cov / std::sqrt(var_k * var_l);
  if (std::abs(rho) > 1.0 + 1e-12)
    throw std::runtime_error("correlation outside [-1, 1]");
  if (rho > 1.0) rho = 1.0;
  if (rho < -1.0) rho = -1.0;
  return rho;
}

std::pair<double, double> third_moment_and_skewness(
    const SensitivityVector& v, const SensitivityMatrix& m,
    const UncertaintyCase& c, const ModelParameters& p) {
  const auto sig = c.absolute_sigmas(p);
  double mu3 = 0.0;
  for (std::size_t i = 0; i < kNumParams; ++i) {
    const double s2 = sig[i] * sig[i];
    mu3 += 3.0 * v[i] * v[i] * m.at(i, i) * s2 * s2;
  }
  const double var = variance(v, m, c, p);
  const double skew = var > 0.0 ? mu3 / std::pow(var, 1.5) : 0.0;
  return {mu3, skew};
}

ResponseMoments compute_moments(double nominal_response,
                                const SensitivityVector& v,
                                const SensitivityMatrix& m,
                                const UncertaintyCase& c,
                                const ModelParameters& p) {
  const auto [mu3, skew] = third_moment_and_skewness(v, m, c, p);
  return ResponseMoments{expected_value(nominal_response, m, c, p),
                         variance(v, m, c, p), mu3, skew};
}

SurrogateSample sample_surrogate_moments(double nominal_response,
                                         const SensitivityVector& v,
                                         const SensitivityMatrix& m,
                                         const UncertaintyCase& c,
                                         const ModelParameters& p,
                                         std::size_t n_samples,
                                         std::uint64_t seed,
                                         std::size_t n_batches) {
  if (n_batches < 2 || n_samples < n_batches)
    throw std::invalid_argument("surrogate sampling needs >= 2 batches");
  const auto sig = c.absolute_sigmas(p);
  const std::size_t batch_size = n_samples / n_batches;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit;

  std::vector<double> b_mean(n_batches), b_var(n_batches), b_skew(n_batches);
  std::vector<double> values(batch_size);
  for (std::size_t b = 0; b < n_batches; ++b) {
    for (std::size_t s = 0; s < batch_size; ++s) {
      double r = nominal_response;
      for (std::size_t i = 0; i < kNumParams; ++i) {
        const double d = unit(rng) * sig[i];
        r += v[i] * d + 0.5 * m.at(i, i) * d * d;
      }
      values[s] = r;
    }
    double mean = 0.0;
    for (double x : values) mean += x;
    mean /= static_cast<double>(batch_size);
    double var = 0.0, mu3 = 0.0;
    for (double x : values) {
      const double d = x - mean;
      var += d * d;
      mu3 += d * d * d;
    }
    var /= static_cast<double>(batch_size);
    mu3 /= static_cast<double>(batch_size);
    b_mean[b] = mean;
    b_var[b] = var;
    b_skew[b] = var > 0.0 ? mu3 / std::pow(var, 1.5) : 0.0;
  }

  auto summarize = [&](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd =
        std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return std::pair<double, double>{
        mean, sd / std::sqrt(static_cast<double>(xs.size()))};
  };

  const auto [mean, se_mean] = summarize(b_mean);
  const auto [var, se_var] = summarize(b_var);
  const auto [skew, se_skew] = summarize(b_skew);
  return SurrogateSample{mean, var, skew, se_mean, se_var, se_skew};
}

} // namespace slabsens
