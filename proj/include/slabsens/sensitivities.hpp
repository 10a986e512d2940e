#pragma once

#include <array>
#include <string>

#include "slabsens/adjoint.hpp"
#include "slabsens/bvp.hpp"
#include "slabsens/params.hpp"

namespace slabsens {

enum class Method { quadrature, closed_form };

constexpr std::size_t kNumParams = 4;

/// Parameter order everywhere: [0] sigma_a, [1] diff_coeff, [2] source_q,
/// [3] sigma_d.
extern const std::array<const char*, kNumParams> kParamNames;

/// dR/d(alpha_i), absolute units.
struct SensitivityVector {
  std::array<double, kNumParams> s{};
  Method method = Method::closed_form;

  double operator[](std::size_t i) const { return s[i]; }
};

/// d2R/d(alpha_i)d(alpha_j). Ten distinct entries stored once (upper
/// triangle); the accessor mirrors them. The canonical (i < j) value comes
/// from the adjoint system of the lower index; the alternate routes live in
/// SymmetryReport.
struct SensitivityMatrix {
  std::array<double, kNumParams * kNumParams> packed{};
  Method method = Method::closed_form;

  [[nodiscard]] double at(std::size_t i, std::size_t j) const {
    return i <= j ? packed[i * kNumParams + j] : packed[j * kNumParams + i];
  }
  void set(std::size_t i, std::size_t j, double v) {
    if (i > j) std::swap(i, j);
    packed[i * kNumParams + j] = v;
  }
  [[nodiscard]] double max_abs() const;
};

/// One mixed partial computed along its two independent routes.
struct SymmetryPair {
  std::string label;   // e.g. "S12/S21"
  double primary;      // canonical route (lower-index adjoint system)
  double alternate;    // the other route
};

struct SymmetryReport {
  std::array<SymmetryPair, 5> pairs;
  Method method;
};

SensitivityVector first_order_quadrature(const AdjointBundle& bundle,
                                         const ScalarField& phi,
                                         const ModelParameters& p);
SensitivityVector first_order_closed_form(const ModelParameters& p);

SensitivityMatrix second_order_quadrature(const AdjointBundle& bundle,
                                          const ScalarField& phi,
                                          const ModelParameters& p);
SensitivityMatrix second_order_closed_form(const ModelParameters& p);

/// S_rel = S_i * alpha_i / R and S_ij * alpha_i * alpha_j / R.
SensitivityVector to_relative(const SensitivityVector& v,
                              const ModelParameters& p, double response);
SensitivityMatrix to_relative(const SensitivityMatrix& m,
                              const ModelParameters& p, double response);

SymmetryReport symmetry_report(const AdjointBundle& bundle,
                               const ScalarField& phi,
                               const ModelParameters& p);
SymmetryReport symmetry_report_closed_form(const ModelParameters& p);

/// Mixed comparison used wherever entries span many decades: pass when
/// |x - y| <= max(rel*|y|, floor). `floor` is 1e-6 times the dominating
/// magnitude of the structure the entry belongs to.
bool within_mixed_tolerance(double x, double y, double rel, double floor);

} // namespace slabsens
