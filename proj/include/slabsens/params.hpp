#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace slabsens {

/// Physical parameters of the slab problem. Units are fixed: cm, cm^-1,
/// neutrons/(cm^3 s). All values are validated at construction; every
/// downstream formula divides by sigma_a, diff_coeff and cosh(a*k).
struct ModelParameters {
  double sigma_a;          // macroscopic absorption cross section [cm^-1]
  double diff_coeff;       // diffusion coefficient D [cm]
  double source_q;         // volumetric source strength [n/(cm^3 s)]
  double sigma_d;          // detector reaction cross section [cm^-1]
  double half_thickness_a; // extrapolated half-thickness [cm]
  double detector_b;       // detector position, |b| < a [cm]

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!std::isfinite(v) || v <= 0.0)
        throw std::invalid_argument(std::string(name) +
                                    " must be finite and positive");
    };
    positive(sigma_a, "sigma_a");
    positive(diff_coeff, "diff_coeff");
    positive(source_q, "source_q");
    positive(sigma_d, "sigma_d");
    positive(half_thickness_a, "half_thickness_a");
    if (!std::isfinite(detector_b) ||
        std::abs(detector_b) >= half_thickness_a)
      throw std::invalid_argument("detector_b must satisfy |b| < a");
    // keeps every hyperbolic intermediate below ~exp(300)
    if (half_thickness_a * reciprocal_diffusion_length() > 150.0)
      throw std::invalid_argument(
          "a*k too large for double-precision hyperbolic evaluation");
  }

  /// k = sqrt(sigma_a / D) [cm^-1], the decay constant of the flux profile.
  [[nodiscard]] double reciprocal_diffusion_length() const {
    return std::sqrt(sigma_a / diff_coeff);
  }

  [[nodiscard]] ModelParameters with_detector(double b) const {
    ModelParameters p = *this;
    p.detector_b = b;
    p.validate();
    return p;
  }

  /// Nominal configuration: an indium-like detector in a water-moderated slab.
  static ModelParameters nominal(double b = 10.0) {
    ModelParameters p{0.0197, 0.16, 1.0e7, 7.438, 50.0, b};
    p.validate();
    return p;
  }
};

/// Thin wrapper so call sites can state which length scale they mean.
struct DiffusionLength {
  double k; // [cm^-1]

  static DiffusionLength of(const ModelParameters& p) {
    return {p.reciprocal_diffusion_length()};
  }
};

} // namespace slabsens
