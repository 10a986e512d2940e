#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "slabsens/params.hpp"

namespace slabsens {

/// Uniform grid on [-a, a]. n_nodes is odd so that x = 0 and the default
/// detector positions land exactly on nodes.
struct Grid {
  std::size_t n_nodes;
  double half_thickness_a;

  Grid(std::size_t n, double a) : n_nodes(n), half_thickness_a(a) {
    if (n < 3 || n % 2 == 0)
      throw std::invalid_argument("grid needs an odd node count >= 3");
    if (!(a > 0.0))
      throw std::invalid_argument("grid half-thickness must be positive");
  }

  [[nodiscard]] double spacing() const {
    return 2.0 * half_thickness_a / static_cast<double>(n_nodes - 1);
  }
  [[nodiscard]] double x(std::size_t i) const {
    return -half_thickness_a + static_cast<double>(i) * spacing();
  }
  /// Index of the node at `pos`; throws if `pos` is not on the grid.
  [[nodiscard]] std::size_t node_of(double pos) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_nodes == b.n_nodes &&
           a.half_thickness_a == b.half_thickness_a;
  }
};

/// One real value per grid node.
struct ScalarField {
  Grid grid;
  std::vector<double> values;

  ScalarField(const Grid& g, double fill = 0.0)
      : grid(g), values(g.n_nodes, fill) {}

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Right-hand side s(x) of the operator equation. Delta components must sit
/// exactly on grid nodes; they are deposited as weight/spacing at the node.
struct SourceSpec {
  struct Delta {
    double position; // [cm]
    double weight;
  };
  std::vector<double> smooth; // per-node values; empty means zero
  std::vector<Delta> deltas;

  static SourceSpec uniform(const Grid& g, double value) {
    SourceSpec s;
    s.smooth.assign(g.n_nodes, value);
    return s;
  }
  static SourceSpec from_field(const ScalarField& f) {
    SourceSpec s;
    s.smooth = f.values;
    return s;
  }
  static SourceSpec delta(double position, double weight) {
    SourceSpec s;
    s.deltas.push_back({position, weight});
    return s;
  }
};

enum class SolveTag { forward, first_adjoint, second_adjoint, verification };

const char* to_string(SolveTag tag);

/// Counts every pass through the tridiagonal solver, tagged by purpose.
/// The adjoint tags are the ones bounded by the 4-solve budget.
struct SolveLedger {
  std::array<std::size_t, 4> counts{};

  void record(SolveTag tag) { ++counts[static_cast<std::size_t>(tag)]; }
  [[nodiscard]] std::size_t count(SolveTag tag) const {
    return counts[static_cast<std::size_t>(tag)];
  }
  [[nodiscard]] std::size_t total() const {
    std::size_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  [[nodiscard]] std::size_t adjoint_total() const {
    return count(SolveTag::first_adjoint) + count(SolveTag::second_adjoint);
  }
};

/// Solves D*u'' - sigma_a*u = s(x) on (-a, a) with u(+-a) = 0 by second-order
/// central differences and a tridiagonal direct solve. The discrete system is
/// D*(u_{i-1} - 2u_i + u_{i+1})/dx^2 - sigma_a*u_i = s_i at interior nodes.
ScalarField solve_bvp(const ModelParameters& p, const Grid& grid,
                      const SourceSpec& source, SolveLedger& ledger,
                      SolveTag tag);

/// Composite Simpson integral of a field over [-a, a] (odd node count).
double integrate(const ScalarField& f);

/// Composite Simpson integral of the pointwise product f*g.
double integrate(const ScalarField& f, const ScalarField& g);

/// Nodal value at a position that must coincide with a grid node. Integrals
/// against delta functions are evaluated this way, never by quadrature of the
/// deposited spike.
double sample_at(const ScalarField& f, double pos);

} // namespace slabsens
