#include "slabsens/bvp.hpp"

#include <cmath>
#include <stdexcept>

namespace slabsens {

std::size_t Grid::node_of(double pos) const {
  const double offset = (pos + half_thickness_a) / spacing();
  const double rounded = std::round(offset);
  if (rounded < 0.0 || rounded > static_cast<double>(n_nodes - 1) ||
      std::abs(offset - rounded) > 1e-9)
    throw std::invalid_argument("position does not coincide with a grid node");
  return static_cast<std::size_t>(rounded);
}

const char* to_string(SolveTag tag) {
  switch (tag) {
    case SolveTag::forward: return "forward";
    case SolveTag::first_adjoint: return "first-adjoint";
    case SolveTag::second_adjoint: return "second-adjoint";
    case SolveTag::verification: return "verification";
  }
  return "unknown";
}

ScalarField solve_bvp(const ModelParameters& p, const Grid& grid,
                      const SourceSpec& source, SolveLedger& ledger,
                      SolveTag tag) {
  p.validate();
  const std::size_t n = grid.n_nodes;
  const double dx = grid.spacing();

  std::vector<double> rhs(n, 0.0);
  if (!source.smooth.empty()) {
    if (source.smooth.size() != n)
      throw std::invalid_argument("smooth source length mismatch");
    rhs = source.smooth;
  }
  for (const auto& d : source.deltas)
    rhs[grid.node_of(d.position)] += d.weight / dx;

  // Interior unknowns u_1..u_{n-2}; boundary values are identically zero.
  const std::size_t m = n - 2;
  const double off = p.diff_coeff / (dx * dx);
  const double diag = -2.0 * off - p.sigma_a;

  // Thomas algorithm; the matrix is symmetric negative definite, so the
  // elimination cannot hit a zero pivot for valid parameters.
  std::vector<double> c_prime(m), d_prime(m);
  double pivot = diag;
  if (pivot == 0.0) throw std::runtime_error("singular tridiagonal system");
  c_prime[0] = off / pivot;
  d_prime[0] = rhs[1] / pivot;
  for (std::size_t i = 1; i < m; ++i) {
    pivot = diag - off * c_prime[i - 1];
    if (pivot == 0.0) throw std::runtime_error("singular tridiagonal system");
    c_prime[i] = off / pivot;
    d_prime[i] = (rhs[i + 1] - off * d_prime[i - 1]) / pivot;
  }

  ScalarField u(grid);
  u[m] = d_prime[m - 1];
  for (std::size_t i = m - 1; i >= 1; --i)
    u[i] = d_prime[i - 1] - c_prime[i - 1] * u[i + 1];

  ledger.record(tag);
  return u;
}

double integrate(const ScalarField& f) {
  const std::size_t n = f.grid.n_nodes;
  const double h = f.grid.spacing();
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n - 1; i += 2) odd += f[i];
  for (std::size_t i = 2; i < n - 1; i += 2) even += f[i];
  return h / 3.0 * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
}

double integrate(const ScalarField& f, const ScalarField& g) {
  if (!(f.grid == g.grid))
    throw std::invalid_argument("integrate: fields on different grids");
  const std::size_t n = f.grid.n_nodes;
  const double h = f.grid.spacing();
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n - 1; i += 2) odd += f[i] * g[i];
  for (std::size_t i = 2; i < n - 1; i += 2) even += f[i] * g[i];
  return h / 3.0 *
         (f[0] * g[0] + f[n - 1] * g[n - 1] + 4.0 * odd + 2.0 * even);
}

double sample_at(const ScalarField& f, double pos) {
  return f[f.grid.node_of(pos)];
}

} // namespace slabsens
