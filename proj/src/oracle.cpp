#include "softcore/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cfloat>
#include <cmath>

#include <fmt/format.h>

#include "softcore/errors.hpp"

namespace softcore::oracle {

void GridSpec::validate() const {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw DomainError("grid r_max must be positive");
  if (n < 100) throw DomainError(fmt::format("grid needs at least 100 interior points, got {}", n));
}

double GridSpec::spacing() const {
  const double span = geometry == Geometry::full_line ? 2.0 * r_max : r_max;
  return span / (n + 1);
}

std::vector<double> GridSpec::points() const {
  const double h = spacing();
  const double start = geometry == Geometry::full_line ? -r_max : 0.0;
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = start + (i + 1) * h;
  if (geometry == Geometry::full_line) {
    // Exact mirror symmetry of the node set.
    for (int i = 0; i < n / 2; ++i) r[static_cast<std::size_t>(n - 1 - i)] = -r[static_cast<std::size_t>(i)];
    if (n % 2 == 1) r[static_cast<std::size_t>(n / 2)] = 0.0;
  }
  return r;
}

GridSpec grid_with_spacing(double r_max, double h, Geometry geometry) {
  if (!(h > 0.0)) throw DomainError("grid spacing must be positive");
  const double span = geometry == Geometry::full_line ? 2.0 * r_max : r_max;
  GridSpec spec{r_max, static_cast<int>(std::lround(span / h)) - 1, geometry};
  spec.validate();
  return spec;
}

namespace {

struct Tridiagonal {
  std::vector<double> d;
  std::vector<double> e;  // size d.size() - 1
};

struct BlockPair {
  double value;
  std::vector<double> vector;
  bool converged;
};

std::vector<BlockPair> solve_lowest(const Tridiagonal& t, int k) {
  const auto n = static_cast<lapack_int>(t.d.size());
  if (k < 1 || k > n) throw DomainError(fmt::format("requested {} eigenvalues of a {}-point grid", k, n));
  lapack_int m = 0, nsplit = 0;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<lapack_int> iblock(static_cast<std::size_t>(n)), isplit(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, 1, k, 2.0 * DBL_MIN, t.d.data(), t.e.data(), &m,
                                         &nsplit, w.data(), iblock.data(), isplit.data());
  if (info < 0) throw DomainError(fmt::format("dstebz rejected argument {}", -info));
  if (info > 0 || m != k) throw NonConvergenceError("Sturm bisection did not resolve the requested eigenvalues");

  std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  std::vector<lapack_int> ifail(static_cast<std::size_t>(m));
  const lapack_int vinfo = LAPACKE_dstein(LAPACK_COL_MAJOR, n, t.d.data(), t.e.data(), m, w.data(), iblock.data(),
                                          isplit.data(), z.data(), n, ifail.data());
  if (vinfo < 0) throw DomainError(fmt::format("dstein rejected argument {}", -vinfo));
  std::vector<bool> failed(static_cast<std::size_t>(m), false);
  for (lapack_int i = 0; i < vinfo; ++i) failed[static_cast<std::size_t>(ifail[static_cast<std::size_t>(i)] - 1)] = true;

  std::vector<BlockPair> out;
  out.reserve(static_cast<std::size_t>(m));
  for (lapack_int j = 0; j < m; ++j) {
    const auto col = z.begin() + static_cast<std::ptrdiff_t>(j) * n;
    out.push_back({w[static_cast<std::size_t>(j)], std::vector<double>(col, col + n), !failed[static_cast<std::size_t>(j)]});
  }
  std::sort(out.begin(), out.end(), [](const BlockPair& x, const BlockPair& y) { return x.value < y.value; });
  return out;
}

void normalize(std::vector<double>& v, double h) {
  double sum = 0.0, peak = 0.0;
  for (double x : v) {
    sum += x * x;
    peak = std::max(peak, std::fabs(x));
  }
  double scale = 1.0 / std::sqrt(sum * h);
  for (double x : v) {
    if (std::fabs(x) > 1e-6 * peak) {
      if (x < 0.0) scale = -scale;
      break;
    }
  }
  for (double& x : v) x *= scale;
}

Tridiagonal laplacian_plus(std::span<const double> potential, double h) {
  const double inv_h2 = 1.0 / (h * h);
  Tridiagonal t;
  t.d.resize(potential.size());
  for (std::size_t i = 0; i < potential.size(); ++i) t.d[i] = 2.0 * inv_h2 + potential[i];
  t.e.assign(potential.size() - 1, -inv_h2);
  return t;
}

std::vector<Eigenpair> finish(std::vector<BlockPair> pairs, double h) {
  std::vector<Eigenpair> out;
  out.reserve(pairs.size());
  for (auto& p : pairs) {
    normalize(p.vector, h);
    out.push_back({p.value, std::move(p.vector), p.converged});
  }
  return out;
}

std::vector<Eigenpair> parity_block(std::span<const double> potential, const GridSpec& spec, Parity parity, int k) {
  const int n = spec.n;
  const double h = spec.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const bool even = parity == Parity::even;

  // Right half of the grid with the reflection condition folded into the
  // first row. With a centre node, the even block is symmetrized by scaling
  // the centre entry by sqrt(2) and the odd block drops it (u(0) = 0).
  const bool centre = n % 2 == 1;
  const int first = centre ? (even ? n / 2 : n / 2 + 1) : n / 2;
  const std::span<const double> half = potential.subspan(static_cast<std::size_t>(first));
  Tridiagonal t = laplacian_plus(half, h);
  if (centre && even) {
    t.e[0] = -std::sqrt(2.0) * inv_h2;
  } else if (!centre) {
    t.d[0] += even ? -inv_h2 : inv_h2;
  }

  std::vector<Eigenpair> out;
  for (auto& p : solve_lowest(t, k)) {
    std::vector<double> full(static_cast<std::size_t>(n), 0.0);
    const double sign = even ? 1.0 : -1.0;
    for (std::size_t j = 0; j < p.vector.size(); ++j) {
      const auto right = static_cast<std::size_t>(first) + j;
      double value = p.vector[j];
      if (centre && even && j == 0) value *= std::sqrt(2.0);
      full[right] = value;
      full[static_cast<std::size_t>(n - 1) - right] = right == static_cast<std::size_t>(n - 1) - right ? value : sign * value;
    }
    normalize(full, h);
    out.push_back({p.value, std::move(full), p.converged});
  }
  return out;
}

// Step height times the fraction of the cell [r - h/2, r + h/2] inside the core.
double cell_average(const SoftCorePotential& pot, double r, double h) {
  const double lo = r - 0.5 * h, hi = r + 0.5 * h;
  const double inside = std::clamp(pot.range, lo, hi) - std::clamp(-pot.range, lo, hi);
  return pot.height * inside / h;
}

std::vector<double> values(const std::vector<Eigenpair>& pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.value);
  return out;
}

}  // namespace

std::vector<Eigenpair> diagonalize(std::span<const double> potential, const GridSpec& spec, int k) {
  spec.validate();
  if (potential.size() != static_cast<std::size_t>(spec.n)) {
    throw DomainError(fmt::format("potential has {} values for a {}-point grid", potential.size(), spec.n));
  }
  const double h = spec.spacing();
  return finish(solve_lowest(laplacian_plus(potential, h), k), h);
}

std::vector<double> effective_potential(const SoftCorePotential& pot, AngularChannel ch, const GridSpec& spec) {
  pot.validate();
  ch.validate();
  if (spec.geometry != Geometry::half_line_dirichlet) throw DomainError("angular channels need a half-line grid");
  const double h = spec.spacing();
  const double centrifugal = ch.l * (ch.l + 1.0);
  std::vector<double> v;
  for (double r : spec.points()) v.push_back(cell_average(pot, r, h) + 0.25 * r * r + centrifugal / (r * r));
  return v;
}

std::vector<double> effective_potential(const SoftCorePotential& pot, const GridSpec& spec) {
  pot.validate();
  if (spec.geometry != Geometry::full_line) throw DomainError("parity sectors need a full-line grid");
  const double h = spec.spacing();
  std::vector<double> v;
  for (double x : spec.points()) v.push_back(cell_average(pot, x, h) + 0.25 * x * x);
  return v;
}

std::vector<Eigenpair> oracle_eigenpairs(const SoftCorePotential& pot, AngularChannel ch, const GridSpec& spec, int k) {
  return diagonalize(effective_potential(pot, ch, spec), spec, k);
}

std::vector<double> oracle_spectrum(const SoftCorePotential& pot, AngularChannel ch, const GridSpec& spec, int k) {
  return values(oracle_eigenpairs(pot, ch, spec, k));
}

std::vector<Eigenpair> oracle_eigenpairs(const SoftCorePotential& pot, ParitySector sector, const GridSpec& spec,
                                         int k) {
  spec.validate();
  return parity_block(effective_potential(pot, spec), spec, sector.parity, k);
}

std::vector<double> oracle_spectrum(const SoftCorePotential& pot, ParitySector sector, const GridSpec& spec, int k) {
  return values(oracle_eigenpairs(pot, sector, spec, k));
}

std::vector<double> oracle_spectrum(const std::function<double(double)>& v_eff, const GridSpec& spec, int k) {
  spec.validate();
  if (spec.geometry != Geometry::half_line_dirichlet) throw DomainError("expected a half-line grid");
  std::vector<double> v;
  for (double r : spec.points()) v.push_back(v_eff(r));
  return values(diagonalize(v, spec, k));
}

}  // namespace softcore::oracle
