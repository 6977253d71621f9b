#include "softcore/harmonium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "numerics.hpp"
#include "softcore/errors.hpp"

namespace softcore::harmonium {

namespace {

void check_indices(int p, int l) {
  if (p < 1) throw DomainError(fmt::format("polynomial degree must be positive, got {}", p));
  if (l < 0) throw DomainError(fmt::format("angular momentum must be non-negative, got {}", l));
}

struct Poly {
  double p, dp, ddp;
};

Poly evaluate(const std::vector<double>& a, double r) {
  Poly out{0.0, 0.0, 0.0};
  for (std::size_t k = a.size(); k-- > 0;) {
    out.ddp = out.ddp * r + 2.0 * out.dp;
    out.dp = out.dp * r + out.p;
    out.p = out.p * r + a[k];
  }
  return out;
}

}  // namespace

double recurrence_step(const std::vector<double>& coeffs, int k, double lambda, double energy, int l) {
  if (k < 0 || coeffs.size() < static_cast<std::size_t>(k) + 2) {
    throw DomainError(fmt::format("recurrence step {} needs {} coefficients", k, k + 2));
  }
  const double ak = coeffs[static_cast<std::size_t>(k)];
  const double ak1 = coeffs[static_cast<std::size_t>(k) + 1];
  return (lambda * ak1 - (energy - l - 1.5 - k) * ak) / ((k + 2.0) * (k + 2.0 * l + 3.0));
}

std::vector<double> coefficients(double lambda, double energy, int l, int n) {
  std::vector<double> a{1.0, lambda / (2.0 * (l + 1))};
  a.reserve(static_cast<std::size_t>(std::max(n, 1)) + 1);
  for (int k = 0; static_cast<int>(a.size()) <= n; ++k) a.push_back(recurrence_step(a, k, lambda, energy, l));
  a.resize(static_cast<std::size_t>(std::max(n, 0)) + 1);
  return a;
}

double termination_value(double lambda, int p, int l) {
  check_indices(p, l);
  return coefficients(lambda, p + l + 1.5, l, p + 1).back();
}

std::vector<double> residual_radii() {
  std::vector<double> r(kResidualRadii);
  for (int i = 0; i < kResidualRadii; ++i) r[static_cast<std::size_t>(i)] = 6.0 * (i + 1) / kResidualRadii;
  return r;
}

double wavefunction(const QesSolution& s, double r) {
  return std::pow(r, s.l + 1) * std::exp(-0.25 * r * r) * evaluate(s.coefficients, r).p;
}

double schroedinger_residual(const QesSolution& s, const std::vector<double>& radii) {
  double worst = 0.0;
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("residual radii must be positive");
    const Poly poly = evaluate(s.coefficients, r);
    const double f = std::pow(r, s.l + 1) * std::exp(-0.25 * r * r);
    const double g = (s.l + 1) / r - 0.5 * r;         // f'/f
    const double g2 = g * g - (s.l + 1) / (r * r) - 0.5;  // f''/f
    const double v = s.coupling / r + 0.25 * r * r + s.l * (s.l + 1) / (r * r) - s.energy;
    const double terms[] = {-f * g2 * poly.p, -2.0 * f * g * poly.dp, -f * poly.ddp, f * v * poly.p};
    double sum = 0.0, scale = 0.0;
    for (double t : terms) {
      sum += t;
      scale = std::max(scale, std::fabs(t));
    }
    if (scale > 0.0) worst = std::max(worst, std::fabs(sum) / scale);
  }
  return worst;
}

namespace {

// Bisection down to adjacent doubles inside the scan's final bracket. The
// truncation residual is proportional to a_(p+1), so large couplings need the
// root to the last bit.
double polish(const std::function<double(double)>& f, double root) {
  const double lo = root - kCouplingTolerance, hi = root + kCouplingTolerance;
  const double f_lo = f(lo), f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) return root;
  return numerics::bisect(f, lo, hi, f_lo, f_hi, 0.0);
}

}  // namespace

std::vector<QesSolution> find_qes_couplings(int p, int l, double lambda_max) {
  check_indices(p, l);
  if (!(lambda_max > 0.0)) lambda_max = 10.0 * (p + 1);
  const double energy = p + l + 1.5;
  const auto f = [&](double lambda) { return termination_value(lambda, p, l); };

  constexpr int kCells = 8000;
  const double step = 2.0 * lambda_max / kCells;
  const auto scan = numerics::scan_roots(f, -lambda_max, lambda_max, step, kCouplingTolerance);

  std::vector<QesSolution> out;
  const auto radii = residual_radii();
  for (const auto& root : scan.roots) {
    QesSolution s;
    s.coupling = polish(f, root.value);
    s.energy = energy;
    s.degree = p;
    s.l = l;
    s.coefficients = coefficients(s.coupling, energy, l, p);
    s.residual = schroedinger_residual(s, radii);
    if (!(s.residual < kResidualLimit)) {
      throw NonConvergenceError(
          fmt::format("QES root lambda = {} (p = {}, l = {}) has residual {}", s.coupling, p, l, s.residual));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace softcore::harmonium
