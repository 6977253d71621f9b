#include "numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "softcore/errors.hpp"

namespace softcore::numerics {

double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
  if (panels < 2 || panels % 2 != 0) throw std::invalid_argument("simpson: panel count must be even");
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
  return sum * h / 3.0;
}

std::vector<double> simpson_weights(int panels, double h) {
  if (panels < 2 || panels % 2 != 0) throw std::invalid_argument("simpson: panel count must be even");
  std::vector<double> w(static_cast<std::size_t>(panels) + 1);
  for (int i = 0; i <= panels; ++i) {
    const double c = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[static_cast<std::size_t>(i)] = c * h / 3.0;
  }
  return w;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo, double f_hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const double x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
  return std::isfinite(x) ? std::clamp(x, lo, hi) : 0.5 * (lo + hi);
}

ScanReport scan_roots(const std::function<double(double)>& f, double lo, double hi, double step,
                      double tol) {
  ScanReport report;
  const int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / step - 1e-9)));
  const auto node = [&](int k) { return k == cells ? hi : lo + k * step; };

  bool have_prev = false;
  double x_prev = lo, f_prev = 0.0;
  for (int k = 0; k <= cells; ++k) {
    const double x = node(k);
    double fx;
    try {
      fx = f(x);
    } catch (const std::exception& e) {
      report.skipped.push_back(e.what());
      have_prev = false;
      continue;
    }
    if (!std::isfinite(fx)) {
      report.skipped.push_back("non-finite matching value");
      have_prev = false;
      continue;
    }
    // The open lower end is excluded from the root set.
    if (fx == 0.0 && k > 0) {
      report.roots.push_back({x, true});
    } else if (have_prev && f_prev != 0.0 && fx != 0.0 && ((fx < 0.0) != (f_prev < 0.0))) {
      try {
        report.roots.push_back({bisect(f, x_prev, x, f_prev, fx, tol), false});
      } catch (const std::exception& e) {
        report.skipped.push_back(e.what());
      }
    }
    have_prev = true;
    x_prev = x;
    f_prev = fx;
  }
  return report;
}

BranchScales match_branch_scales(double in_u, double in_du, double out_u, double out_du) {
  const double in_len = std::hypot(in_u, in_du);
  const double out_len2 = out_u * out_u + out_du * out_du;
  if (in_len == 0.0 || out_len2 == 0.0 || !std::isfinite(in_len) || !std::isfinite(out_len2)) {
    throw MatchingDegeneracyError("inner or outer branch vanishes with its slope at the matching radius");
  }
  const double inner = 1.0 / in_len;
  const double outer = inner * (in_u * out_u + in_du * out_du) / out_len2;
  if (outer == 0.0) throw MatchingDegeneracyError("inner and outer branches are orthogonal at the matching radius");
  return {inner, outer};
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr std::array<double, 7> kB = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr std::array<double, 7> kBStar = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                                          -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct StepResult {
  OdeState next;
  double error;  // scaled error norm
};

StepResult dopri_step(const std::function<double(double)>& q, double r, const OdeState& y, double h,
                      double rel_tol) {
  std::array<double, 7> ku{}, kd{};
  for (int s = 0; s < 7; ++s) {
    double u = y.u, du = y.du;
    for (int j = 0; j < s; ++j) {
      u += h * kA[s][j] * ku[j];
      du += h * kA[s][j] * kd[j];
    }
    ku[s] = du;
    kd[s] = q(r + kC[s] * h) * u;
  }
  OdeState next = y;
  double eu = 0.0, ed = 0.0;
  for (int s = 0; s < 7; ++s) {
    next.u += h * kB[s] * ku[s];
    next.du += h * kB[s] * kd[s];
    eu += h * (kB[s] - kBStar[s]) * ku[s];
    ed += h * (kB[s] - kBStar[s]) * kd[s];
  }
  const double scale = rel_tol * std::max(std::fabs(y.u) + std::fabs(y.du), std::fabs(next.u) + std::fabs(next.du));
  const double err = scale > 0.0 ? std::max(std::fabs(eu), std::fabs(ed)) / scale : 0.0;
  return {next, err};
}

}  // namespace

std::vector<OdeState> integrate_linear(const std::function<double(double)>& q, double r0, OdeState start,
                                       std::span<const double> stations, double rel_tol) {
  std::vector<OdeState> out;
  out.reserve(stations.size());
  double r = r0;
  OdeState y = start;
  double h_try = 1e-2;
  constexpr int kMaxSteps = 2'000'000;
  int steps = 0;
  for (double target : stations) {
    const double dir = target >= r ? 1.0 : -1.0;
    while (std::fabs(target - r) > 1e-14 * std::max(1.0, std::fabs(target))) {
      if (++steps > kMaxSteps) throw NonConvergenceError("ODE integration exceeded the step budget");
      double h = dir * std::min(std::fabs(h_try), std::fabs(target - r));
      const bool clipped = std::fabs(h) < std::fabs(h_try);
      const StepResult st = dopri_step(q, r, y, h, rel_tol);
      if (st.error <= 1.0) {
        r += h;
        if (std::fabs(target - r) <= 1e-14 * std::max(1.0, std::fabs(target))) r = target;
        y = st.next;
      }
      const double factor = st.error == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(st.error, -0.2), 0.2, 5.0);
      if (!(clipped && st.error <= 1.0)) h_try = std::fabs(h) * factor;
      if (std::fabs(h_try) < 1e-14) throw NonConvergenceError("ODE integration step size underflow");
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace softcore::numerics
