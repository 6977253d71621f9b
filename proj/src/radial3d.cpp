#include "softcore/radial3d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "numerics.hpp"
#include "softcore/errors.hpp"
#include "softcore/specfun.hpp"

namespace softcore::radial3d {

namespace {

using specfun::KummerParams;

double kummer_b(AngularChannel ch) { return ch.l + 1.5; }

// Combine r^(l+1) e^(-r^2/4) F(r^2/2) and its r-derivative, given F and dF/dx.
RadialValue assemble(int l, double r, double f, double df_dx) {
  const double gauss = std::exp(-0.25 * r * r);
  const double rl = std::pow(r, l);  // pow(0, 0) == 1
  const double r_lp2 = rl * r * r;
  const double u = rl * r * gauss * f;
  const double du = gauss * ((l + 1) * rl * f - 0.5 * r_lp2 * f + r_lp2 * df_dx);
  return {u, du};
}

// Panel counts for the core and the exterior, both even.
std::pair<int, int> split_panels(double a, double r_end) {
  int inner = 2 * static_cast<int>(std::lround(0.5 * kQuadraturePanels * a / r_end));
  inner = std::clamp(inner, 64, kQuadraturePanels - 64);
  return {inner, kQuadraturePanels - inner};
}

double outer_value(double chi, AngularChannel ch, double r) {
  const double b = kummer_b(ch);
  return std::pow(r, ch.l + 1) * std::exp(-0.25 * r * r) * specfun::tricomi_u({0.5 * (b - chi), b, 0.5 * r * r});
}

}  // namespace

ScaledRadialValue inner_solution_scaled(double chi, const SoftCorePotential& pot, AngularChannel ch, double r) {
  pot.validate();
  ch.validate();
  if (!(r >= 0.0 && r <= pot.range)) {
    throw DomainError(fmt::format("inner solution requested at r = {} outside [0, {}]", r, pot.range));
  }
  const double b = kummer_b(ch);
  const double alpha = 0.5 * (b - (chi - pot.height));
  const double x = 0.5 * r * r;
  const auto m = specfun::kummer_m_scaled({alpha, b, x});
  specfun::ScaledValue dm{0.0, 0.0};
  if (alpha != 0.0) {
    dm = specfun::kummer_m_scaled({alpha + 1.0, b + 1.0, x});
    dm.mantissa *= alpha / b;
  }
  const double scale = std::max(m.log_scale, dm.log_scale);
  const double f = m.mantissa * std::exp(m.log_scale - scale);
  const double df = dm.mantissa == 0.0 ? 0.0 : dm.mantissa * std::exp(dm.log_scale - scale);
  const RadialValue v = assemble(ch.l, r, f, df);
  return {v.u, v.du, scale};
}

RadialValue inner_solution(double chi, const SoftCorePotential& pot, AngularChannel ch, double r) {
  const ScaledRadialValue s = inner_solution_scaled(chi, pot, ch, r);
  if (s.log_scale == 0.0) return {s.u, s.du};
  const double factor = std::exp(s.log_scale);
  const RadialValue v{s.u * factor, s.du * factor};
  if (!std::isfinite(v.u) || !std::isfinite(v.du)) {
    throw OverflowError(fmt::format("inner solution at chi = {} exceeds the double range", chi));
  }
  return v;
}

RadialValue outer_solution(double chi, AngularChannel ch, double r) {
  ch.validate();
  if (!(r > 0.0)) throw DomainError(fmt::format("outer solution requested at r = {}", r));
  const double b = kummer_b(ch);
  const KummerParams p{0.5 * (b - chi), b, 0.5 * r * r};
  try {
    return assemble(ch.l, r, specfun::tricomi_u(p), specfun::tricomi_u_dx(p));
  } catch (const OverflowError& e) {
    throw OverflowError(fmt::format("outer solution at chi = {}: {}", chi, e.what()));
  }
}

double matching_function(double chi, const SoftCorePotential& pot, AngularChannel ch) {
  const ScaledRadialValue in = inner_solution_scaled(chi, pot, ch, pot.range);
  const RadialValue out = outer_solution(chi, ch, pot.range);
  return in.du * out.u - in.u * out.du;
}

PiecewiseWavefunction::PiecewiseWavefunction(EnergyLevel level, SoftCorePotential pot, double inner_coefficient,
                                             double inner_log_scale, double outer_coefficient, double norm,
                                             double quadrature_end)
    : level_(level),
      pot_(pot),
      inner_coefficient_(inner_coefficient),
      inner_log_scale_(inner_log_scale),
      outer_coefficient_(outer_coefficient),
      norm_(norm),
      quadrature_end_(quadrature_end) {}

RadialValue PiecewiseWavefunction::inner_at(double r) const {
  const ScaledRadialValue s = inner_solution_scaled(level_.chi, pot_, level_.channel, r);
  const double f = inner_coefficient_ * std::exp(s.log_scale - inner_log_scale_);
  return {f * s.u, f * s.du};
}

RadialValue PiecewiseWavefunction::outer_at(double r) const {
  const RadialValue v = outer_solution(level_.chi, level_.channel, r);
  return {outer_coefficient_ * v.u, outer_coefficient_ * v.du};
}

double PiecewiseWavefunction::value(double r) const {
  if (r < 0.0) throw DomainError("wavefunction evaluated at negative r");
  return r <= pot_.range ? inner_at(r).u : outer_at(r).u;
}

double PiecewiseWavefunction::derivative(double r) const {
  if (r < 0.0) throw DomainError("wavefunction evaluated at negative r");
  return r <= pot_.range ? inner_at(r).du : outer_at(r).du;
}

namespace {

// Inner (u, u') at r = a scaled to unit length, outer branch fitted to it.
PiecewiseWavefunction match_branches(const EnergyLevel& level, const SoftCorePotential& pot) {
  pot.validate();
  level.channel.validate();
  const double a = pot.range;
  const ScaledRadialValue in = inner_solution_scaled(level.chi, pot, level.channel, a);
  const RadialValue out = outer_solution(level.chi, level.channel, a);

  const auto scales = numerics::match_branch_scales(in.u, in.du, out.u, out.du);
  const double inner_coef = scales.inner;
  const double outer_coef = scales.outer;
  return PiecewiseWavefunction(level, pot, inner_coef, in.log_scale, outer_coef, 1.0, std::max(12.0, a + 10.0));
}

}  // namespace

void PiecewiseWavefunction::set_samples(std::vector<double> r, std::vector<double> u) {
  sample_r_ = std::move(r);
  sample_u_ = std::move(u);
}

PiecewiseWavefunction build_wavefunction(const EnergyLevel& level, const SoftCorePotential& pot) {
  PiecewiseWavefunction raw = match_branches(level, pot);
  const double a = pot.range;

  // Push the upper end out until the Gaussian tail bound is negligible. Beyond
  // r_end, (r/r_end)^(2p) e^-(r^2-r_end^2)/2 <= e^-(r-r_end)(r_end - 2p/r_end),
  // p = chi - 1/2, so the tail is at most u(r_end)^2 / (r_end - 2p/r_end).
  const double p = level.chi - 0.5;
  double r_end = raw.quadrature_end();
  std::vector<double> rs, us;
  double norm2 = 0.0;
  for (int attempt = 0;; ++attempt) {
    const auto [n_in, n_out] = split_panels(a, r_end);
    rs.assign(static_cast<std::size_t>(n_in + n_out + 1), 0.0);
    us.assign(rs.size(), 0.0);
    const double h_in = a / n_in, h_out = (r_end - a) / n_out;
    for (int i = 0; i <= n_in; ++i) {
      rs[i] = i == n_in ? a : i * h_in;
      us[i] = raw.inner_at(rs[i]).u;
    }
    for (int i = 1; i <= n_out; ++i) {
      const auto k = static_cast<std::size_t>(n_in + i);
      rs[k] = i == n_out ? r_end : a + i * h_out;
      us[k] = raw.outer_coefficient() * outer_value(level.chi, level.channel, rs[k]);
    }
    const auto w_in = numerics::simpson_weights(n_in, h_in);
    const auto w_out = numerics::simpson_weights(n_out, h_out);
    norm2 = 0.0;
    for (int i = 0; i <= n_in; ++i) norm2 += w_in[i] * us[i] * us[i];
    for (int i = 0; i <= n_out; ++i) norm2 += w_out[i] * us[n_in + i] * us[n_in + i];

    const double decay = r_end - 2.0 * p / r_end;
    const double u_end = us.back();
    const double tail = decay > 0.0 ? u_end * u_end / decay : INFINITY;
    if (tail <= 1e-12 * norm2) break;
    if (attempt == 20) {
      throw NonConvergenceError(fmt::format("chi = {}: normalization tail did not converge", level.chi));
    }
    r_end += 2.0;
  }
  const double norm = std::sqrt(norm2);
  for (double& u : us) u /= norm;
  PiecewiseWavefunction wf(level, pot, raw.inner_coefficient() / norm, raw.inner_log_scale(),
                           raw.outer_coefficient() / norm, norm, r_end);
  wf.set_samples(std::move(rs), std::move(us));
  return wf;
}

int count_sign_changes(const std::vector<double>& values) {
  double peak = 0.0;
  for (double u : values) peak = std::max(peak, std::fabs(u));
  int changes = 0;
  int last_sign = 0;
  for (double u : values) {
    if (std::fabs(u) <= 1e-12 * peak) continue;
    const int sign = u > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

int count_nodes(const PiecewiseWavefunction& wf, int points) {
  if (!wf.sample_u().empty()) return count_sign_changes(wf.sample_u());
  const double a = wf.potential().range;
  const double r_end = wf.quadrature_end();
  const int n_in = std::max(16, static_cast<int>(points * a / r_end));
  const int n_out = std::max(16, points - n_in);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(n_in + n_out));
  for (int i = 1; i <= n_in; ++i) samples.push_back(wf.inner_at(a * i / n_in).u);
  const auto& level = wf.level();
  for (int i = 1; i <= n_out; ++i) {
    samples.push_back(wf.outer_coefficient() * outer_value(level.chi, level.channel, a + (r_end - a) * i / n_out));
  }
  return count_sign_changes(samples);
}

Spectrum find_spectrum(const SoftCorePotential& pot, AngularChannel ch, double chi_max, double scan_step) {
  pot.validate();
  ch.validate();
  const double floor = std::min(0.0, pot.height);
  if (!(chi_max > floor)) throw DomainError(fmt::format("chi_max = {} must exceed {}", chi_max, floor));
  if (!(scan_step > 0.0)) throw DomainError("scan_step must be positive");

  const auto w = [&](double chi) { return matching_function(chi, pot, ch); };
  const numerics::ScanReport scan = numerics::scan_roots(w, floor, chi_max, scan_step, kRootTolerance);

  Spectrum out;
  for (const auto& msg : scan.skipped) out.warnings.push_back("scan cell skipped: " + msg);
  for (const auto& root : scan.roots) {
    EnergyLevel level{root.value, static_cast<int>(out.levels.size()), ch};
    try {
      level.radial_index = count_nodes(match_branches(level, pot));
    } catch (const std::exception& e) {
      out.warnings.push_back(fmt::format("chi = {}: node count unavailable ({})", root.value, e.what()));
    }
    out.levels.push_back(level);
  }
  for (std::size_t i = 0; i < out.levels.size(); ++i) {
    const int expected = i == 0 ? 0 : out.levels[i - 1].radial_index + 1;
    if (out.levels[i].radial_index != expected) {
      out.warnings.push_back(fmt::format(
          "node-count gap at chi = {:.12g} (nodes {}, expected {}): a level may be missing; reduce scan_step",
          out.levels[i].chi, out.levels[i].radial_index, expected));
    }
  }
  return out;
}

std::vector<std::pair<double, double>> figure_convention_curve(int n, int l, std::span<const double> r_grid) {
  if (l < 0) throw DomainError("l must be non-negative");
  const double a = (2.0 * l + 3.0 - n) / 4.0;
  const double b = l + 1.5;
  std::vector<std::pair<double, double>> curve;
  curve.reserve(r_grid.size());
  for (double r : r_grid) {
    if (r < 0.0) throw DomainError("figure curve needs r >= 0");
    const double u = std::pow(r, l + 1) * std::exp(-0.5 * r * r) * specfun::kummer_m({a, b, r * r});
    curve.emplace_back(r, u);
  }
  return curve;
}

}  // namespace softcore::radial3d
