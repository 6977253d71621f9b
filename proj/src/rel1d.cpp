#include "softcore/rel1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "numerics.hpp"
#include "softcore/errors.hpp"
#include "softcore/specfun.hpp"

namespace softcore::rel1d {

namespace {

double start_radius(double chi, double r_min) {
  return std::max({14.0, r_min + 8.0, 2.0 * std::sqrt(std::max(chi, 0.0)) + 8.0});
}

// D_nu(z) ~ z^nu e^(-z^2/4) sum_s c_s z^(-2s), c_(s+1) = -c_s (nu-2s)(nu-2s-1) / (2(s+1)).
RadialValue weber_asymptotic(double nu, double z) {
  double c = 1.0, series = 1.0, dseries = 0.0;
  const double z2 = z * z;
  double zpow = 1.0;  // z^(-2s)
  for (int s = 0; s < 100; ++s) {
    const double next_c = -c * (nu - 2.0 * s) * (nu - 2.0 * s - 1.0) / (2.0 * (s + 1));
    const double next_pow = zpow / z2;
    const double term = next_c * next_pow;
    if (term == 0.0 || (s > 0 && std::fabs(term) >= std::fabs(c * zpow))) break;
    c = next_c;
    zpow = next_pow;
    series += term;
    dseries += -2.0 * (s + 1) * term / z;
    if (std::fabs(term) < 1e-17 * std::fabs(series)) break;
  }
  const double prefactor = std::pow(z, nu) * std::exp(-0.25 * z2);
  return {prefactor * series, prefactor * ((nu / z - 0.5 * z) * series + dseries)};
}

double quadrature_start(double a) { return std::max(12.0, a + 10.0); }

}  // namespace

ScaledRadialValue inner_1d_scaled(double chi_in, ParitySector sector, double r) {
  if (!(r >= 0.0)) throw DomainError(fmt::format("inner_1d requested at r = {}", r));
  const bool even = sector.parity == Parity::even;
  const double b = even ? 0.5 : 1.5;
  const double alpha = (even ? 0.25 : 0.75) - 0.5 * chi_in;
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
  const double gauss = std::exp(-0.25 * r * r);
  if (even) return {gauss * f, gauss * r * (df - 0.5 * f), scale};
  return {gauss * r * f, gauss * ((1.0 - 0.5 * r * r) * f + r * r * df), scale};
}

RadialValue inner_1d(double chi_in, ParitySector sector, double r) {
  const ScaledRadialValue s = inner_1d_scaled(chi_in, sector, r);
  if (s.log_scale == 0.0) return {s.u, s.du};
  const double factor = std::exp(s.log_scale);
  const RadialValue v{s.u * factor, s.du * factor};
  if (!std::isfinite(v.u) || !std::isfinite(v.du)) {
    throw OverflowError(fmt::format("inner_1d at chi_in = {} exceeds the double range", chi_in));
  }
  return v;
}

std::vector<RadialValue> outer_1d_profile(double chi, std::span<const double> radii) {
  if (radii.empty()) return {};
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError(fmt::format("outer_1d requested at r = {}", r));
  }
  std::vector<std::size_t> order(radii.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return radii[i] > radii[j]; });
  std::vector<double> stations(radii.size());
  for (std::size_t k = 0; k < order.size(); ++k) stations[k] = radii[order[k]];

  const double nu = chi - 0.5;
  const double r0 = std::max(start_radius(chi, stations.back()), stations.front());
  const RadialValue seed = weber_asymptotic(nu, r0);
  const auto q = [chi](double r) { return 0.25 * r * r - chi; };
  const auto states = numerics::integrate_linear(q, r0, {seed.u, seed.du}, stations, kOuterTolerance);

  std::vector<RadialValue> out(radii.size());
  for (std::size_t k = 0; k < order.size(); ++k) out[order[k]] = {states[k].u, states[k].du};
  return out;
}

RadialValue outer_1d(double chi, double r) {
  const double radii[] = {r};
  return outer_1d_profile(chi, radii).front();
}

RadialValue outer_1d_connection(double chi, double r) {
  if (!(r > 0.0)) throw DomainError(fmt::format("outer_1d_connection requested at r = {}", r));
  const double nu = chi - 0.5;
  const double a = -0.5 * nu;
  const double x = 0.5 * r * r;
  const double u = specfun::tricomi_u_connection({a, 0.5, x});
  const double du_dx = a == 0.0 ? 0.0 : -a * specfun::tricomi_u_connection({a + 1.0, 1.5, x});
  const double pre = std::pow(2.0, 0.5 * nu) * std::exp(-0.25 * r * r);
  return {pre * u, pre * r * (du_dx - 0.5 * u)};
}

double matching_function_1d(double chi, const SoftCorePotential& pot, ParitySector sector) {
  pot.validate();
  const ScaledRadialValue in = inner_1d_scaled(chi - pot.height, sector, pot.range);
  const RadialValue out = outer_1d(chi, pot.range);
  return in.du * out.u - in.u * out.du;
}

ParityWavefunction::ParityWavefunction(ParityLevel level, SoftCorePotential pot, double inner_coefficient,
                                       double inner_log_scale, double outer_coefficient, double norm,
                                       std::vector<double> r, std::vector<double> u)
    : level_(level),
      pot_(pot),
      inner_coefficient_(inner_coefficient),
      inner_log_scale_(inner_log_scale),
      outer_coefficient_(outer_coefficient),
      norm_(norm),
      r_(std::move(r)),
      u_(std::move(u)) {}

RadialValue ParityWavefunction::half_line(double r) const {
  if (r <= pot_.range) {
    const ScaledRadialValue s = inner_1d_scaled(level_.chi - pot_.height, level_.sector, r);
    const double f = inner_coefficient_ * std::exp(s.log_scale - inner_log_scale_);
    return {f * s.u, f * s.du};
  }
  const RadialValue v = outer_1d(level_.chi, r);
  return {outer_coefficient_ * v.u, outer_coefficient_ * v.du};
}

double ParityWavefunction::value(double r) const {
  const RadialValue v = half_line(std::fabs(r));
  return r < 0.0 && level_.sector.parity == Parity::odd ? -v.u : v.u;
}

std::vector<double> ParityWavefunction::values(std::span<const double> r) const {
  std::vector<double> out(r.size());
  std::vector<double> outer_r;
  std::vector<std::size_t> outer_i;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (std::fabs(r[i]) <= pot_.range) {
      out[i] = value(r[i]);
    } else {
      outer_r.push_back(std::fabs(r[i]));
      outer_i.push_back(i);
    }
  }
  const auto prof = outer_1d_profile(level_.chi, outer_r);
  const bool odd = level_.sector.parity == Parity::odd;
  for (std::size_t k = 0; k < outer_i.size(); ++k) {
    const double u = outer_coefficient_ * prof[k].u;
    out[outer_i[k]] = odd && r[outer_i[k]] < 0.0 ? -u : u;
  }
  return out;
}

double ParityWavefunction::derivative(double r) const {
  const RadialValue v = half_line(std::fabs(r));
  return r < 0.0 && level_.sector.parity == Parity::even ? -v.du : v.du;
}

ParityWavefunction build_wavefunction_1d(const ParityLevel& level, const SoftCorePotential& pot) {
  pot.validate();
  const double a = pot.range;
  const double chi_in = level.chi - pot.height;
  const ScaledRadialValue in = inner_1d_scaled(chi_in, level.sector, a);
  const RadialValue out = outer_1d(level.chi, a);

  const auto scales = numerics::match_branch_scales(in.u, in.du, out.u, out.du);
  const double inner_coef = scales.inner;
  const double outer_coef = scales.outer;

  const double p = level.chi - 0.5;
  double r_end = quadrature_start(a);
  std::vector<double> rs, us;
  double half_norm2 = 0.0;
  for (int attempt = 0;; ++attempt) {
    int n_in = 2 * static_cast<int>(std::lround(0.5 * radial3d::kQuadraturePanels * a / r_end));
    n_in = std::clamp(n_in, 64, radial3d::kQuadraturePanels - 64);
    const int n_out = radial3d::kQuadraturePanels - n_in;
    const double h_in = a / n_in, h_out = (r_end - a) / n_out;
    rs.assign(static_cast<std::size_t>(n_in + n_out + 1), 0.0);
    us.assign(rs.size(), 0.0);
    for (int i = 0; i <= n_in; ++i) {
      rs[i] = i == n_in ? a : i * h_in;
      const ScaledRadialValue s = inner_1d_scaled(chi_in, level.sector, rs[i]);
      us[i] = inner_coef * std::exp(s.log_scale - in.log_scale) * s.u;
    }
    std::vector<double> outer_r(static_cast<std::size_t>(n_out));
    for (int i = 1; i <= n_out; ++i) outer_r[i - 1] = i == n_out ? r_end : a + i * h_out;
    const auto profile = outer_1d_profile(level.chi, outer_r);
    for (int i = 1; i <= n_out; ++i) {
      rs[n_in + i] = outer_r[i - 1];
      us[n_in + i] = outer_coef * profile[i - 1].u;
    }
    const auto w_in = numerics::simpson_weights(n_in, h_in);
    const auto w_out = numerics::simpson_weights(n_out, h_out);
    half_norm2 = 0.0;
    for (int i = 0; i <= n_in; ++i) half_norm2 += w_in[i] * us[i] * us[i];
    for (int i = 0; i <= n_out; ++i) half_norm2 += w_out[i] * us[n_in + i] * us[n_in + i];

    const double decay = r_end - 2.0 * p / r_end;
    const double tail = decay > 0.0 ? us.back() * us.back() / decay : INFINITY;
    if (tail <= 1e-12 * half_norm2) break;
    if (attempt == 20) {
      throw NonConvergenceError(fmt::format("chi = {}: normalization tail did not converge", level.chi));
    }
    r_end += 2.0;
  }
  // Full-line norm: twice the half-line integral.
  const double norm = std::sqrt(2.0 * half_norm2);
  for (double& u : us) u /= norm;
  return ParityWavefunction(level, pot, inner_coef / norm, in.log_scale, outer_coef / norm, norm, std::move(rs),
                            std::move(us));
}

Spectrum1d find_spectrum_1d(const SoftCorePotential& pot, ParitySector sector, double chi_max, double scan_step) {
  pot.validate();
  const double floor = std::min(0.0, pot.height);
  if (!(chi_max > floor)) throw DomainError(fmt::format("chi_max = {} must exceed {}", chi_max, floor));
  if (!(scan_step > 0.0)) throw DomainError("scan_step must be positive");

  const auto w = [&](double chi) { return matching_function_1d(chi, pot, sector); };
  const numerics::ScanReport scan = numerics::scan_roots(w, floor, chi_max, scan_step, radial3d::kRootTolerance);

  Spectrum1d out;
  for (const auto& msg : scan.skipped) out.warnings.push_back("scan cell skipped: " + msg);
  for (const auto& root : scan.roots) {
    ParityLevel level{root.value, static_cast<int>(out.levels.size()), sector};
    try {
      const ParityWavefunction wf = build_wavefunction_1d(level, pot);
      // Skip r = 0 itself: odd states vanish there by construction.
      std::vector<double> positive(wf.sample_u().begin() + 1, wf.sample_u().end());
      level.radial_index = radial3d::count_sign_changes(positive);
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

namespace {

double ground_state(const SoftCorePotential& pot, ParitySector sector) {
  for (double chi_max = 4.0; chi_max < 1e6; chi_max *= 2.0) {
    const Spectrum1d s = find_spectrum_1d(pot, sector, chi_max);
    if (!s.levels.empty()) return s.levels.front().chi;
  }
  throw NonConvergenceError(fmt::format("no {} level found", to_string(sector.parity)));
}

// Even-sector matching condition in log-derivative form.
double even_log_mismatch(double chi, const SoftCorePotential& pot) {
  const ScaledRadialValue in = inner_1d_scaled(chi - pot.height, {Parity::even}, pot.range);
  const RadialValue out = outer_1d(chi, pot.range);
  return in.du / in.u - out.du / out.u;
}

}  // namespace

ParityGap parity_gap(const SoftCorePotential& pot) {
  pot.validate();
  ParityGap g{};
  g.chi_even = ground_state(pot, {Parity::even});
  g.chi_odd = ground_state(pot, {Parity::odd});
  g.gap = g.chi_odd - g.chi_even;
  if (g.gap > 1e-6) return g;

  const double a = pot.range;
  const double chi = g.chi_even;
  const ScaledRadialValue ue = inner_1d_scaled(chi - pot.height, {Parity::even}, a);
  const ScaledRadialValue uo = inner_1d_scaled(chi - pot.height, {Parity::odd}, a);
  const double delta_l = std::exp(-(ue.log_scale + uo.log_scale)) / (ue.u * uo.u);
  const double h = 1e-4 * std::max(1.0, std::fabs(chi));
  const double slope = (even_log_mismatch(chi + h, pot) - even_log_mismatch(chi - h, pot)) / (2.0 * h);
  if (!(slope != 0.0) || !std::isfinite(slope)) {
    throw NonConvergenceError(fmt::format("parity gap: degenerate matching slope at chi = {}", chi));
  }
  g.gap = -delta_l / slope;
  g.perturbative = true;
  return g;
}

}  // namespace softcore::rel1d
