#pragma once

// One-dimensional relative motion  -u'' + [V(|r|) + r^2/4] u = chi u  on the
// full line, solved separately in the even and odd sectors on r >= 0.
//
// Core region, with chi_in = chi - V:
//   even: u = e^(-r^2/4) M(1/4 - chi_in/2, 1/2, r^2/2)
//   odd:  u = r e^(-r^2/4) M(3/4 - chi_in/2, 3/2, r^2/2)
// Exterior: the decaying Weber solution D_nu(r), nu = chi - 1/2, obtained by
// integrating inward from its asymptotic expansion.

#include <span>
#include <string>
#include <vector>

#include "softcore/model.hpp"
#include "softcore/radial3d.hpp"

namespace softcore::rel1d {

using radial3d::RadialValue;
using radial3d::ScaledRadialValue;

inline constexpr double kOuterTolerance = 1e-12;

/// Core solution of the sector at r >= 0 for the shifted energy chi_in.
RadialValue inner_1d(double chi_in, ParitySector sector, double r);
ScaledRadialValue inner_1d_scaled(double chi_in, ParitySector sector, double r);

/// Decaying Weber solution normalized like D_nu(r) ~ r^nu e^(-r^2/4).
RadialValue outer_1d(double chi, double r);

/// outer_1d at several radii from one inward integration. Radii may come in
/// any order; results follow the input order.
std::vector<RadialValue> outer_1d_profile(double chi, std::span<const double> radii);

/// D_nu(r) from 2^(nu/2) e^(-r^2/4) U(-nu/2, 1/2, r^2/2) with U taken from the
/// two-series connection formula. Cross-check path; loses accuracy for large r.
RadialValue outer_1d_connection(double chi, double r);

/// Sector Wronskian at r = a (divided by the inner log-scale when present).
double matching_function_1d(double chi, const SoftCorePotential& pot, ParitySector sector);

struct Spectrum1d {
  std::vector<ParityLevel> levels;
  std::vector<std::string> warnings;
};

/// Eigenvalues of one sector in (min(0, V), chi_max]; V = 0 gives n + 1/2 with
/// n even or odd according to the sector.
Spectrum1d find_spectrum_1d(const SoftCorePotential& pot, ParitySector sector, double chi_max,
                            double scan_step = radial3d::kDefaultScanStep);

/// Normalized eigenfunction of one sector, unit norm over the full line.
class ParityWavefunction {
 public:
  ParityWavefunction(ParityLevel level, SoftCorePotential pot, double inner_coefficient, double inner_log_scale,
                     double outer_coefficient, double norm, std::vector<double> r, std::vector<double> u);

  /// u(r) for any real r, extended by parity.
  double value(double r) const;
  double derivative(double r) const;

  /// u at many points; the exterior ones share a single inward integration.
  std::vector<double> values(std::span<const double> r) const;

  const ParityLevel& level() const { return level_; }
  const SoftCorePotential& potential() const { return pot_; }
  double inner_coefficient() const { return inner_coefficient_; }
  double outer_coefficient() const { return outer_coefficient_; }
  double norm() const { return norm_; }

  /// Half-line quadrature nodes and normalized values.
  const std::vector<double>& sample_r() const { return r_; }
  const std::vector<double>& sample_u() const { return u_; }

 private:
  RadialValue half_line(double r) const;

  ParityLevel level_;
  SoftCorePotential pot_;
  double inner_coefficient_;
  double inner_log_scale_;
  double outer_coefficient_;
  double norm_;
  std::vector<double> r_;
  std::vector<double> u_;
};

ParityWavefunction build_wavefunction_1d(const ParityLevel& level, const SoftCorePotential& pot);

struct ParityGap {
  double chi_even;
  double chi_odd;
  double gap;         // chi_odd - chi_even of the two ground states
  bool perturbative;  // true when gap came from the Wronskian estimate
};

/// Splitting of the lowest even and odd levels. Above 1e-6 it is the plain
/// difference of the two roots. Below that the difference is lost to rounding
/// (a tall core makes it ~exp(-2 sqrt(V) a)), so it is taken from the inner
/// Wronskian instead: the two sectors share the exterior solution and their
/// core log-derivatives differ by exactly 1 / (u_even(a) u_odd(a)), which
/// divided by the slope of the even matching condition gives the shift.
ParityGap parity_gap(const SoftCorePotential& pot);

}  // namespace softcore::rel1d
