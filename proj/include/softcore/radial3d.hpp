#pragma once

// Three-dimensional relative motion with a soft-core step.
//
// Inside the core (r < a) the regular solution is
//   u = r^(l+1) e^(-r^2/4) M((l + 3/2 - chi + V)/2, l + 3/2, r^2/2),
// outside it the decaying one is
//   u = r^(l+1) e^(-r^2/4) U((l + 3/2 - chi)/2, l + 3/2, r^2/2).
// Eigenvalues are the zeros of their Wronskian at r = a. With V = 0 they
// reduce to the oscillator ladder chi = 2 n_r + l + 3/2.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "softcore/model.hpp"

namespace softcore::radial3d {

struct RadialValue {
  double u;
  double du;
};

/// (u, u') stored as (u, du) * exp(log_scale).
struct ScaledRadialValue {
  double u;
  double du;
  double log_scale;
};

inline constexpr double kDefaultScanStep = 0.05;
inline constexpr double kRootTolerance = 1e-11;

/// Regular solution on [0, a]. Throws DomainError outside the core and
/// OverflowError if the value is not representable (use the scaled form).
RadialValue inner_solution(double chi, const SoftCorePotential& pot, AngularChannel ch, double r);

/// Same as inner_solution, but never overflows.
ScaledRadialValue inner_solution_scaled(double chi, const SoftCorePotential& pot, AngularChannel ch,
                                        double r);

/// Decaying solution for r > 0 (callers use it on r >= a).
RadialValue outer_solution(double chi, AngularChannel ch, double r);

/// W(chi) = u_in'(a) u_out(a) - u_in(a) u_out'(a). When the inner branch has
/// to be log-scaled (near-impenetrable cores) W is returned divided by that
/// positive scale, which leaves its zeros and signs unchanged.
double matching_function(double chi, const SoftCorePotential& pot, AngularChannel ch);

struct Spectrum {
  std::vector<EnergyLevel> levels;
  std::vector<std::string> warnings;
};

/// All eigenvalues in (min(0, V), chi_max], located by a sign-change scan of
/// the matching function and refined by bisection to 1e-11. Levels are
/// labelled by the node count of their assembled wavefunctions; a gap in the
/// node sequence is reported as a warning (two roots in one scan cell).
Spectrum find_spectrum(const SoftCorePotential& pot, AngularChannel ch, double chi_max,
                       double scan_step = kDefaultScanStep);

/// Normalized piecewise eigenfunction.
class PiecewiseWavefunction {
 public:
  PiecewiseWavefunction(EnergyLevel level, SoftCorePotential pot, double inner_coefficient,
                        double inner_log_scale, double outer_coefficient, double norm,
                        double quadrature_end);

  double value(double r) const;
  double derivative(double r) const;
  RadialValue inner_at(double r) const;
  RadialValue outer_at(double r) const;

  const EnergyLevel& level() const { return level_; }
  const SoftCorePotential& potential() const { return pot_; }

  // u_in(r) = inner_coefficient * M-branch * exp(log_scale(r) - inner_log_scale).
  double inner_coefficient() const { return inner_coefficient_; }
  double inner_log_scale() const { return inner_log_scale_; }
  double outer_coefficient() const { return outer_coefficient_; }

  /// L2 norm before normalization, with the inner branch scaled so that
  /// (u(a), u'(a)) has unit length.
  double norm() const { return norm_; }

  /// Upper end of the normalization quadrature.
  double quadrature_end() const { return quadrature_end_; }

  /// Quadrature nodes and the normalized u on them (filled by build_wavefunction).
  const std::vector<double>& sample_r() const { return sample_r_; }
  const std::vector<double>& sample_u() const { return sample_u_; }
  void set_samples(std::vector<double> r, std::vector<double> u);

 private:
  EnergyLevel level_;
  SoftCorePotential pot_;
  double inner_coefficient_;
  double inner_log_scale_;
  double outer_coefficient_;
  double norm_;
  double quadrature_end_;
  std::vector<double> sample_r_;
  std::vector<double> sample_u_;
};

inline constexpr int kQuadraturePanels = 4096;

/// Matches the branches at r = a and normalizes on [0, max(12, a + 10)] with
/// composite Simpson (4096 panels split between core and exterior); the upper
/// end is pushed out if the Gaussian tail bound exceeds 1e-12. The outer
/// branch is fitted to the inner (u, u') vector at r = a, so a node at the
/// core edge is handled; throws MatchingDegeneracyError if a branch vanishes
/// together with its slope.
PiecewiseWavefunction build_wavefunction(const EnergyLevel& level, const SoftCorePotential& pot);

/// Number of sign changes of u on (0, quadrature_end()], read off the stored
/// quadrature samples (or a fresh grid of `points` samples when none are stored).
int count_nodes(const PiecewiseWavefunction& wf, int points = 512);

/// Sign changes in a sequence, ignoring entries below 1e-12 of the peak.
int count_sign_changes(const std::vector<double>& values);

/// The unnormalized curve u = r^(l+1) e^(-r^2/2) M((2l+3-n)/4, l+3/2, r^2).
/// This is the figure convention (trap term r^2 rather than r^2/4, principal
/// number n = 4 n_r + 2l + 3); n is a free parameter here and is not forced to
/// satisfy that rule. Only used for plotting.
std::vector<std::pair<double, double>> figure_convention_curve(int n, int l, std::span<const double> r_grid);

}  // namespace softcore::radial3d
