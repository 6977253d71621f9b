#pragma once

// Shared domain types. All quantities are in trap units: the relative motion
// obeys  -u'' + [V(r) + r^2/4 + l(l+1)/r^2] u = chi u.
//
// The centre-of-mass motion is a plain oscillator with known spectrum and is
// not represented here.

#include <string>

namespace softcore {

/// Finite-range step interaction: V(r) = height for r < range, 0 otherwise.
struct SoftCorePotential {
  double height = 0.0;
  double range = 1.0;

  /// Throws DomainError unless range > 0 and height is finite.
  void validate() const;

  double operator()(double r) const { return r < range ? height : 0.0; }
};

struct AngularChannel {
  int l = 0;

  void validate() const;
};

enum class Parity { even, odd };

/// Symmetry sector of the one-dimensional problem on the full line.
struct ParitySector {
  Parity parity = Parity::even;
};

std::string to_string(Parity p);
Parity parse_parity(const std::string& s);

/// A converged eigenvalue of the 3D radial problem.
struct EnergyLevel {
  double chi = 0.0;
  int radial_index = 0;  // interior nodes of u on r > 0
  AngularChannel channel;
};

/// A converged eigenvalue of the 1D problem in one parity sector.
/// radial_index counts nodes on r > 0 only, so the oscillator quantum number
/// is 2 * radial_index (+1 when odd).
struct ParityLevel {
  double chi = 0.0;
  int radial_index = 0;
  ParitySector sector;
};

}  // namespace softcore
