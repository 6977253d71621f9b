#pragma once

// Brute-force finite-difference eigensolver used to check the semi-analytic
// spectra. The second derivative is the three-point stencil, so the matrix is
// symmetric tridiagonal with diagonal 2/h^2 + V_eff(r_i) and off-diagonal
// -1/h^2, Dirichlet at the grid ends.

#include <functional>
#include <span>
#include <vector>

#include "softcore/model.hpp"

namespace softcore::oracle {

enum class Geometry { half_line_dirichlet, full_line };

struct GridSpec {
  double r_max = 14.0;
  int n = 5600;  // interior points
  Geometry geometry = Geometry::half_line_dirichlet;

  /// Throws DomainError unless r_max > 0 and n >= 100.
  void validate() const;

  /// r_max/(n+1) on the half line, 2 r_max/(n+1) on the full line.
  double spacing() const;

  /// Interior points: r_i = (i+1) h on (0, r_max), or -r_max + (i+1) h on the
  /// full line (symmetric about 0).
  std::vector<double> points() const;
};

/// Grid with spacing h on [0, r_max] or [-r_max, r_max].
GridSpec grid_with_spacing(double r_max, double h, Geometry geometry);

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;  // sum u_i^2 h = 1, first significant entry positive
  bool converged = false;
};

/// The k lowest eigenpairs for potential values sampled on spec.points().
/// Inverse-iteration failures are flagged per pair rather than thrown.
std::vector<Eigenpair> diagonalize(std::span<const double> potential, const GridSpec& spec, int k);

/// V_eff on the grid. The step enters as its average over each cell
/// [r_i - h/2, r_i + h/2], so a node on the core edge sees V/2; plain point
/// sampling shifts the edge by up to h/2 and costs O(h) in the eigenvalues.
std::vector<double> effective_potential(const SoftCorePotential& pot, AngularChannel ch, const GridSpec& spec);
std::vector<double> effective_potential(const SoftCorePotential& pot, const GridSpec& spec);

/// Lowest k eigenvalues of the radial problem in one channel (half line).
std::vector<double> oracle_spectrum(const SoftCorePotential& pot, AngularChannel ch, const GridSpec& spec, int k);
std::vector<Eigenpair> oracle_eigenpairs(const SoftCorePotential& pot, AngularChannel ch, const GridSpec& spec,
                                         int k);

/// Lowest k eigenvalues of one parity sector on the full line. The reflection
/// symmetry splits the matrix exactly into an even and an odd block, so
/// near-degenerate pairs are never mixed. Vectors span the whole grid.
std::vector<double> oracle_spectrum(const SoftCorePotential& pot, ParitySector sector, const GridSpec& spec, int k);
std::vector<Eigenpair> oracle_eigenpairs(const SoftCorePotential& pot, ParitySector sector, const GridSpec& spec,
                                         int k);

/// Lowest k eigenvalues for an arbitrary V_eff(r) on the half line.
std::vector<double> oracle_spectrum(const std::function<double(double)>& v_eff, const GridSpec& spec, int k);

}  // namespace softcore::oracle
