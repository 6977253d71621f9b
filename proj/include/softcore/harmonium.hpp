#pragma once

// Quasi-exactly solvable Coulomb-plus-trap channel
//   -u'' + [lambda/r + r^2/4 + l(l+1)/r^2] u = E u.
// The ansatz u = r^(l+1) e^(-r^2/4) P(r), P(r) = sum_k a_k r^k, gives
//   a_(k+2) = [lambda a_(k+1) - (E - l - 3/2 - k) a_k] / [(k+2)(k+2l+3)]
// with a_0 = 1, a_1 = lambda / (2(l+1)). P has degree p only if
// E = p + l + 3/2 and a_(p+1)(lambda) = 0, so solutions exist at isolated
// couplings. The Coulomb strength is treated as a free parameter lambda
// rather than fixed to 1; at lambda = 1 the termination condition has no
// solution for most (p, l).

#include <vector>

namespace softcore::harmonium {

struct QesSolution {
  double coupling = 0.0;  // lambda
  double energy = 0.0;    // E = p + l + 3/2
  int degree = 0;         // p
  std::vector<double> coefficients;  // a_0 .. a_p
  int l = 0;
  double residual = 0.0;  // max relative Schroedinger residual at the check radii
};

inline constexpr double kCouplingTolerance = 1e-12;
inline constexpr double kResidualLimit = 1e-10;
inline constexpr int kResidualRadii = 50;

/// a_(k+2) from a_k and a_(k+1) (coeffs must hold at least k + 2 entries).
double recurrence_step(const std::vector<double>& coeffs, int k, double lambda, double energy, int l);

/// a_0 .. a_n for the given lambda, E and l.
std::vector<double> coefficients(double lambda, double energy, int l, int n);

/// Termination polynomial a_(p+1)(lambda) at E = p + l + 3/2.
double termination_value(double lambda, int p, int l);

/// All real couplings in [-lambda_max, lambda_max] with a polynomial solution
/// of degree p (lambda_max <= 0 selects 10(p+1)), sorted ascending. Each
/// solution has passed the residual check; a failing root throws
/// NonConvergenceError.
std::vector<QesSolution> find_qes_couplings(int p, int l, double lambda_max = 0.0);

/// u(r) = r^(l+1) e^(-r^2/4) P(r).
double wavefunction(const QesSolution& s, double r);

/// Max over radii of |-u'' + (V_eff - E) u| divided by the largest single
/// term of that expression, with u'' taken analytically from P.
double schroedinger_residual(const QesSolution& s, const std::vector<double>& radii);

/// The default check radii: kResidualRadii points spread over (0, 6].
std::vector<double> residual_radii();

}  // namespace softcore::harmonium
