#pragma once

// Confluent hypergeometric functions, Gamma and Hermite polynomials.
//
// Everything here is a pure function of its arguments: no caching and no
// global state, so any of it may be called concurrently.

namespace softcore::specfun {

/// Parameters of Kummer's equation  x F'' + (b - x) F' - a F = 0.
struct KummerParams {
  double a;
  double b;
  double x;
};

/// Result of a direct power-series summation.
struct SeriesSum {
  double value;
  int terms;  // number of nonzero terms that entered the sum
};

/// A value stored as mantissa * exp(log_scale). log_scale is 0 whenever the
/// value fits in a double; it is only used for very large Kummer functions
/// (near-impenetrable cores).
struct ScaledValue {
  double mantissa;
  double log_scale;
};

inline constexpr double kSeriesTolerance = 1e-15;
inline constexpr int kSeriesTermCap = 500;
inline constexpr double kDirectSeriesLimit = 30.0;

/// Gamma function: Lanczos approximation (g = 7, 9 coefficients) with the
/// reflection formula for arguments below 1/2.
/// Throws DomainError at the poles and OverflowError above ~171.6.
double gamma_fn(double x);

/// 1/Gamma(x); exactly zero at the poles x = 0, -1, -2, ...
double rgamma(double x);

/// Direct Maclaurin series of M(a,b,x) with its term count. For a = -n the
/// series stops after n+1 terms. Throws NonConvergenceError when the cap is
/// reached, OverflowError if the sum leaves the double range.
SeriesSum kummer_m_series(double a, double b, double x);

/// Kummer's function M(a,b,x) = 1F1(a;b;x).
///
/// The series is summed directly for 0 <= x <= 30. Negative arguments go
/// through M(a,b,x) = e^x M(b-a,b,-x) so that the summed series has terms of
/// one sign; for x > 30 the same transformation is used when b-a is a
/// non-positive integer (the transformed series is then a finite polynomial).
double kummer_m(const KummerParams& p);

/// dM/dx = (a/b) M(a+1,b+1,x).
double kummer_m_dx(const KummerParams& p);

/// M(a,b,x) without overflow: mantissa * exp(log_scale). The term cap grows
/// with sqrt(|a x|) so that large-parameter inputs still converge.
ScaledValue kummer_m_scaled(const KummerParams& p);

/// Tricomi's function U(a,b,x), the solution of Kummer's equation that
/// behaves like x^(-a) for large x. b must not be an integer.
///
/// Small x uses the two-term connection formula
///   U = G(1-b)/G(a+1-b) M(a,b,x) + G(b-1)/G(a) x^(1-b) M(a-b+1,2-b,x),
/// with 1/G(a) = 0 at the poles. For larger x that formula loses everything to
/// cancellation, so U is computed from its Laplace integral at two parameters
/// a0, a0+1 in (1,3] and carried to the requested a by the three-term
/// recurrence in a, run in the direction in which U is dominant.
double tricomi_u(const KummerParams& p);

/// dU/dx = -a U(a+1,b+1,x).
double tricomi_u_dx(const KummerParams& p);

/// U(a,b,x) evaluated with the connection formula only, regardless of x.
/// Exposed as an independent cross-check path.
double tricomi_u_connection(const KummerParams& p);

/// Physicists' Hermite polynomial H_n(x).
double hermite(int n, double x);

}  // namespace softcore::specfun
