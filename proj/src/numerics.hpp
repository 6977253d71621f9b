#pragma once

// Small numerical kernels shared by the solvers. Not part of the public API.

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace softcore::numerics {

/// Composite Simpson rule on [lo, hi] with an even number of panels.
double simpson(const std::function<double(double)>& f, double lo, double hi, int panels);

/// Simpson weights for `panels` uniform panels of width h (panels even).
std::vector<double> simpson_weights(int panels, double h);

/// Bisection on a bracket with f(lo) and f(hi) of opposite sign down to width
/// tol, finished by one secant step inside the last bracket.
double bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo, double f_hi, double tol);

struct ScanRoot {
  double value;
  bool exact_node;  // root landed exactly on a scan node
};

struct ScanReport {
  std::vector<ScanRoot> roots;
  std::vector<std::string> skipped;  // cells abandoned after an evaluation error
};

/// Sign-change scan of f over (lo, hi] with the given step, each bracketed
/// cell refined by bisection. Evaluation errors are confined to their cell.
ScanReport scan_roots(const std::function<double(double)>& f, double lo, double hi, double step,
                      double tol);

struct BranchScales {
  double inner;
  double outer;
};

/// Scale factors that join an inner branch (u, u') and an outer branch at the
/// matching radius. The inner vector is normalized to unit length and the
/// outer one is projected onto it, so a node at the matching radius needs no
/// special treatment. Throws MatchingDegeneracyError if either vector is zero.
BranchScales match_branch_scales(double in_u, double in_du, double out_u, double out_du);

/// State of a second-order linear ODE  u'' = q(r) u  carried as (u, u').
struct OdeState {
  double u;
  double du;
};

/// Adaptive Dormand-Prince 5(4) integration of u'' = q(r) u from r0 to each of
/// the requested stations (monotone in the direction of travel). Returns the
/// state at each station.
std::vector<OdeState> integrate_linear(const std::function<double(double)>& q, double r0,
                                       OdeState start, std::span<const double> stations,
                                       double rel_tol);

}  // namespace softcore::numerics
