#pragma once

#include <cstddef>
#include <vector>

namespace entgeo::lp {

enum class Sense { LessEq, GreaterEq, Equal };

struct Constraint {
  std::vector<double> coeffs;
  Sense sense;
  double rhs;
};

/// minimize objective . x  subject to constraints, x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  double phase_one_residual = 0.0;  // sum of artificials at the end of phase one
  std::size_t iterations = 0;
};

inline constexpr double kPivotTol = 1e-11;

/// Dense two-phase tableau simplex: Bland's rule picks the entering column, a
/// Harris two-pass ratio test the leaving row. Meant for the small
/// instances of this library (a few hundred rows/columns at most).
Solution solve(const Problem& problem);

}  // namespace entgeo::lp
