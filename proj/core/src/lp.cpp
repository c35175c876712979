#include "entgeo/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "entgeo/errors.hpp"

namespace entgeo::lp {

namespace {

constexpr std::size_t kMaxIterations = 200000;
constexpr double kHarrisSlack = 1e-10;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : cols_(cols + 1), data_(rows, std::vector<double>(cols + 1)) {}

  double& at(std::size_t r, std::size_t c) { return data_[r][c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r][c]; }
  double& rhs(std::size_t r) { return data_[r][cols_ - 1]; }
  std::size_t rows() const { return data_.size(); }
  std::size_t vars() const { return cols_ - 1; }
  std::vector<double>& row(std::size_t r) { return data_[r]; }
  void erase_row(std::size_t r) { data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r)); }

 private:
  std::size_t cols_;
  std::vector<std::vector<double>> data_;
};

struct Engine {
  Tableau t;
  std::vector<double> cost;  // reduced-cost row, same width as the tableau
  std::vector<std::size_t> basis;
  std::size_t iterations = 0;

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = t.row(r);
    const double inv = 1.0 / prow[c];
    for (double& v : prow) v *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (i == r) continue;
      auto& row = t.row(i);
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    const double f = cost[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cost.size(); ++j) cost[j] -= f * prow[j];
      cost[c] = 0.0;
    }
    basis[r] = c;
  }

  void price_out() {
    // cost holds raw costs on entry; make basic reduced costs zero.
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double f = cost[basis[i]];
      if (f == 0.0) continue;
      const auto& row = t.row(i);
      for (std::size_t j = 0; j < cost.size(); ++j) cost[j] -= f * row[j];
    }
  }

  // Bland's rule for the entering column. Returns false on unboundedness.
  bool optimize(std::size_t allowed_cols) {
    for (;;) {
      if (++iterations > kMaxIterations) {
        throw std::runtime_error("lp: iteration limit exceeded");
      }
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (cost[j] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == allowed_cols) return true;

      // Harris two-pass ratio test: bound the step with a small feasibility
      // slack, then take the largest pivot among rows within that bound.
      double bound = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < t.rows(); ++i) {
        const double a = t.at(i, enter);
        if (a > kPivotTol) bound = std::min(bound, (std::max(t.rhs(i), 0.0) + kHarrisSlack) / a);
      }
      std::size_t leave = t.rows();
      double best_pivot = 0.0;
      for (std::size_t i = 0; i < t.rows(); ++i) {
        const double a = t.at(i, enter);
        if (a <= kPivotTol || std::max(t.rhs(i), 0.0) / a > bound) continue;
        if (a > best_pivot || (a == best_pivot && basis[i] < basis[leave])) {
          best_pivot = a;
          leave = i;
        }
      }
      if (leave == t.rows()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = problem.num_vars;
  if (problem.objective.size() != n) throw ShapeError("lp: objective length != num_vars");
  const std::size_t m = problem.constraints.size();

  // Normalize to rhs >= 0 and count auxiliary columns.
  struct Row {
    std::vector<double> coeffs;
    Sense sense;
    double rhs;
  };
  std::vector<Row> rows;
  rows.reserve(m);
  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  for (const auto& c : problem.constraints) {
    if (c.coeffs.size() != n) throw ShapeError("lp: constraint length != num_vars");
    Row r{c.coeffs, c.sense, c.rhs};
    if (r.rhs < 0.0) {
      for (double& v : r.coeffs) v = -v;
      r.rhs = -r.rhs;
      if (r.sense == Sense::LessEq) {
        r.sense = Sense::GreaterEq;
      } else if (r.sense == Sense::GreaterEq) {
        r.sense = Sense::LessEq;
      }
    }
    if (r.sense != Sense::Equal) ++num_slack;
    if (r.sense != Sense::LessEq) ++num_art;
    rows.push_back(std::move(r));
  }

  const std::size_t art_begin = n + num_slack;
  const std::size_t total = art_begin + num_art;
  Engine e{Tableau(m, total), std::vector<double>(total + 1, 0.0), std::vector<std::size_t>(m), 0};

  std::size_t slack = n;
  std::size_t art = art_begin;
  double rhs_scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = rows[i];
    for (std::size_t j = 0; j < n; ++j) e.t.at(i, j) = r.coeffs[j];
    e.t.rhs(i) = r.rhs;
    rhs_scale = std::max(rhs_scale, r.rhs);
    switch (r.sense) {
      case Sense::LessEq:
        e.t.at(i, slack) = 1.0;
        e.basis[i] = slack++;
        break;
      case Sense::GreaterEq:
        e.t.at(i, slack++) = -1.0;
        e.t.at(i, art) = 1.0;
        e.basis[i] = art++;
        break;
      case Sense::Equal:
        e.t.at(i, art) = 1.0;
        e.basis[i] = art++;
        break;
    }
  }

  Solution sol;
  if (num_art > 0) {
    for (std::size_t j = art_begin; j < total; ++j) e.cost[j] = 1.0;
    e.price_out();
    e.optimize(total);
    double residual = 0.0;
    for (std::size_t i = 0; i < e.t.rows(); ++i)
      if (e.basis[i] >= art_begin) residual += std::max(e.t.rhs(i), 0.0);
    sol.phase_one_residual = residual;
    if (residual > 1e-9 * rhs_scale) {
      sol.status = Status::Infeasible;
      sol.iterations = e.iterations;
      return sol;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = e.t.rows(); i-- > 0;) {
      if (e.basis[i] < art_begin) continue;
      std::size_t col = art_begin;
      double best = kPivotTol;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(e.t.at(i, j)) > best) {
          best = std::abs(e.t.at(i, j));
          col = j;
        }
      }
      if (col < art_begin) {
        e.pivot(i, col);
      } else {
        e.t.erase_row(i);
        e.basis.erase(e.basis.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::fill(e.cost.begin(), e.cost.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) e.cost[j] = problem.objective[j];
  e.price_out();
  const bool bounded = e.optimize(art_begin);
  sol.iterations = e.iterations;
  if (!bounded) {
    sol.status = Status::Unbounded;
    return sol;
  }

  sol.status = Status::Optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < e.t.rows(); ++i)
    if (e.basis[i] < n) sol.x[e.basis[i]] = std::max(e.t.rhs(i), 0.0);
  for (std::size_t j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.x[j];
  return sol;
}

}  // namespace entgeo::lp
