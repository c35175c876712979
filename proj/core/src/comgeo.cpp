#include "entgeo/comgeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "entgeo/errors.hpp"
#include "entgeo/lp.hpp"

namespace entgeo {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ShapeError("dot: length " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("max_abs_diff: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

RealVector outer_flat(std::span<const double> a, std::span<const double> b) {
  RealVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

void VPolytope::check() const {
  if (vertices.empty()) throw ShapeError("polytope has no vertices");
  for (const auto& v : vertices) {
    if (v.size() != ambient_dim) {
      throw ShapeError("polytope vertex of length " + std::to_string(v.size()) +
                       " in ambient dimension " + std::to_string(ambient_dim));
    }
  }
}

// ---------------------------------------------------------------------------
// LP-backed hull queries

HullResult hull_distance(std::span<const double> x, const VPolytope& p) {
  p.check();
  if (x.size() != p.ambient_dim) {
    throw ShapeError("hull query of length " + std::to_string(x.size()) + " in ambient dimension " +
                     std::to_string(p.ambient_dim));
  }
  const std::size_t m = p.vertices.size();
  const std::size_t d = p.ambient_dim;
  lp::Problem prob;
  prob.num_vars = m + 1;  // weights, then t
  prob.objective.assign(m + 1, 0.0);
  prob.objective[m] = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    RealVector row(m + 1);
    for (std::size_t i = 0; i < m; ++i) row[i] = p.vertices[i][k];
    row[m] = -1.0;
    prob.constraints.push_back({row, lp::Sense::LessEq, x[k]});
    row[m] = 1.0;
    prob.constraints.push_back({std::move(row), lp::Sense::GreaterEq, x[k]});
  }
  RealVector ones(m + 1, 1.0);
  ones[m] = 0.0;
  prob.constraints.push_back({std::move(ones), lp::Sense::Equal, 1.0});

  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::Optimal) {
    throw std::runtime_error("hull_distance: LP " +
                             std::string(sol.status == lp::Status::Infeasible ? "infeasible" : "unbounded") +
                             " (phase-one residual " + std::to_string(sol.phase_one_residual) + ")");
  }
  HullResult out;
  out.weights.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(m));
  // Report the residual of the returned weights, not the LP's t.
  RealVector recon(d, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < d; ++k) recon[k] += out.weights[i] * p.vertices[i][k];
  out.distance = max_abs_diff(recon, x);
  return out;
}

bool hull_membership(std::span<const double> x, const VPolytope& p, double tol) {
  return hull_distance(x, p).distance <= tol;
}

SeparationCertificate separation_certificate(std::span<const double> x, const VPolytope& p) {
  p.check();
  if (x.size() != p.ambient_dim) throw ShapeError("separation_certificate: dimension mismatch");
  const std::size_t d = p.ambient_dim;
  // Variables: w+ (d), w- (d), s+, s-.
  lp::Problem prob;
  prob.num_vars = 2 * d + 2;
  prob.objective.assign(prob.num_vars, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    prob.objective[k] = -x[k];
    prob.objective[d + k] = x[k];
  }
  prob.objective[2 * d] = 1.0;
  prob.objective[2 * d + 1] = -1.0;
  for (const auto& v : p.vertices) {
    RealVector row(prob.num_vars, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
      row[k] = v[k];
      row[d + k] = -v[k];
    }
    row[2 * d] = -1.0;
    row[2 * d + 1] = 1.0;
    prob.constraints.push_back({std::move(row), lp::Sense::LessEq, 0.0});
  }
  for (std::size_t k = 0; k < 2 * d; ++k) {
    RealVector row(prob.num_vars, 0.0);
    row[k] = 1.0;
    prob.constraints.push_back({std::move(row), lp::Sense::LessEq, 1.0});
  }
  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::Optimal) {
    throw std::runtime_error("separation_certificate: LP did not reach an optimum");
  }
  SeparationCertificate cert;
  cert.normal.resize(d);
  for (std::size_t k = 0; k < d; ++k) cert.normal[k] = sol.x[k] - sol.x[d + k];
  cert.offset = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices) cert.offset = std::max(cert.offset, dot(cert.normal, v));
  cert.margin = dot(cert.normal, x) - cert.offset;
  return cert;
}

// ---------------------------------------------------------------------------
// Vertex reduction and equality

std::vector<std::size_t> irredundant_indices(const std::vector<RealVector>& points, double tol) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const bool dup = std::any_of(keep.begin(), keep.end(), [&](std::size_t j) {
      return max_abs_diff(points[i], points[j]) <= kDedupTol;
    });
    if (!dup) keep.push_back(i);
  }
  if (keep.size() <= 1) return keep;

  const std::size_t dim = points[keep.front()].size();
  for (std::size_t pos = 0; pos < keep.size() && keep.size() > 1;) {
    VPolytope others{dim, {}};
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (j != pos) others.vertices.push_back(points[keep[j]]);
    if (hull_membership(points[keep[pos]], others, tol)) {
      keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      ++pos;
    }
  }
  return keep;
}

VPolytope reduce_vertices(const VPolytope& p) {
  p.check();
  VPolytope out{p.ambient_dim, {}};
  for (std::size_t i : irredundant_indices(p.vertices)) out.vertices.push_back(p.vertices[i]);
  return out;
}

double polytope_distance(const VPolytope& p, const VPolytope& q) {
  p.check();
  q.check();
  if (p.ambient_dim != q.ambient_dim) {
    throw ShapeError("polytope comparison across ambient dimensions " + std::to_string(p.ambient_dim) +
                     " and " + std::to_string(q.ambient_dim));
  }
  double worst = 0.0;
  for (const auto& v : p.vertices) worst = std::max(worst, hull_distance(v, q).distance);
  for (const auto& v : q.vertices) worst = std::max(worst, hull_distance(v, p).distance);
  return worst;
}

bool polytope_equal(const VPolytope& p, const VPolytope& q, double tol) {
  return polytope_distance(p, q) <= tol;
}

// ---------------------------------------------------------------------------
// Models

ComModel::ComModel(std::size_t ambient_dim, std::vector<RealVector> vertices, std::vector<RealVector> effects,
                   RealVector unit)
    : ambient_dim_(ambient_dim),
      vertices_(std::move(vertices)),
      effects_(std::move(effects)),
      unit_(std::move(unit)) {
  if (ambient_dim_ == 0) throw DomainError("model ambient dimension must be >= 1");
  if (vertices_.empty()) throw DomainError("model has no vertices");
  if (unit_.size() != ambient_dim_) throw ShapeError("unit functional length != ambient dimension");
  for (const auto& v : vertices_)
    if (v.size() != ambient_dim_) throw ShapeError("model vertex length != ambient dimension");
  for (const auto& e : effects_)
    if (e.size() != ambient_dim_) throw ShapeError("model effect length != ambient dimension");

  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const double u = dot(unit_, vertices_[i]);
    if (std::abs(u - 1.0) > kModelTol) {
      throw DomainError("vertex " + std::to_string(i) + " has unit value " + std::to_string(u));
    }
    for (std::size_t k = 0; k < effects_.size(); ++k) {
      const double e = dot(effects_[k], vertices_[i]);
      if (e < -kModelTol || e > 1.0 + kModelTol) {
        throw DomainError("effect " + std::to_string(k) + " takes value " + std::to_string(e) + " on vertex " +
                          std::to_string(i));
      }
    }
  }
  if (irredundant_indices(vertices_).size() != vertices_.size()) {
    throw DomainError("model vertex list is redundant");
  }
}

ComModel classical_model(std::size_t n) {
  if (n < 2) throw DomainError("classical_model: n must be >= 2, got " + std::to_string(n));
  std::vector<RealVector> vertices;
  std::vector<RealVector> effects;
  for (std::size_t i = 0; i < n; ++i) {
    RealVector e(n, 0.0);
    e[i] = 1.0;
    vertices.push_back(e);
    effects.push_back(e);
  }
  for (std::size_t i = 0; i < n; ++i) {
    RealVector c(n, 1.0);
    c[i] = 0.0;
    const bool present = std::find(effects.begin(), effects.end(), c) != effects.end();
    if (!present) effects.push_back(std::move(c));
  }
  return ComModel(n, std::move(vertices), std::move(effects), RealVector(n, 1.0));
}

ComModel gbit_model() {
  std::vector<RealVector> vertices = {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  std::vector<RealVector> effects = {{1, 0, 0}, {-1, 0, 1}, {0, 1, 0}, {0, -1, 1}};
  return ComModel(3, std::move(vertices), std::move(effects), {0, 0, 1});
}

// ---------------------------------------------------------------------------
// Bilinear states and tensor products

BilinearState BilinearState::product(std::span<const double> va, std::span<const double> vb) {
  return {va.size(), vb.size(), outer_flat(va, vb)};
}

double BilinearState::evaluate(std::span<const double> effect_a, std::span<const double> effect_b) const {
  if (effect_a.size() != dim_a || effect_b.size() != dim_b) {
    throw ShapeError("bilinear evaluation: effect lengths do not match the state");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j) s += effect_a[i] * coords[i * dim_b + j] * effect_b[j];
  return s;
}

std::vector<RealVector> BilinearState::table(const ComModel& a, const ComModel& b) const {
  std::vector<RealVector> rows_a = a.effects();
  rows_a.push_back(a.unit());
  std::vector<RealVector> cols_b = b.effects();
  cols_b.push_back(b.unit());
  std::vector<RealVector> out;
  for (const auto& ea : rows_a) {
    RealVector row;
    for (const auto& fb : cols_b) row.push_back(evaluate(ea, fb));
    out.push_back(std::move(row));
  }
  return out;
}

BilinearState pr_box() {
  // W(i, j) for i, j < 2 is P(both "0" outcomes | measurements i, j); the
  // last row/column carry the marginals and the normalization.
  return {3, 3, {0.5, 0.5, 0.5, 0.5, 0.0, 0.5, 0.5, 0.5, 1.0}};
}

VPolytope min_tensor(const ComModel& a, const ComModel& b) {
  VPolytope out{a.ambient_dim() * b.ambient_dim(), {}};
  for (const auto& va : a.vertices())
    for (const auto& vb : b.vertices()) out.vertices.push_back(outer_flat(va, vb));
  return reduce_vertices(out);
}

HPolytope max_tensor_constraints(const ComModel& a, const ComModel& b) {
  HPolytope h;
  h.ambient_dim = a.ambient_dim() * b.ambient_dim();
  for (const auto& ea : a.effects())
    for (const auto& fb : b.effects()) h.inequalities.push_back({outer_flat(ea, fb), 0.0});
  h.equalities.push_back({outer_flat(a.unit(), b.unit()), 1.0});
  return h;
}

bool max_tensor_membership(const BilinearState& phi, const HPolytope& h, double tol) {
  if (phi.coords.size() != h.ambient_dim || phi.dim_a * phi.dim_b != phi.coords.size()) {
    throw ShapeError("bilinear state of dimension " + std::to_string(phi.coords.size()) +
                     " against constraints in dimension " + std::to_string(h.ambient_dim));
  }
  for (const auto& ineq : h.inequalities)
    if (dot(ineq.normal, phi.coords) - ineq.offset < -tol) return false;
  for (const auto& eq : h.equalities)
    if (std::abs(dot(eq.normal, phi.coords) - eq.value) > tol) return false;
  return true;
}

GptMarginals gpt_marginals(const BilinearState& phi, const ComModel& a, const ComModel& b) {
  if (phi.dim_a != a.ambient_dim() || phi.dim_b != b.ambient_dim()) {
    throw ShapeError("bilinear state dimensions do not match the models");
  }
  if (!max_tensor_membership(phi, max_tensor_constraints(a, b), 1e-9)) {
    throw DomainError("gpt_marginals: state is outside the maximal tensor product");
  }
  GptMarginals out{RealVector(phi.dim_a, 0.0), RealVector(phi.dim_b, 0.0)};
  for (std::size_t i = 0; i < phi.dim_a; ++i)
    for (std::size_t j = 0; j < phi.dim_b; ++j) {
      const double w = phi.coords[i * phi.dim_b + j];
      out.a[i] += w * b.unit()[j];
      out.b[j] += a.unit()[i] * w;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Vertex enumeration

namespace {

// Solves the square system in place; false when numerically singular.
bool solve_square(std::vector<RealVector> a, RealVector b, RealVector& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-10) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return true;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

VPolytope enumerate_max_vertices(const HPolytope& h, std::size_t dim_cap) {
  const std::size_t d = h.ambient_dim;
  if (d > dim_cap) {
    throw UnsupportedError("vertex enumeration in dimension " + std::to_string(d) + " exceeds the cap of " +
                           std::to_string(dim_cap));
  }
  if (h.equalities.size() > d) throw DomainError("more equalities than the ambient dimension");

  // Scale-normalize inequality rows and drop duplicates.
  std::vector<HPolytope::Inequality> rows;
  for (const auto& ineq : h.inequalities) {
    const double s = inf_norm(ineq.normal);
    if (s == 0.0) continue;
    HPolytope::Inequality r{ineq.normal, ineq.offset / s};
    for (double& v : r.normal) v /= s;
    const bool dup = std::any_of(rows.begin(), rows.end(), [&](const HPolytope::Inequality& o) {
      return max_abs_diff(o.normal, r.normal) <= 1e-12 && std::abs(o.offset - r.offset) <= 1e-12;
    });
    if (!dup) rows.push_back(std::move(r));
  }

  const std::size_t pick = d - h.equalities.size();
  VPolytope found{d, {}};
  auto feasible = [&](const RealVector& x) {
    for (const auto& ineq : h.inequalities)
      if (dot(ineq.normal, x) - ineq.offset < -1e-9) return false;
    for (const auto& eq : h.equalities)
      if (std::abs(dot(eq.normal, x) - eq.value) > 1e-9) return false;
    return true;
  };
  auto consider = [&](const std::vector<std::size_t>& subset) {
    std::vector<RealVector> a;
    RealVector b;
    for (const auto& eq : h.equalities) {
      a.push_back(eq.normal);
      b.push_back(eq.value);
    }
    for (std::size_t idx : subset) {
      a.push_back(rows[idx].normal);
      b.push_back(rows[idx].offset);
    }
    RealVector x;
    if (!solve_square(std::move(a), std::move(b), x) || !feasible(x)) return;
    const bool dup = std::any_of(found.vertices.begin(), found.vertices.end(),
                                 [&](const RealVector& v) { return max_abs_diff(v, x) <= kDedupTol; });
    if (!dup) found.vertices.push_back(std::move(x));
  };

  if (pick == 0) {
    consider({});
  } else if (pick <= rows.size()) {
    std::vector<std::size_t> idx(pick);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      consider(idx);
      std::size_t i = pick;
      while (i-- > 0) {
        if (idx[i] != i + rows.size() - pick) break;
        if (i == 0) {
          i = pick;  // sentinel: exhausted
          break;
        }
      }
      if (i == pick) break;
      ++idx[i];
      for (std::size_t j = i + 1; j < pick; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (found.vertices.empty()) throw DomainError("constraint system has no vertices");

  std::sort(found.vertices.begin(), found.vertices.end());
  return reduce_vertices(found);
}

}  // namespace entgeo
