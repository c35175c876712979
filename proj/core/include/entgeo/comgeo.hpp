#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace entgeo {

using RealVector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

/// Flattened outer product: out[i * b.size() + j] = a[i] * b[j].
RealVector outer_flat(std::span<const double> a, std::span<const double> b);

/// Convex hull of a finite point set.
struct VPolytope {
  std::size_t ambient_dim = 0;
  std::vector<RealVector> vertices;

  /// Throws ShapeError if empty or if vertex lengths disagree with ambient_dim.
  void check() const;
};

/// { x : normal . x >= offset for every inequality, v . x == value for every equality }.
struct HPolytope {
  struct Inequality {
    RealVector normal;
    double offset;
  };
  struct Equality {
    RealVector normal;
    double value;
  };
  std::size_t ambient_dim = 0;
  std::vector<Inequality> inequalities;
  std::vector<Equality> equalities;
};

inline constexpr double kModelTol = 1e-10;
inline constexpr double kReduceTol = 1e-9;
inline constexpr double kDedupTol = 1e-8;

/// Finite-dimensional convex operational model with polytopic state space.
/// States are coordinate vectors; effects and the unit are linear functionals
/// on the same coordinates (affine functionals on the state space).
class ComModel {
 public:
  /// Validates normalization, effect ranges and vertex irredundancy; throws
  /// DomainError with the offending magnitude otherwise.
  ComModel(std::size_t ambient_dim, std::vector<RealVector> vertices, std::vector<RealVector> effects,
           RealVector unit);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<RealVector>& vertices() const { return vertices_; }
  const std::vector<RealVector>& effects() const { return effects_; }
  const RealVector& unit() const { return unit_; }
  VPolytope state_space() const { return {ambient_dim_, vertices_}; }

 private:
  std::size_t ambient_dim_;
  std::vector<RealVector> vertices_;
  std::vector<RealVector> effects_;
  RealVector unit_;
};

/// Standard simplex with n vertices; effects are the coordinate functionals
/// and their complements.
ComModel classical_model(std::size_t n);

/// Box-world bit: states (x, y, 1) over the unit square, effects x, 1-x, y, 1-y.
ComModel gbit_model();

/// State of a composite model as a coordinate tensor W (dim_a x dim_b,
/// row-major) with phi(a, b) = a^T W b for effects a, b.
struct BilinearState {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  RealVector coords;

  static BilinearState product(std::span<const double> va, std::span<const double> vb);

  double evaluate(std::span<const double> effect_a, std::span<const double> effect_b) const;
  /// Values phi(a_i, b_j) on the spanning sets (effects of A then u_A) x
  /// (effects of B then u_B).
  std::vector<RealVector> table(const ComModel& a, const ComModel& b) const;
};

/// PR box on gbit (x) gbit: uniform marginals, outcomes equal for every
/// measurement pair except (y, y), where they differ.
BilinearState pr_box();

struct HullResult {
  double distance = 0.0;  // min over hull points of the infinity-norm distance
  RealVector weights;     // convex weights attaining it
};

/// Solves min_t { ||sum_i w_i v_i - x||_inf <= t : w in simplex } by LP.
HullResult hull_distance(std::span<const double> x, const VPolytope& p);

bool hull_membership(std::span<const double> x, const VPolytope& p, double tol);

/// Separating functional: normal . v <= offset on every vertex while
/// normal . x = offset + margin. A positive margin certifies x is outside.
struct SeparationCertificate {
  RealVector normal;
  double offset = 0.0;
  double margin = 0.0;
};

/// Maximizes normal . x - max_i normal . v_i over ||normal||_inf <= 1. The
/// optimum equals the l1 distance from x to the hull.
SeparationCertificate separation_certificate(std::span<const double> x, const VPolytope& p);

/// Indices of an irredundant subset with the same hull, in input order.
std::vector<std::size_t> irredundant_indices(const std::vector<RealVector>& points, double tol = kReduceTol);

VPolytope reduce_vertices(const VPolytope& p);

bool polytope_equal(const VPolytope& p, const VPolytope& q, double tol);

/// Largest hull distance of p's vertices to q and of q's vertices to p.
double polytope_distance(const VPolytope& p, const VPolytope& q);

/// Convex hull of all product states, reduced.
VPolytope min_tensor(const ComModel& a, const ComModel& b);

/// phi(e_i, f_j) >= 0 for every pair of extreme effects, phi(u_A, u_B) = 1.
HPolytope max_tensor_constraints(const ComModel& a, const ComModel& b);

bool max_tensor_membership(const BilinearState& phi, const HPolytope& h, double tol);

struct GptMarginals {
  RealVector a;
  RealVector b;
};

/// omega_A(a) = phi(a, u_B), omega_B(b) = phi(u_A, b). Throws DomainError when
/// phi is not in the maximal tensor product.
GptMarginals gpt_marginals(const BilinearState& phi, const ComModel& a, const ComModel& b);

inline constexpr std::size_t kDefaultDimCap = 10;

/// All basic feasible points of h, deduplicated and reduced. Throws
/// UnsupportedError if h.ambient_dim exceeds dim_cap.
VPolytope enumerate_max_vertices(const HPolytope& h, std::size_t dim_cap = kDefaultDimCap);

}  // namespace entgeo
