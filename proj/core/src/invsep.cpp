#include "entgeo/invsep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "entgeo/errors.hpp"

namespace entgeo {

// ---------------------------------------------------------------------------
// Quantum polytopes

void StatePolytope::check() const {
  if (vertices.empty()) throw ShapeError("state polytope has no vertices");
  for (const auto& v : vertices) {
    if (v.split() != split) throw ShapeError("state polytope vertices disagree on the split");
  }
}

VPolytope StatePolytope::coordinates() const {
  check();
  VPolytope out{2 * split.total() * split.total(), {}};
  for (const auto& v : vertices) out.vertices.push_back(to_real_coordinates(v.mat()));
  return out;
}

StatePolytope singleton(const DensityMatrix& rho) { return {rho.split(), {rho}}; }

StatePolytope reduce(const StatePolytope& c) {
  const VPolytope coords = c.coordinates();
  StatePolytope out{c.split, {}};
  for (std::size_t i : irredundant_indices(coords.vertices)) out.vertices.push_back(c.vertices[i]);
  return out;
}

double hull_residual(const DensityMatrix& rho, const StatePolytope& c) {
  if (rho.split().total() != c.split.total()) throw ShapeError("hull_residual: dimension mismatch");
  return hull_distance(to_real_coordinates(rho.mat()), c.coordinates()).distance;
}

bool contains(const StatePolytope& c, const DensityMatrix& rho, double tol) { return hull_residual(rho, c) <= tol; }

bool polytope_equal(const StatePolytope& p, const StatePolytope& q, double tol) {
  if (p.split.total() != q.split.total()) throw ShapeError("polytope_equal: dimension mismatch");
  return polytope_equal(p.coordinates(), q.coordinates(), tol);
}

std::pair<StatePolytope, StatePolytope> tau(const StatePolytope& c) {
  c.check();
  StatePolytope ca{{c.split.dim_a, 1}, {}};
  StatePolytope cb{{c.split.dim_b, 1}, {}};
  for (const auto& v : c.vertices) {
    Marginals m = marginals(v);
    ca.vertices.push_back(std::move(m.a));
    cb.vertices.push_back(std::move(m.b));
  }
  return {reduce(ca), reduce(cb)};
}

StatePolytope lambda_map(const StatePolytope& c1, const StatePolytope& c2) {
  c1.check();
  c2.check();
  StatePolytope out{{c1.split.total(), c2.split.total()}, {}};
  for (const auto& a : c1.vertices)
    for (const auto& b : c2.vertices) out.vertices.push_back(product_state(a, b));
  return reduce(out);
}

StatePolytope lambda_tau(const StatePolytope& c) {
  auto [ca, cb] = tau(c);
  return lambda_map(ca, cb);
}

double css_distance(const StatePolytope& c) {
  return polytope_distance(lambda_tau(c).coordinates(), c.coordinates());
}

bool is_css(const StatePolytope& c, double tol) { return css_distance(c) <= tol; }

// ---------------------------------------------------------------------------
// Decompositions

void Decomposition::check() const {
  if (terms.empty()) throw DomainError("decomposition has no terms");
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.p < 0.0) throw DomainError("decomposition weight " + std::to_string(t.p) + " is negative");
    if (t.a.dim() != terms.front().a.dim() || t.b.dim() != terms.front().b.dim()) {
      throw DomainError("decomposition factors have inconsistent dimensions");
    }
    total += t.p;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw DomainError("decomposition weights sum to " + std::to_string(total));
  }
}

DensityMatrix Decomposition::state() const {
  check();
  const DimSplit split{terms.front().a.dim(), terms.front().b.dim()};
  ComplexMatrix sum(split.total(), split.total());
  for (const auto& t : terms) sum += kron(t.a.mat(), t.b.mat()) * t.p;
  return DensityMatrix::trusted(std::move(sum), split);
}

StatePolytope css_from_decomposition(const Decomposition& d) {
  d.check();
  StatePolytope out{{d.terms.front().a.dim(), d.terms.front().b.dim()}, {}};
  for (const auto& ti : d.terms)
    for (const auto& tj : d.terms) out.vertices.push_back(product_state(ti.a, tj.b));
  return reduce(out);
}

namespace {

DensityMatrix qubit_from_bloch(double x, double y, double z) {
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + z);
  m(1, 1) = 0.5 * (1.0 - z);
  m(0, 1) = Complex(0.5 * x, -0.5 * y);
  m(1, 0) = Complex(0.5 * x, 0.5 * y);
  return DensityMatrix::single(std::move(m));
}

}  // namespace

Decomposition werner_quarter_decomposition() {
  const double s = 1.0 / std::sqrt(3.0);
  const std::array<std::array<double, 3>, 4> tetra = {{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}}};
  Decomposition d;
  for (const auto& t : tetra) {
    d.terms.push_back({0.25, qubit_from_bloch(t[0], t[1], t[2]),
                       qubit_from_bloch(0.75 * t[0], -0.75 * t[1], 0.75 * t[2])});
  }
  return d;
}

// ---------------------------------------------------------------------------
// Verdicts and measures

bool is_product(const DensityMatrix& rho, double tol) {
  return norm(pi_map(rho).mat() - rho.mat(), NormKind::Frobenius) <= tol;
}

double ppt_min_eigenvalue(const DensityMatrix& rho) {
  return hermitian_eigenvalues(partial_transpose(rho.mat(), rho.split(), Subsystem::B)).front();
}

PptVerdict ppt_verdict(const DensityMatrix& rho) {
  if (ppt_min_eigenvalue(rho) < -kPptTol) return PptVerdict::Entangled;
  const auto [a, b] = rho.split();
  const bool conclusive = a == 1 || b == 1 || (a == 2 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 2);
  return conclusive ? PptVerdict::Separable : PptVerdict::Inconclusive;
}

const char* to_string(PptVerdict v) {
  switch (v) {
    case PptVerdict::Separable: return "separable";
    case PptVerdict::Entangled: return "entangled";
    case PptVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(FKind f) {
  switch (f) {
    case FKind::Identity: return "identity";
    case FKind::Abs: return "abs";
    case FKind::Square: return "square";
  }
  return "identity";
}

const char* to_string(NormKind n) {
  switch (n) {
    case NormKind::Frobenius: return "frobenius";
    case NormKind::Trace: return "trace";
    case NormKind::MaxAbs: return "max_abs";
  }
  return "frobenius";
}

std::optional<FKind> parse_f_kind(const std::string& s) {
  if (s == "identity") return FKind::Identity;
  if (s == "abs") return FKind::Abs;
  if (s == "square") return FKind::Square;
  return std::nullopt;
}

std::optional<NormKind> parse_norm_kind(const std::string& s) {
  if (s == "frobenius") return NormKind::Frobenius;
  if (s == "trace") return NormKind::Trace;
  if (s == "max_abs") return NormKind::MaxAbs;
  return std::nullopt;
}

namespace {

double apply_f_and_norm(ComplexMatrix delta, const MeasureConfig& cfg) {
  switch (cfg.f_kind) {
    case FKind::Identity: break;
    case FKind::Abs:
      for (auto& v : delta.entries()) v = std::abs(v);
      break;
    case FKind::Square: delta = delta.adjoint() * delta; break;
  }
  return norm(delta, cfg.norm_kind);
}

}  // namespace

double g_measure(const DensityMatrix& rho, const MeasureConfig& cfg) {
  return apply_f_and_norm(pi_map(rho).mat() - rho.mat(), cfg);
}

bool psi_preimage_member(const DensityMatrix& sigma, const StatePolytope& c1, const StatePolytope& c2,
                         double tol) {
  const Marginals m = marginals(sigma);
  return contains(c1, m.a, tol) && contains(c2, m.b, tol);
}

// ---------------------------------------------------------------------------
// GPT flavor

namespace {

BilinearState as_bilinear(const RealVector& coords, const ComModel& a, const ComModel& b) {
  return {a.ambient_dim(), b.ambient_dim(), coords};
}

void require_composite(const VPolytope& c, const ComModel& a, const ComModel& b) {
  c.check();
  if (c.ambient_dim != a.ambient_dim() * b.ambient_dim()) {
    throw ShapeError("composite polytope dimension " + std::to_string(c.ambient_dim) + " does not match models (" +
                     std::to_string(a.ambient_dim()) + " x " + std::to_string(b.ambient_dim()) + ")");
  }
}

}  // namespace

std::pair<VPolytope, VPolytope> gpt_tau(const VPolytope& c, const ComModel& a, const ComModel& b) {
  require_composite(c, a, b);
  VPolytope ca{a.ambient_dim(), {}};
  VPolytope cb{b.ambient_dim(), {}};
  for (const auto& v : c.vertices) {
    GptMarginals m = gpt_marginals(as_bilinear(v, a, b), a, b);
    ca.vertices.push_back(std::move(m.a));
    cb.vertices.push_back(std::move(m.b));
  }
  return {reduce_vertices(ca), reduce_vertices(cb)};
}

VPolytope gpt_lambda(const VPolytope& c1, const VPolytope& c2) {
  c1.check();
  c2.check();
  VPolytope out{c1.ambient_dim * c2.ambient_dim, {}};
  for (const auto& va : c1.vertices)
    for (const auto& vb : c2.vertices) out.vertices.push_back(outer_flat(va, vb));
  return reduce_vertices(out);
}

VPolytope gpt_lambda_tau(const VPolytope& c, const ComModel& a, const ComModel& b) {
  auto [ca, cb] = gpt_tau(c, a, b);
  return gpt_lambda(ca, cb);
}

bool gpt_is_css(const VPolytope& c, const ComModel& a, const ComModel& b, double tol) {
  return polytope_equal(gpt_lambda_tau(c, a, b), c, tol);
}

GptSeparability gpt_separability(const BilinearState& phi, const ComModel& a, const ComModel& b, double tol) {
  if (phi.dim_a != a.ambient_dim() || phi.dim_b != b.ambient_dim()) {
    throw ShapeError("bilinear state dimensions do not match the models");
  }
  if (!max_tensor_membership(phi, max_tensor_constraints(a, b), 1e-9)) {
    throw DomainError("gpt_separable: state is outside the maximal tensor product");
  }
  const VPolytope omega_min = min_tensor(a, b);
  GptSeparability out;
  out.hull_distance = hull_distance(phi.coords, omega_min).distance;
  out.separable = out.hull_distance <= tol;
  if (!out.separable) out.certificate = separation_certificate(phi.coords, omega_min);
  return out;
}

bool gpt_separable(const BilinearState& phi, const ComModel& a, const ComModel& b, double tol) {
  return gpt_separability(phi, a, b, tol).separable;
}

double gpt_g_measure(const BilinearState& phi, const ComModel& a, const ComModel& b, const MeasureConfig& cfg) {
  const GptMarginals m = gpt_marginals(phi, a, b);
  const RealVector prod = outer_flat(m.a, m.b);
  ComplexMatrix delta(phi.dim_a, phi.dim_b);
  for (std::size_t i = 0; i < prod.size(); ++i) delta.entries()[i] = prod[i] - phi.coords[i];
  return apply_f_and_norm(std::move(delta), cfg);
}

void GptDecomposition::check() const {
  if (terms.empty()) throw DomainError("decomposition has no terms");
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.p < 0.0) throw DomainError("decomposition weight " + std::to_string(t.p) + " is negative");
    if (t.a.size() != terms.front().a.size() || t.b.size() != terms.front().b.size()) {
      throw DomainError("decomposition factors have inconsistent dimensions");
    }
    total += t.p;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw DomainError("decomposition weights sum to " + std::to_string(total));
  }
}

BilinearState GptDecomposition::state() const {
  check();
  BilinearState out{terms.front().a.size(), terms.front().b.size(), {}};
  out.coords.assign(out.dim_a * out.dim_b, 0.0);
  for (const auto& t : terms) {
    const RealVector prod = outer_flat(t.a, t.b);
    for (std::size_t i = 0; i < prod.size(); ++i) out.coords[i] += t.p * prod[i];
  }
  return out;
}

VPolytope gpt_css_from_decomposition(const GptDecomposition& d) {
  d.check();
  VPolytope out{d.terms.front().a.size() * d.terms.front().b.size(), {}};
  for (const auto& ti : d.terms)
    for (const auto& tj : d.terms) out.vertices.push_back(outer_flat(ti.a, tj.b));
  return reduce_vertices(out);
}

bool classical_invariance_check(std::size_t n_a, std::size_t n_b) {
  if (n_a < 2 || n_b < 2) throw DomainError("classical_invariance_check: factors need >= 2 outcomes");
  if (n_a * n_b > kClassicalCompositeCap) {
    throw UnsupportedError("classical composite with " + std::to_string(n_a * n_b) + " outcomes exceeds the cap of " +
                           std::to_string(kClassicalCompositeCap));
  }
  const ComModel a = classical_model(n_a);
  const ComModel b = classical_model(n_b);
  // The joint outcome simplex; its vertex e_(i,j) sits at flattened index i*n_b + j.
  VPolytope omega{n_a * n_b, {}};
  for (std::size_t k = 0; k < n_a * n_b; ++k) {
    RealVector v(n_a * n_b, 0.0);
    v[k] = 1.0;
    omega.vertices.push_back(std::move(v));
  }
  return gpt_is_css(omega, a, b);
}

bool max_tensor_invariance_check(const ComModel& a, const ComModel& b) {
  const VPolytope omega_max = enumerate_max_vertices(max_tensor_constraints(a, b));
  return gpt_is_css(omega_max, a, b);
}

// ---------------------------------------------------------------------------
// Down-maps and entanglement structure

bool satisfies_product_condition(const MorphismSpec& spec, std::uint64_t seed, std::size_t samples, double tol) {
  if (spec.kind == MorphismKind::GptMarginal) {
    if (!spec.model_a || !spec.model_b) throw DomainError("gpt morphism needs both models");
    const ComModel& a = *spec.model_a;
    const ComModel& b = *spec.model_b;
    for (const auto& va : a.vertices())
      for (const auto& vb : b.vertices()) {
        const GptMarginals m = gpt_marginals(BilinearState::product(va, vb), a, b);
        if (max_abs_diff(m.a, va) > tol || max_abs_diff(m.b, vb) > tol) return false;
      }
    return true;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t rank_a = 1 + i % spec.split.dim_a;
    const std::size_t rank_b = 1 + i % spec.split.dim_b;
    const DensityMatrix a = random_mixed({spec.split.dim_a, 1}, rank_a, rng);
    const DensityMatrix b = random_mixed({spec.split.dim_b, 1}, rank_b, rng);
    const Marginals m = marginals(product_state(a, b));
    if (norm(m.a.mat() - a.mat(), NormKind::MaxAbs) > tol || norm(m.b.mat() - b.mat(), NormKind::MaxAbs) > tol) {
      return false;
    }
  }
  return true;
}

EntanglementModelReport quantum_entanglement_model() {
  // The separable set is the largest invariant; the Bell state lies outside it.
  const DensityMatrix bell = bell_state(BellKind::PhiPlus);
  EntanglementModelReport r;
  r.backend = "quantum 2x2";
  r.largest_invariant_known = true;
  r.strict = ppt_verdict(bell) == PptVerdict::Entangled && !is_css(singleton(bell));
  r.witness = r.strict ? "bell:phi+" : "";
  return r;
}

EntanglementModelReport classical_entanglement_model(std::size_t n_a, std::size_t n_b) {
  EntanglementModelReport r;
  r.backend = "classical " + std::to_string(n_a) + "x" + std::to_string(n_b);
  r.largest_invariant_known = classical_invariance_check(n_a, n_b);
  r.strict = false;
  return r;
}

EntanglementModelReport gbit_entanglement_model() {
  const ComModel g = gbit_model();
  const VPolytope omega_min = min_tensor(g, g);
  EntanglementModelReport r;
  r.backend = "gbit x gbit (maximal tensor product)";
  r.largest_invariant_known = gpt_is_css(omega_min, g, g);
  r.strict = !gpt_separable(pr_box(), g, g, 1e-9);
  r.witness = r.strict ? "prbox" : "";
  return r;
}

}  // namespace entgeo
