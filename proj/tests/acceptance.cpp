// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "entgeo/comgeo.hpp"
#include "entgeo/invsep.hpp"
#include "entgeo/qstate.hpp"

using namespace entgeo;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

DensityMatrix random_qubit(Rng& rng) { return random_mixed({2, 1}, 1 + rng.uniform_int(0, 1), rng); }

DensityMatrix random_two_qubit(Rng& rng) { return random_mixed({2, 2}, 1 + rng.uniform_int(0, 3), rng); }

double marginal_purity_min(const DensityMatrix& rho) {
  const auto m = marginals(rho);
  return std::min(purity(m.a), purity(m.b));
}

double marginal_purity_max(const DensityMatrix& rho) {
  const auto m = marginals(rho);
  return std::max(purity(m.a), purity(m.b));
}

Outcome pi_idempotence() {
  Rng rng = Rng(kSeed).split(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto rho = random_mixed({2, 2}, 1 + i % 4, rng);
    const auto once = pi_map(rho);
    worst = std::max(worst, norm(pi_map(once).mat() - once.mat(), NormKind::Frobenius));
  }
  return {worst <= 1e-12, "max ||Pi^2 - Pi||_F = " + fmt("%.3g", worst)};
}

Outcome product_fixed_points() {
  Rng rng = Rng(kSeed).split(2);
  double worst_product = 0.0;
  for (int i = 0; i < 500; ++i)
    worst_product = std::max(worst_product, g_measure(product_state(random_qubit(rng), random_qubit(rng))));

  double least_entangled = INFINITY;
  int found = 0, drawn = 0;
  while (found < 500 && drawn < 100000) {
    ++drawn;
    const auto rho = random_two_qubit(rng);
    if (ppt_verdict(rho) != PptVerdict::Entangled) continue;
    ++found;
    least_entangled = std::min(least_entangled, g_measure(rho));
  }
  const bool ok = worst_product <= 1e-12 && found == 500 && least_entangled > 1e-6;
  return {ok, "products max " + fmt("%.3g", worst_product) + ", entangled min " + fmt("%.3g", least_entangled) +
                  " over " + std::to_string(found)};
}

Outcome bell_measure() {
  const auto bell = bell_state(BellKind::PhiPlus).mat();
  double sq = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) sq += std::norm((i == j ? 0.25 : 0.0) - bell(i, j));
  const double direct = std::sqrt(sq);
  const double value = g_measure(bell_state(BellKind::PhiPlus), {FKind::Identity, NormKind::Frobenius});
  const bool ok = std::abs(value - std::sqrt(3.0) / 2) <= 1e-9 && std::abs(value - direct) <= 1e-9;
  return {ok, "g = " + fmt("%.17g", value) + ", direct = " + fmt("%.17g", direct)};
}

Outcome werner_threshold() {
  double worst = 0.0;
  int sign_changes = 0;
  double lo = -1, hi = -1;
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const double e = ppt_min_eigenvalue(werner_state(p));
    worst = std::max(worst, std::abs(e - (1 - 3 * p) / 4));
    if (i > 0 && (prev > 0) != (e > 0)) {
      ++sign_changes;
      lo = (i - 1) / 100.0;
      hi = p;
    }
    prev = e;
  }
  const bool ok = worst <= 1e-9 && sign_changes == 1 && lo < 1.0 / 3 && 1.0 / 3 < hi;
  return {ok, "max dev " + fmt("%.3g", worst) + ", sign change in [" + fmt("%.2f", lo) + ", " + fmt("%.2f", hi) + "]"};
}

// Pure states with both kinds of marginal: exact products of local pure
// states and Haar-distributed states.
std::vector<DensityMatrix> pure_sample(Rng& rng, std::size_t count, DimSplit split) {
  std::vector<DensityMatrix> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 4 == 0) {
      const auto a = density_from_pure(random_pure({split.dim_a, 1}, rng));
      const auto b = density_from_pure(random_pure({split.dim_b, 1}, rng));
      out.push_back(product_state(a, b));
    } else {
      out.push_back(density_from_pure(random_pure(split, rng)));
    }
  }
  return out;
}

Outcome pure_state_criterion() {
  Rng rng = Rng(kSeed).split(5);
  int disagreements = 0, products = 0;
  for (const auto& rho : pure_sample(rng, 500, {2, 2})) {
    const bool product = marginal_purity_min(rho) >= 1 - 1e-10;
    products += product ? 1 : 0;
    if (is_css(singleton(rho)) != product) ++disagreements;
  }
  return {disagreements == 0,
          std::to_string(disagreements) + " disagreements (" + std::to_string(products) + " product states)"};
}

Outcome lambda_tau_idempotence() {
  Rng rng = Rng(kSeed).split(6);
  int failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    StatePolytope c{{2, 2}, {}};
    const std::size_t n = 2 + rng.uniform_int(0, 2);
    for (std::size_t k = 0; k < n; ++k) c.vertices.push_back(random_two_qubit(rng));
    const auto once = lambda_tau(c);
    const auto twice = lambda_tau(once);
    worst = std::max(worst, polytope_distance(once.coordinates(), twice.coordinates()));
    if (!polytope_equal(twice, once, 1e-8)) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " failures, max distance " + fmt("%.3g", worst)};
}

Outcome witness_soundness() {
  Rng rng = Rng(kSeed).split(7);
  int failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t db = 2 + i % 2;
    const std::size_t terms = 1 + rng.uniform_int(0, 3);
    Decomposition d;
    std::vector<double> w(terms);
    double total = 0.0;
    for (auto& x : w) total += (x = 0.05 + rng.uniform());
    for (std::size_t k = 0; k < terms; ++k) {
      d.terms.push_back({w[k] / total, random_mixed({2, 1}, 1 + rng.uniform_int(0, 1), rng),
                         random_mixed({db, 1}, 1 + rng.uniform_int(0, db - 1), rng)});
    }
    const auto s = css_from_decomposition(d);
    const double residual = hull_residual(d.state(), s);
    worst = std::max(worst, residual);
    if (!is_css(s) || residual > 1e-8) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " failures, max residual " + fmt("%.3g", worst)};
}

Outcome classical_collapse() {
  bool ok = true;
  std::string detail;
  for (auto [na, nb] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
    const auto a = classical_model(na);
    const auto b = classical_model(nb);
    const bool equal = polytope_equal(min_tensor(a, b), enumerate_max_vertices(max_tensor_constraints(a, b)), 1e-9);
    const bool invariant = classical_invariance_check(na, nb);
    ok = ok && equal && invariant;
    detail += std::to_string(na) + "x" + std::to_string(nb) + ": equal=" + (equal ? "yes" : "no") +
              " invariant=" + (invariant ? "yes" : "no") + "; ";
  }
  return {ok, detail.substr(0, detail.size() - 2)};
}

Outcome box_world() {
  const auto g = gbit_model();
  const auto phi = pr_box();
  const bool in_max = max_tensor_membership(phi, max_tensor_constraints(g, g), 1e-9);
  const auto sep = gpt_separability(phi, g, g, 1e-9);
  bool certified = false;
  double margin = 0.0;
  if (sep.certificate) {
    margin = sep.certificate->margin;
    certified = margin > 1e-9 && dot(sep.certificate->normal, phi.coords) >= sep.certificate->offset + margin - 1e-9;
    for (const auto& v : min_tensor(g, g).vertices)
      certified = certified && dot(sep.certificate->normal, v) <= sep.certificate->offset + 1e-9;
  }
  const bool ok = in_max && !sep.separable && !gpt_separable(phi, g, g, 1e-9) && certified;
  return {ok, std::string("in max=") + (in_max ? "yes" : "no") + ", separable=" + (sep.separable ? "yes" : "no") +
                  ", certificate margin " + fmt("%.6g", margin)};
}

Outcome local_unitary_invariance() {
  Rng rng = Rng(kSeed).split(10);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto rho = random_two_qubit(rng);
    const auto uv = kron(random_unitary(2, rng), random_unitary(2, rng));
    const auto moved = conjugate(rho, uv);
    for (auto n : {NormKind::Frobenius, NormKind::Trace})
      worst = std::max(worst, std::abs(g_measure(rho, {FKind::Identity, n}) - g_measure(moved, {FKind::Identity, n})));
  }
  return {worst <= 1e-9, "max |dg| = " + fmt("%.3g", worst)};
}

Outcome marginal_mixedness() {
  Rng rng = Rng(kSeed).split(11);
  int entangled = 0, violations = 0;
  double highest = 0.0;
  for (DimSplit split : {DimSplit{2, 2}, DimSplit{2, 3}}) {
    for (const auto& rho : pure_sample(rng, 500, split)) {
      if (ppt_verdict(rho) != PptVerdict::Entangled) continue;
      ++entangled;
      const double p = marginal_purity_max(rho);
      highest = std::max(highest, p);
      if (p > 1 - 1e-8) ++violations;
    }
  }
  return {violations == 0 && entangled > 0, std::to_string(entangled) + " entangled, max marginal purity " +
                                                fmt("%.10f", highest)};
}

Outcome cli_determinism() {
  const std::vector<std::string> args{"sweep", "werner", "--start", "0", "--stop", "1", "--steps", "101"};
  std::ostringstream a, b, err;
  const int ca = cli::run(args, a, err);
  const int cb = cli::run(args, b, err);
  std::ifstream golden_file(ENTGEO_GOLDEN_SWEEP, std::ios::binary);
  std::stringstream golden;
  golden << golden_file.rdbuf();
  const bool identical = a.str() == b.str();
  const bool matches = golden_file.good() && golden.str() == a.str();
  return {ca == 0 && cb == 0 && identical && matches,
          std::string("runs identical=") + (identical ? "yes" : "no") + ", golden match=" + (matches ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Pi idempotence on 1000 random two-qubit states", pi_idempotence},
      {"product states are the fixed points of the measure", product_fixed_points},
      {"Bell-state measure equals sqrt(3)/2", bell_measure},
      {"Werner partial-transpose eigenvalue and threshold", werner_threshold},
      {"pure-state invariance iff product", pure_state_criterion},
      {"Lambda-tau idempotence on random polytopes", lambda_tau_idempotence},
      {"decomposition witnesses are invariant and contain the state", witness_soundness},
      {"classical composites: min equals max, invariance holds", classical_collapse},
      {"box world: PR box in max, outside min, certified", box_world},
      {"local-unitary invariance of the measure", local_unitary_invariance},
      {"entangled pure states have mixed marginals", marginal_mixedness},
      {"CLI sweep determinism and golden file", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s [%2zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
