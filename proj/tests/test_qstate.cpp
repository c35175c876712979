#include <doctest.h>

#include <cmath>
#include <set>

#include "entgeo/errors.hpp"
#include "entgeo/qstate.hpp"
#include "oracles.hpp"

using namespace entgeo;

TEST_CASE("rng is reproducible and streams are independent of parent draws") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng parent(42);
  const auto child_before = parent.split(3).next_u64();
  for (int i = 0; i < 10; ++i) parent.uniform();
  CHECK(parent.split(3).next_u64() == child_before);
  CHECK(parent.split(3).next_u64() != parent.split(4).next_u64());
  CHECK(Rng(1).next_u64() != Rng(2).next_u64());
}

TEST_CASE("rng uniform and normal moments") {
  Rng rng(9);
  const int n = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sn / n) < 0.01);
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.01));

  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.uniform_int(3, 7);
    REQUIRE(v >= 3);
    REQUIRE(v <= 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("validate reports every violated invariant") {
  CHECK(validate(ComplexMatrix::identity(4) * 0.25, {2, 2}).ok());

  auto r = validate(ComplexMatrix::diagonal({1.5, -0.5}), {2, 1});
  CHECK_FALSE(r.ok());
  CHECK(r.min_eigenvalue == doctest::Approx(-0.5));
  CHECK(r.trace_real_deviation < 1e-15);

  r = validate(ComplexMatrix::identity(2), {2, 1});
  CHECK_FALSE(r.ok());
  CHECK(r.trace_real_deviation == doctest::Approx(1.0));

  ComplexMatrix nh = ComplexMatrix::identity(2) * 0.5;
  nh(0, 1) = 0.1;
  r = validate(nh, {2, 1});
  CHECK_FALSE(r.ok());
  CHECK(r.hermiticity_deviation == doctest::Approx(0.1));
  CHECK_FALSE(r.describe().empty());

  CHECK_FALSE(validate(ComplexMatrix::identity(4) * 0.25, {2, 3}).shape_ok);
}

TEST_CASE("density matrix construction rejects invalid input with typed errors") {
  CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix::diagonal({1.5, -0.5}), {2, 1}), DomainError);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix::identity(4) * 0.25, {2, 3}), ShapeError);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix(2, 3), {2, 3}), ShapeError);
  CHECK_NOTHROW(DensityMatrix::from_matrix(ComplexMatrix::identity(4) * 0.25, {2, 2}));

  ComplexMatrix within = ComplexMatrix::identity(2) * 0.5;
  within(0, 0) += 5e-11;
  CHECK_NOTHROW(DensityMatrix::single(within));
  within(0, 0) += 1e-9;
  CHECK_THROWS_AS(DensityMatrix::single(within), DomainError);
}

TEST_CASE("pure states: normalization and outer product") {
  PureState bad{{1.0, 1.0}, {2, 1}};
  CHECK_THROWS_AS(bad.check(), DomainError);
  CHECK_THROWS_AS(density_from_pure(bad), DomainError);
  PureState wrong_len{{1.0}, {2, 1}};
  CHECK_THROWS(wrong_len.check());

  const auto psi = bell_pure(BellKind::PsiMinus);
  const auto rho = density_from_pure(psi);
  CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rho.mat()(1, 2).real() == doctest::Approx(-0.5));
  CHECK(rho.mat()(1, 1).real() == doctest::Approx(0.5));
}

TEST_CASE("Bell states are orthonormal with maximally mixed marginals") {
  const BellKind kinds[] = {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus};
  for (auto k : kinds) {
    for (auto l : kinds) {
      const auto a = bell_pure(k).amplitudes;
      const auto b = bell_pure(l).amplitudes;
      Complex ip = 0.0;
      for (std::size_t i = 0; i < 4; ++i) ip += std::conj(a[i]) * b[i];
      CHECK(std::abs(ip - (k == l ? 1.0 : 0.0)) <= 1e-15);
    }
    const auto m = marginals(bell_state(k));
    CHECK(oracle::max_entry_diff(m.a.mat(), ComplexMatrix::identity(2) * 0.5) <= 1e-15);
    CHECK(oracle::max_entry_diff(m.b.mat(), ComplexMatrix::identity(2) * 0.5) <= 1e-15);
    CHECK(oracle::max_entry_diff(pi_map(bell_state(k)).mat(), ComplexMatrix::identity(4) * 0.25) <= 1e-15);
  }
}

TEST_CASE("pi_map is idempotent and fixes products") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_mixed({2, 3}, 1 + t % 6, rng);
    const auto once = pi_map(rho);
    CHECK(oracle::max_entry_diff(pi_map(once).mat(), once.mat()) <= 1e-14);
    const auto prod = product_state(random_mixed({2, 1}, 2, rng), random_mixed({3, 1}, 3, rng));
    CHECK(oracle::max_entry_diff(pi_map(prod).mat(), prod.mat()) <= 1e-14);
  }
}

TEST_CASE("Werner family interpolation and domain") {
  CHECK(oracle::max_entry_diff(werner_state(0.0).mat(), ComplexMatrix::identity(4) * 0.25) <= 1e-16);
  CHECK(oracle::max_entry_diff(werner_state(1.0).mat(), bell_state(BellKind::PhiPlus).mat()) <= 1e-16);
  CHECK_THROWS_AS(werner_state(-0.01), DomainError);
  CHECK_THROWS_AS(werner_state(1.01), DomainError);
  CHECK_THROWS_AS(werner_state(std::nan("")), DomainError);
  // Purity of p Phi + (1-p) I/4 is (1 + 3p^2) / 4.
  for (double p : {0.0, 0.2, 0.5, 0.9}) CHECK(purity(werner_state(p)) == doctest::Approx((1 + 3 * p * p) / 4));
}

TEST_CASE("random ensembles are valid and reproducible") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const DimSplit split{seed % 2 ? 2u : 3u, 2};
    const auto psi = random_pure(split, seed);
    CHECK_NOTHROW(psi.check());
    for (std::size_t rank = 1; rank <= split.total(); ++rank) {
      const auto rho = random_mixed(split, rank, seed * 31 + rank);
      CHECK(validate(rho.mat(), split).ok());
      // Rank-r Ginibre state has exactly r nonzero eigenvalues.
      const auto ev = hermitian_eigenvalues(rho.mat());
      std::size_t nonzero = 0;
      for (double v : ev) nonzero += v > 1e-10 ? 1 : 0;
      CHECK(nonzero == rank);
    }
  }
  CHECK(random_mixed({2, 2}, 3, 77).mat() == random_mixed({2, 2}, 3, 77).mat());
  CHECK(random_pure({2, 2}, 77).amplitudes == random_pure({2, 2}, 77).amplitudes);
  CHECK_FALSE(random_mixed({2, 2}, 3, 77).mat() == random_mixed({2, 2}, 3, 78).mat());
  CHECK_THROWS(random_mixed({2, 2}, 0, 1));
}

TEST_CASE("random unitaries are unitary with unit determinant modulus") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const auto u = random_unitary(n, seed);
    CHECK(norm(u.adjoint() * u - ComplexMatrix::identity(n), NormKind::Frobenius) <= 1e-12);
    CHECK(oracle::abs_determinant(u) == doctest::Approx(1.0).epsilon(1e-12));
    double det2 = 1.0;
    for (double v : hermitian_eigenvalues(u.adjoint() * u)) det2 *= v;
    CHECK(det2 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("conjugation preserves spectrum and local unitaries preserve marginal spectra") {
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    const auto rho = random_mixed({2, 2}, 3, rng);
    const auto u = random_unitary(4, rng);
    const auto e1 = hermitian_eigenvalues(rho.mat());
    const auto e2 = hermitian_eigenvalues(conjugate(rho, u).mat());
    for (std::size_t i = 0; i < 4; ++i) CHECK(e1[i] == doctest::Approx(e2[i]).epsilon(1e-10));

    const auto local = kron(random_unitary(2, rng), random_unitary(2, rng));
    const auto ma = hermitian_eigenvalues(marginals(rho).a.mat());
    const auto mb = hermitian_eigenvalues(marginals(conjugate(rho, local)).a.mat());
    for (std::size_t i = 0; i < 2; ++i) CHECK(ma[i] == doctest::Approx(mb[i]).epsilon(1e-10));
  }
  CHECK_THROWS_AS(conjugate(werner_state(0.5), ComplexMatrix::identity(3)), ShapeError);
}

TEST_CASE("density matrices of basis and Bell vectors") {
  const auto basis = density_from_pure({{1.0, 0.0, 0.0, 0.0}, {2, 2}});
  CHECK(basis.mat() == ComplexMatrix::diagonal({1, 0, 0, 0}));

  const auto bell = bell_state(BellKind::PhiPlus).mat();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
      CHECK(std::abs(bell(i, j) - (corner ? 0.5 : 0.0)) <= 1e-15);
    }
  }
  const double r = 1 / std::sqrt(2.0);
  const auto phi = bell_pure(BellKind::PhiPlus).amplitudes;
  const auto psi = bell_pure(BellKind::PsiMinus).amplitudes;
  const std::vector<Complex> phi_expected{r, 0.0, 0.0, r};
  const std::vector<Complex> psi_expected{0.0, r, -r, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(phi[i] - phi_expected[i]) <= 1e-15);
    CHECK(std::abs(psi[i] - psi_expected[i]) <= 1e-15);
  }

  for (auto k : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus}) {
    CHECK(purity(bell_state(k)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(purity(marginals(bell_state(k)).a) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(purity(marginals(bell_state(k)).b) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("purity values") {
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    CHECK(std::abs(purity(density_from_pure(random_pure({2, 3}, rng))) - 1.0) <= 1e-12);
    CHECK(std::abs(purity(random_mixed({2, 2}, 1, rng)) - 1.0) <= 1e-10);
  }
  CHECK(purity(werner_state(0.0)) == doctest::Approx(0.25));

  // Schmidt form cos(a)|00> + sin(a)|11>: marginal purity cos^4 + sin^4.
  for (int t = 0; t < 20; ++t) {
    const double a = 0.05 + 1.4 * rng.uniform() / 2;
    const auto rho = density_from_pure({{std::cos(a), 0.0, 0.0, std::sin(a)}, {2, 2}});
    const auto u = kron(random_unitary(2, rng), random_unitary(2, rng));
    const double expected = std::pow(std::cos(a), 4) + std::pow(std::sin(a), 4);
    const double got = purity(marginals(conjugate(rho, u)).a);
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    CHECK(got < 1 - 1e-6);
  }
}

TEST_CASE("marginals are dual to local observables") {
  Rng rng(52);
  for (int s = 0; s < 5; ++s) {
    const auto rho = random_mixed({2, 2}, 1 + s % 4, rng);
    const auto m = marginals(rho);
    for (int t = 0; t < 20; ++t) {
      const auto x = oracle::random_hermitian(2, rng);
      const auto y = oracle::random_hermitian(2, rng);
      CHECK(std::abs((rho.mat() * kron(x, ComplexMatrix::identity(2))).trace() - (m.a.mat() * x).trace()) <= 1e-10);
      CHECK(std::abs((rho.mat() * kron(ComplexMatrix::identity(2), y)).trace() - (m.b.mat() * y).trace()) <= 1e-10);
    }
  }
}

TEST_CASE("pi_map on product and Bell states") {
  Rng rng(53);
  const auto r1 = random_mixed({2, 1}, 2, rng);
  const auto r2 = random_mixed({2, 1}, 1, rng);
  const auto m = marginals(product_state(r1, r2));
  CHECK(oracle::max_entry_diff(m.a.mat(), r1.mat()) <= 1e-15);
  CHECK(oracle::max_entry_diff(m.b.mat(), r2.mat()) <= 1e-15);
  CHECK(oracle::max_entry_diff(pi_map(bell_state(BellKind::PhiPlus)).mat(), ComplexMatrix::identity(4) * 0.25) <=
        1e-15);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto once = pi_map(random_mixed({2, 2}, 1 + t % 4, rng));
    worst = std::max(worst, norm(pi_map(once).mat() - once.mat(), NormKind::Frobenius));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Werner state at the PPT threshold") {
  const auto pt = partial_transpose(werner_state(1.0 / 3).mat(), {2, 2}, Subsystem::B);
  CHECK(std::abs(hermitian_eigenvalues(pt).front()) <= 1e-9);
  CHECK(std::abs(oracle::min_eigenvalue_bisection(pt)) <= 1e-9);
}
