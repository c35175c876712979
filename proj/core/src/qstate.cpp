#include "entgeo/qstate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "entgeo/errors.hpp"

namespace entgeo {

bool ValidationReport::ok() const {
  return shape_ok && hermiticity_deviation <= kStateTol && min_eigenvalue >= -kStateTol &&
         trace_real_deviation <= kStateTol && trace_imag <= 1e-12;
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  os.precision(3);
  if (!shape_ok) return "matrix shape does not match the split";
  os << "hermiticity deviation " << hermiticity_deviation << ", min eigenvalue " << min_eigenvalue
     << ", |Re tr - 1| " << trace_real_deviation << ", |Im tr| " << trace_imag;
  return os.str();
}

ValidationReport validate(const ComplexMatrix& m, DimSplit split) {
  ValidationReport r;
  if (!m.is_square() || split.dim_a < 1 || split.dim_b < 1 || m.rows() != split.total()) {
    r.shape_ok = false;
    return r;
  }
  r.hermiticity_deviation = hermiticity_deviation(m);
  const Complex tr = m.trace();
  r.trace_real_deviation = std::abs(tr.real() - 1.0);
  r.trace_imag = std::abs(tr.imag());
  if (r.hermiticity_deviation <= kHermitianTol) {
    r.min_eigenvalue = hermitian_eigenvalues(m).front();
  } else {
    // Eigenvalues are meaningless without Hermiticity; flag as negative.
    r.min_eigenvalue = -r.hermiticity_deviation;
  }
  return r;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, DimSplit split) {
  const ValidationReport r = validate(m, split);
  if (!r.shape_ok) {
    throw ShapeError("density matrix of shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     " does not match split " + std::to_string(split.dim_a) + "x" + std::to_string(split.dim_b));
  }
  if (!r.ok()) throw DomainError("invalid density matrix: " + r.describe());
  return DensityMatrix(std::move(m), split);
}

void PureState::check() const {
  if (amplitudes.size() != split.total()) {
    throw ShapeError("pure state has " + std::to_string(amplitudes.size()) +
                      " amplitudes, split requires " + std::to_string(split.total()));
  }
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > kPureNormTol) {
    throw DomainError("pure state is not normalized: |psi|^2 = " + std::to_string(n2));
  }
}

DensityMatrix density_from_pure(const PureState& psi) {
  psi.check();
  const auto ket = ComplexMatrix::column(psi.amplitudes);
  return DensityMatrix::trusted(ket * ket.adjoint(), psi.split);
}

Marginals marginals(const DensityMatrix& rho) {
  const DimSplit s = rho.split();
  return {DensityMatrix::trusted(partial_trace(rho.mat(), s, Subsystem::B), {s.dim_a, 1}),
          DensityMatrix::trusted(partial_trace(rho.mat(), s, Subsystem::A), {s.dim_b, 1})};
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.mat(), b.mat()), {a.dim(), b.dim()});
}

DensityMatrix pi_map(const DensityMatrix& rho) {
  const Marginals m = marginals(rho);
  return DensityMatrix::trusted(kron(m.a.mat(), m.b.mat()), rho.split());
}

PureState bell_pure(BellKind kind) {
  const double h = std::numbers::sqrt2 / 2.0;
  std::vector<Complex> amp(4);
  switch (kind) {
    case BellKind::PhiPlus: amp = {h, 0.0, 0.0, h}; break;
    case BellKind::PhiMinus: amp = {h, 0.0, 0.0, -h}; break;
    case BellKind::PsiPlus: amp = {0.0, h, h, 0.0}; break;
    case BellKind::PsiMinus: amp = {0.0, h, -h, 0.0}; break;
  }
  return {std::move(amp), {2, 2}};
}

DensityMatrix bell_state(BellKind kind) { return density_from_pure(bell_pure(kind)); }

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("werner_state: p must lie in [0, 1], got " + std::to_string(p));
  }
  ComplexMatrix m = bell_state(BellKind::PhiPlus).mat() * p;
  m += ComplexMatrix::identity(4) * ((1.0 - p) / 4.0);
  return DensityMatrix::trusted(std::move(m), {2, 2});
}

PureState random_pure(DimSplit split, Rng& rng) {
  std::vector<Complex> amp(split.total());
  double n2 = 0.0;
  for (auto& a : amp) {
    a = rng.complex_normal();
    n2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amp) a *= inv;
  return {std::move(amp), split};
}

PureState random_pure(DimSplit split, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(split, rng);
}

DensityMatrix random_mixed(DimSplit split, std::size_t rank, Rng& rng) {
  if (rank < 1) throw DomainError("random_mixed: rank must be >= 1");
  const std::size_t n = split.total();
  ComplexMatrix g(n, rank);
  for (auto& v : g.entries()) v = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho *= 1.0 / tr;
  // Exact Hermiticity; the product is Hermitian only up to rounding.
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return DensityMatrix::trusted(std::move(rho), split);
}

DensityMatrix random_mixed(DimSplit split, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_mixed(split, rank, rng);
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  if (dim < 1) throw DomainError("random_unitary: dim must be >= 1");
  ComplexMatrix u(dim, dim);
  for (auto& v : u.entries()) v = rng.complex_normal();
  // Modified Gram-Schmidt over columns.
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex proj = 0.0;
      for (std::size_t r = 0; r < dim; ++r) proj += std::conj(u(r, j)) * u(r, k);
      for (std::size_t r = 0; r < dim; ++r) u(r, k) -= proj * u(r, j);
    }
    double n2 = 0.0;
    for (std::size_t r = 0; r < dim; ++r) n2 += std::norm(u(r, k));
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t r = 0; r < dim; ++r) u(r, k) *= inv;
  }
  return u;
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const auto& v : rho.mat().entries()) s += std::norm(v);
  return s;
}

DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& u) {
  return DensityMatrix::trusted(u * rho.mat() * u.adjoint(), rho.split());
}

}  // namespace entgeo
