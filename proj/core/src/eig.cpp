#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entgeo/errors.hpp"
#include "entgeo/matrix.hpp"

namespace entgeo {

namespace {

constexpr double kOffDiagonalTol = 1e-13;
constexpr int kMaxSweeps = 100;

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p,q). The rotation is
// V = diag(1, e^{-i phi}) * [[c, s], [-s, c]] in the (p,q) plane, where
// a(p,q) = r e^{i phi}; after the phase factor the pivot block is real
// symmetric and the classical rotation angle applies.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double zeta = (aqq - app) / (2.0 * r);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex e_minus = std::conj(phase);

  const std::size_t n = a.rows();
  // Columns: A <- A V.
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * e_minus * akq;
    a(k, q) = s * akp + c * e_minus * akq;
  }
  // Rows: A <- V^H A.
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * e_minus * vkq;
    v(k, q) = s * vkp + c * e_minus * vkq;
  }
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw ShapeError("hermitian_eig: non-square input " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
  const double dev = hermiticity_deviation(m);
  if (dev > kHermitianTol) {
    throw DomainError("hermitian_eig: input deviates from Hermitian by " + std::to_string(dev));
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex sym = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(i, j) = sym;
      a(j, i) = std::conj(sym);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, norm(a, NormKind::Frobenius));
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) < kOffDiagonalTol * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eig(m).values; }

}  // namespace entgeo
