#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace entgeo {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Sized for the small systems handled here
/// (side <= 64), so every operation is a plain value-to-value function.
class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(1, 1) {}
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  /// Column vector |v> as an n x 1 matrix.
  static ComplexMatrix column(std::span<const Complex> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

/// Bipartite factorization of a composite index space H_A (x) H_B.
struct DimSplit {
  std::size_t dim_a = 1;
  std::size_t dim_b = 1;

  std::size_t total() const { return dim_a * dim_b; }
  friend bool operator==(const DimSplit&, const DimSplit&) = default;
};

enum class Subsystem { A, B };

enum class NormKind { Frobenius, Trace, MaxAbs };

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

/// Entry ((i,k),(j,l)) of the result is a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out `over`; the result lives on the remaining factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, DimSplit split, Subsystem over);

/// Transposes the indices of subsystem `on` only. An involution.
ComplexMatrix partial_transpose(const ComplexMatrix& m, DimSplit split, Subsystem on);

/// Largest |m(i,j) - conj(m(j,i))|. Throws ShapeError for non-square input.
double hermiticity_deviation(const ComplexMatrix& m);

inline constexpr double kHermitianTol = 1e-10;

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Cyclic complex Jacobi eigensolver for Hermitian input. The input is
/// symmetrized before the sweep; inputs further than 1e-10 from Hermitian are
/// rejected with DomainError.
EigenSystem hermitian_eig(const ComplexMatrix& m);

/// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double norm(const ComplexMatrix& m, NormKind kind);

/// Coordinates (re, im) interleaved in row-major order; length 2*rows*cols.
std::vector<double> to_real_coordinates(const ComplexMatrix& m);

}  // namespace entgeo
