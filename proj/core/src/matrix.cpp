#include "entgeo/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entgeo/errors.hpp"

namespace entgeo {

namespace {

std::string shape_str(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_split(const ComplexMatrix& m, DimSplit split, const char* op) {
  if (split.dim_a < 1 || split.dim_b < 1) {
    throw ShapeError(std::string(op) + ": split dimensions must be >= 1");
  }
  if (!m.is_square() || m.rows() != split.total()) {
    throw ShapeError(std::string(op) + ": expected square matrix of side " +
                     std::to_string(split.total()) + ", got " + shape_str(m));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("shape mismatch: " + shape_str(a) + " vs " + shape_str(b));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be >= 1");
  if (data_.size() != rows * cols) {
    throw ShapeError("entry count " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw ShapeError("trace of non-square matrix " + shape_str(*this));
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("product shape mismatch: " + shape_str(a) + " * " + shape_str(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, DimSplit split, Subsystem over) {
  require_split(m, split, "partial_trace");
  const std::size_t da = split.dim_a;
  const std::size_t db = split.dim_b;
  if (over == Subsystem::B) {
    ComplexMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < db; ++k) s += m(i * db + k, j * db + k);
        out(i, j) = s;
      }
    return out;
  }
  ComplexMatrix out(db, db);
  for (std::size_t k = 0; k < db; ++k)
    for (std::size_t l = 0; l < db; ++l) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < da; ++i) s += m(i * db + k, i * db + l);
      out(k, l) = s;
    }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, DimSplit split, Subsystem on) {
  require_split(m, split, "partial_transpose");
  const std::size_t da = split.dim_a;
  const std::size_t db = split.dim_b;
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) {
          if (on == Subsystem::B) {
            out(i * db + k, j * db + l) = m(i * db + l, j * db + k);
          } else {
            out(i * db + k, j * db + l) = m(j * db + k, i * db + l);
          }
        }
  return out;
}

double hermiticity_deviation(const ComplexMatrix& m) {
  if (!m.is_square()) throw ShapeError("hermiticity check on non-square matrix " + shape_str(m));
  double dev = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  return dev;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.is_square() && hermiticity_deviation(m) <= tol;
}

double norm(const ComplexMatrix& m, NormKind kind) {
  switch (kind) {
    case NormKind::Frobenius: {
      double s = 0.0;
      for (const auto& v : m.entries()) s += std::norm(v);
      return std::sqrt(s);
    }
    case NormKind::MaxAbs: {
      double s = 0.0;
      for (const auto& v : m.entries()) s = std::max(s, std::abs(v));
      return s;
    }
    case NormKind::Trace: {
      if (!m.is_square()) throw ShapeError("trace norm of non-square matrix " + shape_str(m));
      double s = 0.0;
      if (is_hermitian(m)) {
        for (double ev : hermitian_eigenvalues(m)) s += std::abs(ev);
      } else {
        for (double ev : hermitian_eigenvalues(m.adjoint() * m)) s += std::sqrt(std::max(ev, 0.0));
      }
      return s;
    }
  }
  return 0.0;
}

std::vector<double> to_real_coordinates(const ComplexMatrix& m) {
  std::vector<double> out;
  out.reserve(2 * m.entries().size());
  for (const auto& v : m.entries()) {
    out.push_back(v.real());
    out.push_back(v.imag());
  }
  return out;
}

}  // namespace entgeo
