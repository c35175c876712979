#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entgeo/matrix.hpp"
#include "entgeo/rng.hpp"

namespace entgeo {

inline constexpr double kStateTol = 1e-10;

/// Magnitudes of every density-matrix invariant, so drift can be diagnosed
/// rather than only detected.
struct ValidationReport {
  double hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;
  double trace_real_deviation = 0.0;  // |Re tr - 1|
  double trace_imag = 0.0;            // |Im tr|
  bool shape_ok = true;

  bool ok() const;
  std::string describe() const;
};

ValidationReport validate(const ComplexMatrix& m, DimSplit split);

/// Hermitian, PSD, unit-trace matrix on H_A (x) H_B. Invariants are checked by
/// `from_matrix`; `trusted` is for results of operations that preserve them.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(ComplexMatrix m, DimSplit split);
  static DensityMatrix trusted(ComplexMatrix m, DimSplit split) {
    return DensityMatrix(std::move(m), split);
  }
  /// A single-system state, split (n, 1).
  static DensityMatrix single(ComplexMatrix m) {
    const std::size_t n = m.rows();
    return from_matrix(std::move(m), {n, 1});
  }

  const ComplexMatrix& mat() const { return mat_; }
  DimSplit split() const { return split_; }
  std::size_t dim() const { return mat_.rows(); }

 private:
  DensityMatrix(ComplexMatrix m, DimSplit split) : mat_(std::move(m)), split_(split) {}
  ComplexMatrix mat_;
  DimSplit split_;
};

struct PureState {
  std::vector<Complex> amplitudes;
  DimSplit split;

  /// Throws DomainError unless |amplitudes|^2 is within 1e-12 of 1 and the
  /// length matches the split.
  void check() const;
};

inline constexpr double kPureNormTol = 1e-12;

DensityMatrix density_from_pure(const PureState& psi);

struct Marginals {
  DensityMatrix a;
  DensityMatrix b;
};

Marginals marginals(const DensityMatrix& rho);

/// rho -> rho_A (x) rho_B.
DensityMatrix pi_map(const DensityMatrix& rho);

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b);

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

PureState bell_pure(BellKind kind);
DensityMatrix bell_state(BellKind kind);

/// p |Phi+><Phi+| + (1-p) I/4.
DensityMatrix werner_state(double p);

PureState random_pure(DimSplit split, Rng& rng);
PureState random_pure(DimSplit split, std::uint64_t seed);
/// Ginibre ensemble: G G^H / tr(G G^H) with G of shape dim x rank.
DensityMatrix random_mixed(DimSplit split, std::size_t rank, Rng& rng);
DensityMatrix random_mixed(DimSplit split, std::size_t rank, std::uint64_t seed);
/// Gram-Schmidt of a Ginibre matrix; positive R diagonal fixes the phases.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

double purity(const DensityMatrix& rho);

/// U rho U^H, keeping the split.
DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& u);

}  // namespace entgeo
