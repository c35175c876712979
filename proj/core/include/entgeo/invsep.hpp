#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entgeo/comgeo.hpp"
#include "entgeo/matrix.hpp"
#include "entgeo/qstate.hpp"

namespace entgeo {

inline constexpr double kCssTol = 1e-8;

// ---------------------------------------------------------------------------
// Quantum flavor

/// Convex hull of finitely many density matrices sharing one split. Hull
/// queries run on the real coordinates of the flattened matrices.
struct StatePolytope {
  DimSplit split;
  std::vector<DensityMatrix> vertices;

  /// Throws ShapeError on an empty list or mixed dimensions.
  void check() const;
  VPolytope coordinates() const;
};

StatePolytope singleton(const DensityMatrix& rho);

/// Drops vertices inside the hull of the others.
StatePolytope reduce(const StatePolytope& c);

double hull_residual(const DensityMatrix& rho, const StatePolytope& c);
bool contains(const StatePolytope& c, const DensityMatrix& rho, double tol);
bool polytope_equal(const StatePolytope& p, const StatePolytope& q, double tol);

/// (hull of tr_B images, hull of tr_A images). The image of a hull under the
/// affine partial trace is the hull of the vertex images.
std::pair<StatePolytope, StatePolytope> tau(const StatePolytope& c);

/// Conv(C1 (x) C2): hull of all pairwise products of vertices.
StatePolytope lambda_map(const StatePolytope& c1, const StatePolytope& c2);

StatePolytope lambda_tau(const StatePolytope& c);

/// Largest vertex residual between lambda_tau(c) and c in either direction.
double css_distance(const StatePolytope& c);

/// Convex separable subset test: lambda_tau(c) == c within tol.
bool is_css(const StatePolytope& c, double tol = kCssTol);

struct Decomposition {
  struct Term {
    double p;
    DensityMatrix a;
    DensityMatrix b;
  };
  std::vector<Term> terms;

  /// Throws DomainError unless weights are nonnegative and sum to 1 within
  /// 1e-10 and factor dimensions agree across terms.
  void check() const;
  DensityMatrix state() const;
};

/// Witness polytope: all cross products a_i (x) b_j, reduced. It contains the
/// decomposed state and is fixed by lambda_tau.
StatePolytope css_from_decomposition(const Decomposition& d);

/// Four-term product decomposition of werner_state(1/4): local Bloch vectors
/// on a regular tetrahedron, the B side reflected through the xz-plane and
/// shortened to 3/4.
Decomposition werner_quarter_decomposition();

bool is_product(const DensityMatrix& rho, double tol);

double ppt_min_eigenvalue(const DensityMatrix& rho);

enum class PptVerdict { Separable, Entangled, Inconclusive };

inline constexpr double kPptTol = 1e-10;

/// Entangled when the partial transpose has an eigenvalue below -1e-10.
/// Otherwise separable where PPT is conclusive (2x2, 2x3, 3x2, or a trivial
/// factor) and inconclusive elsewhere.
PptVerdict ppt_verdict(const DensityMatrix& rho);

const char* to_string(PptVerdict v);

/// The function applied to the deviation before taking the norm.
enum class FKind {
  Identity,
  Abs,     // entrywise modulus
  Square,  // D^H D
};

enum class PsiKind { LambdaTilde };
enum class PhiKind { PartialTrace };

struct MeasureConfig {
  FKind f_kind = FKind::Identity;
  NormKind norm_kind = NormKind::Frobenius;
  PsiKind psi_kind = PsiKind::LambdaTilde;
  PhiKind phi_kind = PhiKind::PartialTrace;
};

const char* to_string(FKind f);
const char* to_string(NormKind n);
std::optional<FKind> parse_f_kind(const std::string& s);
std::optional<NormKind> parse_norm_kind(const std::string& s);

/// ||F(rho_A (x) rho_B - rho)||; zero exactly on product states.
double g_measure(const DensityMatrix& rho, const MeasureConfig& cfg = {});

/// Membership in the preimage intersection tr_B^{-1}(C1) and tr_A^{-1}(C2).
bool psi_preimage_member(const DensityMatrix& sigma, const StatePolytope& c1, const StatePolytope& c2,
                         double tol);

// ---------------------------------------------------------------------------
// GPT flavor. Composite polytopes live in the flattened coordinates of
// BilinearState (dim_a * dim_b).

std::pair<VPolytope, VPolytope> gpt_tau(const VPolytope& c, const ComModel& a, const ComModel& b);
VPolytope gpt_lambda(const VPolytope& c1, const VPolytope& c2);
VPolytope gpt_lambda_tau(const VPolytope& c, const ComModel& a, const ComModel& b);
bool gpt_is_css(const VPolytope& c, const ComModel& a, const ComModel& b, double tol = kCssTol);

struct GptSeparability {
  bool separable = false;
  double hull_distance = 0.0;
  /// Present when the state is outside the minimal tensor product.
  std::optional<SeparationCertificate> certificate;
};

/// Membership in the minimal tensor product; exact for polytopic models.
/// Throws DomainError when phi is not in the maximal tensor product.
GptSeparability gpt_separability(const BilinearState& phi, const ComModel& a, const ComModel& b, double tol);
bool gpt_separable(const BilinearState& phi, const ComModel& a, const ComModel& b, double tol);

/// ||F(omega_A (x) omega_B - omega)|| on the coordinate tensor. The trace norm
/// needs square coordinate tensors.
double gpt_g_measure(const BilinearState& phi, const ComModel& a, const ComModel& b, const MeasureConfig& cfg = {});

struct GptDecomposition {
  struct Term {
    double p;
    RealVector a;
    RealVector b;
  };
  std::vector<Term> terms;

  void check() const;
  BilinearState state() const;
};

VPolytope gpt_css_from_decomposition(const GptDecomposition& d);

inline constexpr std::size_t kClassicalCompositeCap = 32;

/// Builds the n_a * n_b outcome simplex, maps it down by marginalization and
/// back up by products, and compares with the original.
bool classical_invariance_check(std::size_t n_a, std::size_t n_b);

/// Same fixed-point test applied to the enumerated maximal tensor product.
bool max_tensor_invariance_check(const ComModel& a, const ComModel& b);

// ---------------------------------------------------------------------------
// Down-maps and entanglement structure

enum class MorphismKind { QuantumPartialTrace, GptMarginal };

struct MorphismSpec {
  MorphismKind kind = MorphismKind::QuantumPartialTrace;
  DimSplit split{2, 2};               // quantum
  std::optional<ComModel> model_a;    // gpt
  std::optional<ComModel> model_b;    // gpt
};

/// Checks that product states map to their factors: every vertex pair for GPT
/// models, `samples` seeded random product states for the quantum case.
bool satisfies_product_condition(const MorphismSpec& spec, std::uint64_t seed = 0, std::size_t samples = 32,
                                 double tol = 1e-10);

/// Whether a composite has a largest invariant subset strictly inside its
/// state space, with the state that witnesses strictness.
struct EntanglementModelReport {
  std::string backend;
  bool largest_invariant_known = false;
  bool strict = false;
  std::string witness;
};

EntanglementModelReport quantum_entanglement_model();
EntanglementModelReport classical_entanglement_model(std::size_t n_a, std::size_t n_b);
EntanglementModelReport gbit_entanglement_model();

}  // namespace entgeo
