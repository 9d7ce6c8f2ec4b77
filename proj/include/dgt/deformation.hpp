#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgt/coalgebra.hpp"
#include "dgt/dg_algebra.hpp"
#include "dgt/dg_lie.hpp"

namespace dgt {

/// Image of a base-field scalar in a ring over that field.
Scalar extend_scalar(RingPtr target, const Scalar& s);
Vec extend_vec(RingPtr target, const Vec& v);

/// g ⊗ A over A: same basis, structure constants carried over.
DGLieAlgebra base_change(const DGLieAlgebra& g, RingPtr a);

/// Every coordinate lies in the maximal ideal (no constant terms).
bool in_maximal_ideal(const Vec& x);

/// g together with a local Artinian coefficient ring A = k[t1..tk]/(deg > n).
/// L = g ⊗ m is represented inside g ⊗ A as the vectors with no constant terms.
class DeformationProblem {
 public:
  /// Throws std::invalid_argument unless A is a truncated ring over g's ring.
  DeformationProblem(DGLieAlgebra g, RingPtr coefficients);

  const DGLieAlgebra& g() const { return g_; }
  RingPtr coefficients() const { return coefficients_; }
  /// g ⊗ A
  const DGLieAlgebra& extended() const { return extended_; }
  /// m^{n+1} = 0, so brackets of n+1 elements of L vanish.
  int nilpotency_bound() const { return coefficients_->order(); }
  bool in_L(const Vec& x, int degree) const;
  /// Elements of L_degree in basis-lexicographic order (finite rings only).
  std::vector<Vec> enumerate_L(int degree, std::uint64_t limit) const;

 private:
  DGLieAlgebra g_;
  RingPtr coefficients_ = nullptr;
  DGLieAlgebra extended_;
};

/// Campbell-Baker-Hausdorff product truncated after brackets of `nilpotency_class`
/// elements: X + Y + ½[X,Y] + (1/12)([X,[X,Y]] + [Y,[Y,X]]) − (1/24)[Y,[X,[X,Y]]].
/// Throws std::invalid_argument for a class outside 1..4 or non-degree-0 inputs,
/// std::domain_error when a needed denominator is not invertible.
Vec bch(const DGLieAlgebra& l, const Vec& x, const Vec& y, int nilpotency_class);

/// exp ζ, stored by its logarithm ζ ∈ L_0.
class GaugeGroupElement {
 public:
  const Vec& log() const { return log_; }
  friend bool operator==(const GaugeGroupElement& a, const GaugeGroupElement& b) { return a.log_ == b.log_; }

 private:
  explicit GaugeGroupElement(Vec v) : log_(std::move(v)) {}
  friend GaugeGroupElement exp_of(const DeformationProblem& p, const Vec& zeta);
  friend GaugeGroupElement group_product(const DeformationProblem& p, const GaugeGroupElement& a,
                                         const GaugeGroupElement& b);
  Vec log_;
};

/// Throws std::invalid_argument unless ζ ∈ L_0.
GaugeGroupElement exp_of(const DeformationProblem& p, const Vec& zeta);
/// exp(a)·exp(b) = exp(bch(a, b)) at the problem's nilpotency bound.
GaugeGroupElement group_product(const DeformationProblem& p, const GaugeGroupElement& a, const GaugeGroupElement& b);

/// [ζ, α] − dζ for ζ of degree 0 and α of degree -1.
Vec infinitesimal_action(const DGLieAlgebra& l, const Vec& zeta, const Vec& alpha);

/// Σ_k ad_ζ^k(γ)/k! − Σ_k ad_ζ^k(dζ)/(k+1)!, summed until the terms vanish.
/// Throws ResourceLimitExceeded when ad_ζ is not nilpotent within `max_terms`
/// and std::domain_error when a needed factorial is not invertible.
Vec gauge_action(const DGLieAlgebra& l, const Vec& zeta, const Vec& gamma, int max_terms = 64);
Vec gauge_action(const DeformationProblem& p, const GaugeGroupElement& x, const Vec& gamma);

struct MCOrbit {
  std::vector<Vec> members;
  Vec representative;
};

struct DefPoints {
  /// MC(L) in basis-lexicographic order
  std::vector<Vec> mc;
  /// ordered by representative, the least member
  std::vector<MCOrbit> orbits;
  std::size_t group_order = 0;
};

struct DefPointsOptions {
  std::uint64_t max_work = 1'000'000;
  unsigned jobs = 1;
};

/// MC(g ⊗ m) / exp(g_0 ⊗ m) by exhaustive enumeration. Requires a finite ring of
/// odd characteristic. Throws ResourceLimitExceeded when |MC|·|Γ| > max_work.
DefPoints def_points(const DeformationProblem& p, DefPointsOptions options = {});

struct ObstructionReport {
  int order = 0;
  /// ½ Σ_{i+j=k} [γ_i, γ_j], a cycle in degree -2
  Vec cocycle;
  /// coordinates of its class with respect to `class_basis`
  Vec class_coordinates;
  std::vector<Vec> class_basis;
  std::vector<Vec> partial_solution;
};

struct MCExtension {
  /// γ_1..γ_N with Σ γ_k t^k Maurer-Cartan mod t^{N+1}
  std::optional<std::vector<Vec>> solution;
  std::optional<ObstructionReport> obstruction;

  bool ok() const { return solution.has_value(); }
};

/// Solves dγ_k = −½ Σ_{i+j=k} [γ_i, γ_j] for k = 2..N, lifting through a fixed
/// splitting. Throws std::invalid_argument unless γ_1 is a degree -1 cycle.
MCExtension mc_extend(const DGLieAlgebra& g, const Vec& gamma1, int N);

/// Σ γ_k t^k as an element of g ⊗ k[t]/(t^{N+1}).
Vec series_element(RingPtr series_ring, const std::vector<Vec>& gammas);

/// (τ(ξ_1), …, τ(ξ_N)) for τ ∈ Hom(S^c(ξ), g). Throws std::invalid_argument
/// unless C has one cogenerator of degree 0 and τ(ξ_0) = 0.
std::vector<Vec> deformation_from_twisting_cochain(const SymmetricCoalgebra& c, const DGLieAlgebra& g, const Vec& tau);
Vec twisting_cochain_from_deformation(const SymmetricCoalgebra& c, const DGLieAlgebra& g,
                                      const std::vector<Vec>& gammas);

/// ρ = Σ ρ_α t^α over multi-indices 0 < |α| ≤ N in `variables` degree-0 variables.
struct MCFamily {
  int variables = 1;
  std::map<std::vector<int>, Vec> coefficients;
};

struct FamilyVerdict {
  bool valid = true;
  /// first failing multi-index, by total order then coalgebra order
  std::optional<std::vector<int>> failing_index;
  /// dρ_α + ½ Σ_{β+γ=α} [ρ_β, ρ_γ] at the failing index
  Vec residual;
};

/// Checks the coefficient-wise MC equations up to order N and, independently,
/// that −ρ on S^c(V) satisfies Dτ = ½[τ,τ] in Hom(S^c(V), L); the two must agree.
/// Throws std::invalid_argument when ρ has a constant term or a bad degree.
FamilyVerdict kuranishi_family_check(const MCFamily& rho, const DGLieAlgebra& l, int N);

struct DeligneEquivalence {
  GaugeEquivalence::Verdict verdict = GaugeEquivalence::Verdict::undecided;
  std::optional<Vec> witness;
  std::uint64_t candidates_tested = 0;
};

struct EquivalenceComparison {
  GaugeEquivalence unit_group;
  DeligneEquivalence deligne;
};

/// Degree-0 maps C → g vanishing on η(1): the Lie algebra of Γ^C.
/// Throws std::invalid_argument unless η(1) is a basis vector of C.
std::vector<std::size_t> pronilpotent_degree_zero(const DGCoalgebra& c, const GradedModule& g);

/// Side-by-side verdicts for twisting cochains τ1, τ2 : C → A:
/// unit-group equivalence in Hom(C, A) and Γ^C-equivalence of −τ1, −τ2 in
/// Hom(C, commutator_dgl(A)). The second search is exhaustive over finite rings
/// and a bounded integer grid over Q (never concluding inequivalence there).
EquivalenceComparison compare_equivalences(const DGCoalgebra& c, const DGAlgebra& a, const Vec& tau1, const Vec& tau2,
                                           std::uint64_t search_bound = 1000);

}  // namespace dgt
