#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgt/dg_algebra.hpp"
#include "dgt/dg_lie.hpp"
#include "dgt/graded.hpp"

namespace dgt {

/// One summand c′ ⊗ c″ of a coproduct.
struct CoproductTerm {
  std::size_t left;
  std::size_t right;
  Scalar coef;
};

/// Coaugmented differential graded coalgebra on a finite basis.
class DGCoalgebra {
 public:
  DGCoalgebra() = default;
  DGCoalgebra(GradedModule module, Matrix differential, std::vector<std::vector<CoproductTerm>> coproduct, Vec counit,
              Vec coaugmentation, bool cocommutative, int truncation);

  const GradedModule& module() const { return module_; }
  RingPtr ring() const { return module_.ring(); }
  std::size_t dim() const { return module_.dim(); }
  const Matrix& differential() const { return differential_; }
  Vec d(const Vec& x) const { return differential_.apply(x); }
  /// Δ(e_i)
  const std::vector<CoproductTerm>& coproduct(std::size_t i) const { return coproduct_[i]; }
  /// ε as a row: ε(e_i) = counit()[i].
  const Vec& counit() const { return counit_; }
  Scalar counit(const Vec& x) const;
  /// η(1)
  const Vec& coaugmentation() const { return coaugmentation_; }
  bool cocommutative() const { return cocommutative_; }
  int truncation() const { return truncation_; }

  DGCoalgebra with_differential(Matrix d) const;

  friend bool operator==(const DGCoalgebra& a, const DGCoalgebra& b);

 private:
  GradedModule module_;
  Matrix differential_;
  std::vector<std::vector<CoproductTerm>> coproduct_;
  Vec counit_;
  Vec coaugmentation_;
  bool cocommutative_ = false;
  int truncation_ = 0;
};

/// Checks, in order: differential degree, coproduct degree, counit degree,
/// d∘d = 0, coassociativity, counit laws, coaugmentation (Δη = η⊗η, εη = 1,
/// dη = 0), coderivation rule, and cocommutativity when flagged.
std::optional<Violation> find_coalgebra_violation(const DGCoalgebra& c);
Validated<DGCoalgebra> validate_coalgebra(const DGCoalgebra& c);

/// Sym^c(V) on even-degree cogenerators, divided-power basis of monomials x^α with
/// |α| ≤ N and Δx^α = Σ_{β+γ=α} x^β ⊗ x^γ. With a single cogenerator g the basis
/// is named g0, g1, ..., gN; otherwise "1", "x", "x.y", "x^2", ...
struct SymmetricCoalgebra {
  DGCoalgebra coalgebra;
  GradedModule generators;
  std::vector<std::vector<int>> exponents;

  std::optional<std::size_t> index_of(const std::vector<int>& alpha) const;
};

/// Throws std::invalid_argument for odd-degree cogenerators or N < 1.
SymmetricCoalgebra symmetric_coalgebra(RingPtr ring, const std::vector<BasisElement>& generators, int N);

/// T^c(V) with words of length ≤ N, deconcatenation coproduct, zero differential.
/// Words are named by letters joined with "|"; the empty word is "[]".
struct TensorCoalgebra {
  DGCoalgebra coalgebra;
  GradedModule letters;
  std::vector<std::vector<std::size_t>> words;
  std::map<std::vector<std::size_t>, std::size_t> index;

  std::size_t length(std::size_t basis_index) const { return words[basis_index].size(); }
  std::size_t word_index(const std::vector<std::size_t>& w) const { return index.at(w); }
};

TensorCoalgebra tensor_coalgebra(RingPtr ring, const std::vector<BasisElement>& letters, int N);

/// Coderivation of T^c(V) with prescribed co-restriction `components`
/// (a letters × words matrix, zero on the empty word, of degree -1):
/// δ(v1…vn) = Σ (−1)^{|v1…vi|} v1…vi ⊗ δ_j(v_{i+1}…v_{i+j}) ⊗ v_{i+j+1}…vn.
/// Throws std::invalid_argument on a degree mismatch.
Matrix coderivation_from_corestrictions(const TensorCoalgebra& t, const Matrix& components);
/// The co-restriction π_V∘δ of an operator on T^c(V).
Matrix corestriction(const TensorCoalgebra& t, const Matrix& delta);

/// Level of each basis element in the coaugmentation filtration: the largest k
/// with Δ̄^{(k−1)}(x̄) ≠ 0, where x̄ = x − ε(x)η(1); 0 when x̄ = 0.
std::vector<int> coaugmentation_filtration(const DGCoalgebra& c);

/// Hom(C, A) with basis "c>a" of degree |a| − |c| (index c·dim A + a),
/// (f⌣g)(c) = Σ (−1)^{|g||c′|} f(c′) g(c″), (Df)(c) = d f(c) − (−1)^{|f|} f(dc), unit ε·1.
DGAlgebra convolution_algebra(const DGCoalgebra& c, const DGAlgebra& a);

/// Hom(C, g) with [f,g](c) = Σ (−1)^{|g||c′|} [f(c′), g(c″)]. Requires a cocommutative C.
DGLieAlgebra convolution_dgl(const DGCoalgebra& c, const DGLieAlgebra& g);

/// Basis index of c>a in Hom(C, A).
inline std::size_t hom_index(std::size_t c, std::size_t a, std::size_t dim_a) { return c * dim_a + a; }
GradedModule hom_module(const GradedModule& c, const GradedModule& a);

/// Left DG module over a DGA.
class DGModule {
 public:
  DGModule() = default;
  DGModule(DGAlgebra algebra, GradedModule module, Matrix differential, BilinearTable action);

  const DGAlgebra& algebra() const { return algebra_; }
  const GradedModule& module() const { return module_; }
  const Matrix& differential() const { return differential_; }
  const BilinearTable& action_table() const { return action_; }
  Vec act(const Vec& a, const Vec& m) const { return action_.apply(a, m); }
  Vec d(const Vec& m) const { return differential_.apply(m); }

  friend bool operator==(const DGModule& a, const DGModule& b);

 private:
  DGAlgebra algebra_;
  GradedModule module_;
  Matrix differential_;
  BilinearTable action_;
};

/// A as a left module over itself.
DGModule regular_module(const DGAlgebra& a);

/// Checks: differential degree, action degree, d∘d = 0, unit acts as identity,
/// (ab)m = a(bm), d(am) = (Da)m + (−1)^{|a|} a dm.
std::optional<Violation> find_module_violation(const DGModule& m);
Validated<DGModule> validate_module(const DGModule& m);

struct TwistedComplex {
  GradedModule module;  ///< C ⊗ M, names "c⊗m"
  Matrix differential;
};

/// d_τ(c⊗m) = dc⊗m + (−1)^{|c|} c⊗dm − Σ (−1)^{|c′|} c′⊗τ(c″)m, for any degree -1 τ ∈ Hom(C, A).
TwistedComplex twisted_tensor_complex_unchecked(const DGCoalgebra& c, const DGAlgebra& a, const Vec& tau,
                                                const DGModule& m);

struct TwistedComplexResult {
  std::optional<TwistedComplex> complex;
  /// Dτ − τ⌣τ in the convolution algebra
  Vec residual;

  bool ok() const { return complex.has_value(); }
};

/// Refuses (with the residual) unless τ is a twisting element of Hom(C, A).
TwistedComplexResult twisted_tensor_complex(const DGCoalgebra& c, const DGAlgebra& a, const Vec& tau, const DGModule& m);

}  // namespace dgt
