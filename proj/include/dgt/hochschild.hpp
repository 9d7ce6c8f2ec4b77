#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgt/dg_algebra.hpp"
#include "dgt/dg_lie.hpp"

namespace dgt {

/// Hochschild cochains C^n(B,B) = Hom(B^{⊗n}, B) for n ≤ max_arity of an
/// ungraded associative algebra B (all basis degrees 0, D = 0).
///
/// An n-cochain is a Vec of length d^{n+1}: the entry for f(e_{a1},…,e_{an})
/// having e_o-coefficient sits at ((a1·d + a2)·d + … + an)·d + o.
/// In the Lie structure C^n carries degree 1 − n, so 2-cochains have degree -1.
class HochschildComplex {
 public:
  /// Throws std::invalid_argument unless B is ungraded with zero differential.
  explicit HochschildComplex(DGAlgebra b, int max_arity = 4);

  const DGAlgebra& algebra() const { return b_; }
  RingPtr ring() const { return b_.ring(); }
  std::size_t algebra_dim() const { return b_.dim(); }
  int max_arity() const { return max_arity_; }
  static int degree(int arity) { return 1 - arity; }

  std::size_t cochain_dim(int arity) const;
  Vec zero(int arity) const { return zero_vec(ring(), cochain_dim(arity)); }
  std::size_t index(const std::vector<std::size_t>& args, std::size_t out) const;
  std::pair<std::vector<std::size_t>, std::size_t> decode(int arity, std::size_t index) const;
  /// "x,y>1" for the cochain sending (x, y) to 1; a 0-cochain entry is ">x".
  std::string name(int arity, std::size_t index) const;
  /// f(e_{a1}, …, e_{an}) ∈ B
  Vec evaluate(const Vec& f, const std::vector<std::size_t>& args) const;

  /// The multiplication as a 2-cochain.
  Vec mu() const;

  /// (δf)(a0,…,an) = a0 f(a1,…,an) + Σ (−1)^{i+1} f(…, a_i a_{i+1}, …) + (−1)^{n+1} f(a0,…,a_{n−1}) an.
  /// Throws ResourceLimitExceeded when n + 1 > max_arity.
  Vec differential(const Vec& f, int arity) const;
  Matrix differential_matrix(int arity) const;

  /// (f∘g)(a…) = Σ_i (−1)^{i(n−1)} f(a1,…,ai, g(a_{i+1},…,a_{i+n}), …).
  Vec circle(const Vec& f, int m, const Vec& g, int n) const;
  /// [f,g] = f∘g − (−1)^{(m−1)(n−1)} g∘f
  Vec bracket(const Vec& f, int m, const Vec& g, int n) const;

 private:
  void check_arity(int arity) const;

  DGAlgebra b_;
  int max_arity_ = 4;
  std::vector<std::vector<std::pair<std::pair<std::size_t, std::size_t>, Scalar>>> factorizations_;
};

/// The same algebra over a ring containing its scalars.
DGAlgebra base_change(const DGAlgebra& b, RingPtr ring);

/// C^1 ⊕ … ⊕ C^N with degree 1 − n, the Gerstenhaber bracket truncated at
/// arity N, and d = [μ, −]. Requires an associative B.
struct HochschildDGL {
  DGLieAlgebra lie;
  std::vector<std::size_t> offsets;  ///< offsets[n-1] = first basis index of C^n

  Vec embed(const Vec& f, int arity) const;
  Vec component(const Vec& x, int arity) const;
};

HochschildDGL hochschild_dgl(const HochschildComplex& c);

struct HHGroup {
  int arity = 0;
  std::size_t dimension = 0;
  /// normalized cocycles representing a basis
  std::vector<Vec> basis;
};

/// HH^n(B,B) from the normalized subcomplex (cochains vanishing when an argument
/// is the unit). Needs the unit to be a basis vector; throws
/// ResourceLimitExceeded when n > max_arity.
HHGroup hh_cohomology(const DGAlgebra& b, int n, int max_arity = 4);

struct DeformedProduct {
  /// μ_t = μ + Σ γ_k t^k over k[t]/(t^{N+1})
  DGAlgebra algebra;
  /// associators vanish in each t-degree 0..N
  std::vector<bool> associative_at_order;
  std::optional<int> first_failing_order;
  /// least (a, b, c) whose associator fails at first_failing_order
  std::optional<std::array<std::size_t, 3>> failing_triple;
  /// [μ, γ] + ½[γ, γ] for γ = Σ γ_k t^k, a 3-cochain over k[t]/(t^{N+1})
  Vec mc_residual;
  /// t-degrees in which the residual vanishes
  std::vector<bool> mc_at_order;

  bool associative() const { return !first_failing_order.has_value(); }
};

/// Builds μ_t from 2-cochains γ_1..γ_N and decides associativity mod t^{N+1}
/// twice: by direct associators and by the Hochschild MC residual. The two
/// must agree order by order (std::logic_error otherwise).
/// Throws ResourceLimitExceeded when N > max_order.
DeformedProduct deform_product(const DGAlgebra& b, const std::vector<Vec>& gammas, int max_order = 4);

}  // namespace dgt
