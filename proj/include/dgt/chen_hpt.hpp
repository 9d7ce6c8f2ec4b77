#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgt/coalgebra.hpp"
#include "dgt/dg_algebra.hpp"

namespace dgt {

/// Ω = H ⊕ B ⊕ W with B = im d, H spanned by cohomology representatives (the
/// unit first) and W a complement of the cycles; h(dw) = w on B and h = 0 on H ⊕ W.
struct Splitting {
  std::vector<Vec> h_basis;
  std::vector<Vec> b_basis;  ///< b_basis[k] = d(w_basis[k])
  std::vector<Vec> w_basis;
  Matrix p_h, p_b, p_w;
  /// coordinates of p_H with respect to h_basis (|H| × dim Ω)
  Matrix h_coordinates;
  Matrix homotopy;
};

/// Deterministic: representatives prefer the unit, then basis vectors that are cycles;
/// W prefers basis vectors in order. Throws std::invalid_argument for an invalid DGA.
Splitting splitting_from_dga(const DGAlgebra& omega);

struct SplittingCheck {
  bool projections_sum_to_identity = false;
  bool projections_idempotent_and_orthogonal = false;
  bool homotopy_identity = false;  ///< dh + hd = 1 − ι p_H
  bool side_conditions = false;    ///< h∘h = 0, h∘ι = 0, p_H∘h = 0

  bool ok() const {
    return projections_sum_to_identity && projections_idempotent_and_orthogonal && homotopy_identity && side_conditions;
  }
};

SplittingCheck check_splitting(const DGAlgebra& omega, const Splitting& s);

/// A twisting cochain ω : T^c_δ(V) → Ω with V the suspended reduced cohomology.
/// Letter i stands for the class h_basis[letter_class[i]] and has degree one more.
struct FormalConnection {
  TensorCoalgebra words;
  std::vector<std::size_t> letter_class;
  /// dim Ω × |words|; column w holds ω(w), zero on the empty word
  Matrix omega;
  /// |letters| × |words|; co-restriction of δ, zero on the empty word and on letters
  Matrix corestriction;
  /// the coderivation of T^c(V) with that co-restriction
  Matrix delta;
  int truncation = 0;
};

/// Solves Dω = ω⌣ω in Hom(T^c_δ(V), Ω) word length by word length: with
/// e_n the length-n defect, δ_n = −p_H(e_n) on letters and ω_n = −h(e_n).
/// Throws std::logic_error naming the word if a defect is not a cycle or has a
/// component on the unit class.
FormalConnection build_formal_connection(const DGAlgebra& omega, const Splitting& s, int N);

struct LengthReport {
  int length = 0;
  std::size_t residual_violations = 0;
  std::size_t delta_square_violations = 0;
  std::size_t normalization_violations = 0;
  std::optional<std::string> first_word;
};

struct ConnectionReport {
  std::vector<LengthReport> lengths;
  bool coderivation = false;

  bool ok() const;
};

/// Recomputes dω(w) + ω(δw) − Σ (−1)^{|w′|} ω(w′)ω(w″) on every word from the
/// coalgebra data, δ² word by word, the coderivation rule, and the normalization
/// ω(letter) = representative, p_W ω(w) = ω(w) for longer words.
ConnectionReport verify_formal_connection(const DGAlgebra& omega, const Splitting& s, const FormalConnection& fc);

/// dim H_k of (T^c(V), δ) truncated at the connection's word length, for each degree.
/// Degrees reached only by long words are affected by the truncation.
std::map<int, std::size_t> bar_model_homology(const FormalConnection& fc);

}  // namespace dgt
