#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dgt/dg_algebra.hpp"
#include "dgt/graded.hpp"

namespace dgt {

/// Differential graded Lie algebra (differential of degree -1, degree-0 bracket).
class DGLieAlgebra {
 public:
  DGLieAlgebra() = default;
  DGLieAlgebra(GradedModule module, Matrix differential, BilinearTable bracket);

  const GradedModule& module() const { return module_; }
  RingPtr ring() const { return module_.ring(); }
  std::size_t dim() const { return module_.dim(); }
  const Matrix& differential() const { return differential_; }
  const BilinearTable& bracket_table() const { return bracket_; }

  Vec d(const Vec& x) const { return differential_.apply(x); }
  Vec bracket(const Vec& x, const Vec& y) const { return bracket_.apply(x, y); }
  Vec basis(const std::string& name) const { return module_.basis_vector(name); }
  /// y ↦ [x, y]
  Matrix ad(const Vec& x) const;

  friend bool operator==(const DGLieAlgebra& a, const DGLieAlgebra& b);

 private:
  GradedModule module_;
  Matrix differential_;
  BilinearTable bracket_;
};

struct DGLieSpec {
  RingPtr ring = nullptr;
  std::vector<BasisElement> basis;
  std::vector<std::tuple<std::string, std::string, Scalar>> differential;
  /// [x, y] = c·z. A pair whose partner [y, x] is absent gets it by antisymmetry.
  std::vector<std::tuple<std::string, std::string, std::string, Scalar>> bracket;
};

DGLieAlgebra build_dgl(const DGLieSpec& spec);

/// Checks, in order: differential degree, bracket degree, d∘d = 0, graded
/// antisymmetry, graded Jacobi, graded Leibniz.
std::optional<Violation> find_dgl_violation(const DGLieAlgebra& g);
Validated<DGLieAlgebra> validate_dgl(const DGLieAlgebra& g);

/// Degree -1 element with dγ + ½[γ,γ] = 0.
class MCElement {
 public:
  const Vec& value() const { return value_; }
  friend bool operator==(const MCElement& a, const MCElement& b) { return a.value_ == b.value_; }

 private:
  explicit MCElement(Vec v) : value_(std::move(v)) {}
  friend struct MCAccess;
  Vec value_;
};

struct MCCheck {
  std::optional<MCElement> element;
  /// dγ + ½[γ,γ]
  Vec residual;

  bool ok() const { return element.has_value(); }
};

/// dγ + ½[γ,γ]. In characteristic 2 a divided square γ^[2] with [γ,γ] = 2γ^[2]
/// must be supplied (std::domain_error otherwise); elsewhere a supplied one is checked.
Vec mc_residual(const DGLieAlgebra& g, const Vec& gamma, const std::optional<Vec>& divided_square = std::nullopt);
/// Throws std::invalid_argument unless γ is homogeneous of degree -1.
MCCheck is_mc(const DGLieAlgebra& g, const Vec& gamma, const std::optional<Vec>& divided_square = std::nullopt);

/// γ ↦ −γ: dγ + ½[γ,γ] = 0 iff τ = −γ satisfies dτ = ½[τ,τ].
inline Vec mc_sign_adapter(const Vec& gamma) { return -gamma; }

/// d_γ(x) = dx + [γ, x]. Accepts any degree -1 vector.
Matrix twisted_differential_lie(const DGLieAlgebra& g, const Vec& gamma);

/// Same module and differential; [a,b] = ab − (−1)^{|a||b|} ba.
DGLieAlgebra commutator_dgl(const DGAlgebra& a);

}  // namespace dgt
