#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dgt/graded.hpp"

namespace dgt {

/// Differential graded algebra: differential of degree -1, degree-0 product, unit.
/// Construction stores the data as given; use validate_dga for the axioms.
class DGAlgebra {
 public:
  DGAlgebra() = default;
  DGAlgebra(GradedModule module, Matrix differential, BilinearTable product, Vec unit);

  const GradedModule& module() const { return module_; }
  RingPtr ring() const { return module_.ring(); }
  std::size_t dim() const { return module_.dim(); }
  const Matrix& differential() const { return differential_; }
  const BilinearTable& product() const { return product_; }
  const Vec& unit() const { return unit_; }

  Vec d(const Vec& x) const { return differential_.apply(x); }
  Vec mul(const Vec& x, const Vec& y) const { return product_.apply(x, y); }
  Vec basis(const std::string& name) const { return module_.basis_vector(name); }

  /// y ↦ x·y and y ↦ y·x as matrices.
  Matrix left_multiplication(const Vec& x) const;
  Matrix right_multiplication(const Vec& x) const;

  DGAlgebra with_differential(Matrix d) const { return DGAlgebra(module_, std::move(d), product_, unit_); }

  friend bool operator==(const DGAlgebra& a, const DGAlgebra& b);

 private:
  GradedModule module_;
  Matrix differential_;
  BilinearTable product_;
  Vec unit_;
};

/// Name-based presentation; products with the unit are implied.
struct DGAlgebraSpec {
  RingPtr ring = nullptr;
  std::vector<BasisElement> basis;
  std::vector<std::tuple<std::string, std::string, Scalar>> differential;
  std::vector<std::tuple<std::string, std::string, std::string, Scalar>> product;
  std::string unit;
};

/// Throws std::invalid_argument naming a dangling basis reference.
DGAlgebra build_dga(const DGAlgebraSpec& spec);

/// Checks, in order: differential degree, product degree, unit degree, D∘D = 0,
/// unit laws, associativity, graded Leibniz.
std::optional<Violation> find_dga_violation(const DGAlgebra& a);
Validated<DGAlgebra> validate_dga(const DGAlgebra& a);

/// Degree -1 element with Dτ = ττ.
class TwistingElement {
 public:
  const Vec& value() const { return value_; }
  friend bool operator==(const TwistingElement& a, const TwistingElement& b) { return a.value_ == b.value_; }

 private:
  explicit TwistingElement(Vec v) : value_(std::move(v)) {}
  friend struct TwistingAccess;
  Vec value_;
};

struct TwistingCheck {
  std::optional<TwistingElement> element;
  /// Dτ − ττ
  Vec residual;

  bool ok() const { return element.has_value(); }
};

Vec twisting_residual(const DGAlgebra& a, const Vec& tau);
/// Throws std::invalid_argument unless τ is homogeneous of degree -1.
TwistingCheck is_twisting_element(const DGAlgebra& a, const Vec& tau);

class UnitGroupElement {
 public:
  const Vec& value() const { return value_; }
  const Vec& inverse() const { return inverse_; }

 private:
  UnitGroupElement(Vec v, Vec inv) : value_(std::move(v)), inverse_(std::move(inv)) {}
  friend std::optional<UnitGroupElement> as_unit(const DGAlgebra& a, const Vec& x);
  Vec value_;
  Vec inverse_;
};

/// Degree-0 x with a two-sided inverse, else nullopt. Throws for inhomogeneous x.
std::optional<UnitGroupElement> as_unit(const DGAlgebra& a, const Vec& x);
UnitGroupElement one_unit(const DGAlgebra& a);

/// x*y = x y x⁻¹ + (Dx) x⁻¹
Vec gauge_act_raw(const DGAlgebra& a, const UnitGroupElement& x, const Vec& y);
TwistingElement gauge_act(const DGAlgebra& a, const UnitGroupElement& x, const TwistingElement& y);

struct EnumerationLimits {
  std::uint64_t max_elements = 1'000'000;
};

/// T(A) in basis-lexicographic order. Finite rings only.
std::vector<TwistingElement> enumerate_twisting_elements(const DGAlgebra& a, EnumerationLimits limits = {});
/// Units of A_0 in basis-lexicographic order. Finite rings only.
std::vector<UnitGroupElement> enumerate_units(const DGAlgebra& a, EnumerationLimits limits = {});

struct GaugeEquivalence {
  enum class Verdict { equivalent, inequivalent, undecided };
  Verdict verdict = Verdict::undecided;
  std::optional<UnitGroupElement> witness;
  std::uint64_t candidates_tested = 0;
  /// Dimension of the solution space of x·y + Dx = y′·x.
  std::size_t solution_dimension = 0;
};

const char* to_string(GaugeEquivalence::Verdict v);

/// Solves x·y + Dx = y′·x for x ∈ A_0, then searches the solution space for a unit.
/// Over finite rings the search is exhaustive. Over infinite rings the kernel
/// parameters range over {0..dim A_0}^m, which decides existence exactly;
/// when that grid exceeds `search_bound` the verdict may be `undecided`.
GaugeEquivalence are_gauge_equivalent(const DGAlgebra& a, const TwistingElement& y, const TwistingElement& y2,
                                      std::uint64_t search_bound = 1000);

struct Orbit {
  std::vector<TwistingElement> members;
  TwistingElement representative;
};

struct FunctorDOptions {
  std::uint64_t max_work = 1'000'000;
  unsigned jobs = 1;
};

/// D(A) = T(A)/G by exhaustive application of every unit. Orbits and members are
/// listed in basis-lexicographic order; the representative is the least member.
/// Throws ResourceLimitExceeded when |G|·|T(A)| > max_work.
std::vector<Orbit> functor_D(const DGAlgebra& a, FunctorDOptions options = {});

/// d_τ(x) = Dx − τx. Accepts any degree -1 vector; d_τ² = 0 iff τ is twisting.
Matrix twisted_operator(const DGAlgebra& a, const Vec& tau);

}  // namespace dgt
