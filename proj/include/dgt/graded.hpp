#pragma once

#include <map>
#include <memory>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dgt/linalg.hpp"

namespace dgt {

/// (-1)^{pq}
constexpr int koszul_sign(int p, int q) { return ((p * q) % 2 == 0) ? 1 : -1; }

inline Scalar signed_one(RingPtr ring, int sign) { return sign > 0 ? ring->one() : -ring->one(); }

struct BasisElement {
  std::string name;
  int degree = 0;
};

/// Finite free graded module with named, homogeneous basis elements.
/// Lower (homological) grading: differentials have degree -1.
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(RingPtr ring, std::vector<BasisElement> basis);

  RingPtr ring() const { return data_->ring; }
  std::size_t dim() const { return data_->basis.size(); }
  const std::vector<BasisElement>& basis() const { return data_->basis; }
  const std::string& name(std::size_t i) const { return data_->basis[i].name; }
  int degree(std::size_t i) const { return data_->basis[i].degree; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::vector<std::size_t> indices_in_degree(int degree) const;
  /// Sorted, distinct degrees present.
  std::vector<int> degrees() const;

  Vec zero() const { return zero_vec(ring(), dim()); }
  Vec basis_vector(std::size_t i) const { return unit_vec(ring(), dim(), i); }
  Vec basis_vector(const std::string& name) const;

  /// Degree of a nonzero homogeneous element; nullopt for inhomogeneous ones.
  /// The zero vector is reported as homogeneous of every degree (returns `fallback`).
  std::optional<int> degree_of(const Vec& v, int fallback = 0) const;
  bool is_homogeneous(const Vec& v, int degree) const;

  /// Human-readable linear combination, e.g. "a + 2*u".
  std::string format(const Vec& v) const;

  /// Same basis over another ring (scalars are reinterpreted, not converted).
  GradedModule with_ring(RingPtr ring) const { return GradedModule(ring, data_->basis); }

  friend bool operator==(const GradedModule& a, const GradedModule& b);

 private:
  struct Data {
    RingPtr ring = nullptr;
    std::vector<BasisElement> basis;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

/// Basis (i, j) ordered with i major; names "x⊗y".
GradedModule tensor(const GradedModule& a, const GradedModule& b);

/// Degree-homogeneous linear map between graded modules.
class GradedMap {
 public:
  GradedMap() = default;
  /// Throws std::invalid_argument when some basis vector leaves the declared degree.
  GradedMap(GradedModule source, GradedModule target, int degree, Matrix matrix);
  static GradedMap identity(const GradedModule& m);
  static GradedMap zero(const GradedModule& source, const GradedModule& target, int degree);

  const GradedModule& source() const { return source_; }
  const GradedModule& target() const { return target_; }
  int degree() const { return degree_; }
  const Matrix& matrix() const { return matrix_; }

  Vec operator()(const Vec& v) const { return matrix_.apply(v); }

  /// First basis index violating homogeneity, if any.
  static std::optional<std::size_t> degree_violation(const GradedModule& source, const GradedModule& target,
                                                     int degree, const Matrix& matrix);

 private:
  GradedModule source_;
  GradedModule target_;
  int degree_ = 0;
  Matrix matrix_;
};

/// g ∘ f
GradedMap compose(const GradedMap& g, const GradedMap& f);

/// (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y).
GradedMap tensor_of_maps(const GradedMap& f, const GradedMap& g);

/// First failing identity found by a structure validator.
struct Violation {
  std::string identity;
  std::vector<std::string> elements;
  std::string detail;

  std::string describe() const;
};

template <class T>
struct Validated {
  std::optional<T> value;
  std::optional<Violation> violation;

  bool ok() const { return value.has_value(); }
};

/// Raised when an enumeration would exceed its configured work bound.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All elements of the degree-`degree` component over a finite ring, in
/// basis-lexicographic order (first basis coordinate most significant,
/// coefficients ordered by Ring::element index). Throws ResourceLimitExceeded
/// beyond `limit` elements and std::domain_error for infinite rings.
std::vector<Vec> enumerate_homogeneous(const GradedModule& m, int degree, std::uint64_t limit);

/// Same, but only combinations of the given vectors with coefficients in the
/// base field (the first vector is most significant).
std::vector<Vec> enumerate_span(RingPtr ring, std::size_t dim, const std::vector<Vec>& generators, std::uint64_t limit);

/// Hashable key of a vector over a finite ring.
std::vector<std::uint64_t> finite_key(const Vec& v);

/// dim H_k of (m, d) for each degree k present, d of degree -1, over a field.
std::map<int, std::size_t> homology_dimensions(const GradedModule& m, const Matrix& d);

/// Bilinear structure constants: entry (i, j) is the sparse image of e_i ⊗ e_j.
class BilinearTable {
 public:
  BilinearTable() = default;
  BilinearTable(RingPtr ring, std::size_t left_dim, std::size_t right_dim, std::size_t out_dim);

  std::size_t left_dim() const { return left_; }
  std::size_t right_dim() const { return right_; }
  std::size_t out_dim() const { return out_; }

  const SparseVec& at(std::size_t i, std::size_t j) const { return table_[i * right_ + j]; }
  void set(std::size_t i, std::size_t j, const Vec& value) { table_[i * right_ + j] = to_sparse(value); }
  void add(std::size_t i, std::size_t j, std::size_t k, const Scalar& c);
  Vec value(std::size_t i, std::size_t j) const;

  Vec apply(const Vec& x, const Vec& y) const;

  friend bool operator==(const BilinearTable& a, const BilinearTable& b);

 private:
  RingPtr ring_ = nullptr;
  std::size_t left_ = 0, right_ = 0, out_ = 0;
  std::vector<SparseVec> table_;
};

}  // namespace dgt
