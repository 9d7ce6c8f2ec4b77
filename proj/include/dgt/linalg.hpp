#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dgt/scalar.hpp"

namespace dgt {

/// Coefficient vector with respect to some fixed basis; all entries share one ring.
using Vec = std::vector<Scalar>;

Vec zero_vec(RingPtr ring, std::size_t n);
Vec unit_vec(RingPtr ring, std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
std::size_t first_nonzero(const Vec& v);  // v.size() when zero

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Scalar& s, const Vec& v);
Vec& operator+=(Vec& a, const Vec& b);
Vec& operator-=(Vec& a, const Vec& b);
/// a += s * b
void axpy(Vec& a, const Scalar& s, const Vec& b);

/// Sparse vector: (index, coefficient) pairs with nonzero coefficients, sorted by index.
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;
SparseVec to_sparse(const Vec& v);
void axpy(Vec& a, const Scalar& s, const SparseVec& b);

/// Dense row-major matrix. Column j holds the image of the j-th source basis vector.
class Matrix {
 public:
  Matrix() = default;
  Matrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static Matrix identity(RingPtr ring, std::size_t n);
  static Matrix from_columns(RingPtr ring, std::size_t rows, const std::vector<Vec>& columns);

  RingPtr ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  void set_column(std::size_t c, const Vec& v);
  Vec row(std::size_t r) const;

  Vec apply(const Vec& v) const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;
  /// Rows/columns restricted to the given index lists.
  Matrix block(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  bool is_zero() const;
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  RingPtr ring_ = nullptr;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Solution set of A x = b: particular solution plus a kernel basis.
struct LinearSolution {
  enum class Status {
    solvable,
    inconsistent,
    /// Local ring: a column had nonzero entries but none of them a unit.
    non_unit_pivot,
  };
  Status status = Status::inconsistent;
  Vec particular;
  std::vector<Vec> kernel;

  bool solvable() const { return status == Status::solvable; }
};

/// Exact Gaussian elimination. Pivot = first unit in the column at or below
/// the current row, so output is reproducible. Free variables are set to 0
/// in the particular solution.
LinearSolution solve_linear(const Matrix& a, const Vec& rhs);

/// Kernel basis over a field (or local ring when every pivot is a unit).
std::vector<Vec> kernel_basis(const Matrix& a);
std::size_t rank(const Matrix& a);

/// Independent subset selection: indices of vectors (in order) that extend the
/// span of `base` greedily.
std::vector<std::size_t> greedy_extension(RingPtr ring, std::size_t dim, const std::vector<Vec>& base,
                                          const std::vector<Vec>& candidates);

/// Homology at the middle of  X --incoming--> Y --outgoing--> Z  over a field,
/// with deterministic representatives.
class HomologyAt {
 public:
  /// `preferred` cycles are tried first when picking representatives.
  HomologyAt(const Matrix& incoming, const Matrix& outgoing, const std::vector<Vec>& preferred = {});

  std::size_t dimension() const { return representatives_.size(); }
  const std::vector<Vec>& representatives() const { return representatives_; }
  const std::vector<Vec>& cycles() const { return cycles_; }
  const std::vector<Vec>& boundaries() const { return boundaries_; }

  bool is_cycle(const Vec& y) const;
  /// Coordinates of the class of a cycle with respect to representatives().
  Vec class_coordinates(const Vec& cycle) const;
  /// Some x with incoming(x) = y, or nullopt.
  std::optional<Vec> preimage(const Vec& y) const;

 private:
  Matrix incoming_;
  Matrix outgoing_;
  std::vector<Vec> cycles_;
  std::vector<Vec> boundaries_;
  std::vector<Vec> representatives_;
  Matrix reps_then_boundaries_;
};

}  // namespace dgt
