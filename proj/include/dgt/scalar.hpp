#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dgt {

class Ring;
class Scalar;

/// Rings are interned and immutable; a RingPtr is valid for the lifetime of the process.
using RingPtr = const Ring*;

enum class RingKind { rational, prime, truncated };

/// Exact coefficient ring.
///
/// Three families are supported:
///   - Q, the rationals (arbitrary precision);
///   - F_p for a prime p;
///   - base[t_1..t_k]/(all monomials of total degree order+1), base = Q or F_p.
///     The last family is local Artinian with maximal ideal spanned by the
///     non-constant monomials; dual numbers are the case k = 1, order = 1.
class Ring {
 public:
  static RingPtr rationals();
  static RingPtr prime_field(std::int64_t p);
  static RingPtr truncated(RingPtr base, std::vector<std::string> variables, int order);
  static RingPtr dual_numbers(RingPtr base);

  /// Descriptors: "Q", "Fp:p", "<base>[t]/t^n", "<base>[eps]/eps^2",
  /// "<base>[t1,t2]/deg^n" (kills every monomial of total degree >= n).
  static RingPtr parse(std::string_view descriptor);

  RingKind kind() const { return kind_; }
  std::int64_t modulus() const { return modulus_; }
  RingPtr base() const { return base_ ? base_ : this; }
  int variables() const { return static_cast<int>(variable_names_.size()); }
  const std::vector<std::string>& variable_names() const { return variable_names_; }
  /// Socle degree n: the maximal ideal satisfies m^{n+1} = 0.
  int order() const { return order_; }
  const std::vector<std::vector<int>>& monomials() const { return monomials_; }
  /// Index of the product monomial, or -1 when it lies in the killed ideal.
  int monomial_product(int i, int j) const {
    return product_table_[static_cast<std::size_t>(i) * monomials_.size() + static_cast<std::size_t>(j)];
  }
  int monomial_degree(int i) const;

  const std::string& descriptor() const { return descriptor_; }
  bool is_field() const { return kind_ != RingKind::truncated; }
  bool is_finite() const { return base()->kind_ == RingKind::prime; }
  std::int64_t characteristic() const { return base()->kind_ == RingKind::prime ? base()->modulus_ : 0; }
  /// Number of elements, if finite and representable.
  std::optional<std::uint64_t> cardinality() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long value) const;
  Scalar from_rational(const mpq_class& value) const;
  /// t_i as an element (truncated rings only).
  Scalar variable(int i) const;
  Scalar monomial(int index, const Scalar& base_coefficient) const;

  /// Bijection {0..cardinality-1} -> ring, for finite rings. Index 0 is zero;
  /// the order is lexicographic on monomial coefficients.
  Scalar element(std::uint64_t index) const;
  std::uint64_t index_of(const Scalar& s) const;

  Scalar parse_scalar(std::string_view text) const;

  Ring(const Ring&) = delete;
  Ring& operator=(const Ring&) = delete;

 private:
  Ring() = default;
  friend struct RingRegistry;

  RingKind kind_ = RingKind::rational;
  std::int64_t modulus_ = 0;
  RingPtr base_ = nullptr;
  std::vector<std::string> variable_names_;
  int order_ = 0;
  std::vector<std::vector<int>> monomials_;
  std::vector<int> product_table_;
  std::string descriptor_;
};

bool is_prime(std::int64_t n);

/// Exact ring element tagged with its ring.
class Scalar {
 public:
  Scalar() = default;

  RingPtr ring() const { return ring_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;
  /// Throws std::domain_error for non-units.
  Scalar inverse() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::int64_t residue() const { return std::get<std::int64_t>(value_); }
  const std::vector<Scalar>& coefficients() const { return std::get<std::vector<Scalar>>(value_); }
  /// Constant term for truncated rings; the value itself otherwise.
  Scalar constant_term() const;

 private:
  friend class Ring;
  explicit Scalar(RingPtr ring, std::int64_t r) : ring_(ring), value_(r) {}
  explicit Scalar(RingPtr ring, mpq_class q) : ring_(ring), value_(std::move(q)) {}
  explicit Scalar(RingPtr ring, std::vector<Scalar> c) : ring_(ring), value_(std::move(c)) {}

  void check_same_ring(const Scalar& other) const;

  RingPtr ring_ = nullptr;
  std::variant<std::int64_t, mpq_class, std::vector<Scalar>> value_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace dgt
