#include "dgt/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace dgt {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::int64_t mod_reduce(const mpz_class& z, std::int64_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return r.get_si();
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("not invertible modulo " + std::to_string(p));
  return t < 0 ? t + p : t;
}

mpq_class parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty coefficient");
  if (s.front() == '+') s.erase(0, 1);
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
      throw std::invalid_argument("malformed exact coefficient '" + std::string(text) + "'");
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed exact coefficient '" + std::string(text) + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct RingRegistry {
  std::mutex mutex;
  std::map<std::string, std::unique_ptr<Ring>> rings;

  static RingRegistry& instance() {
    static RingRegistry registry;
    return registry;
  }

  RingPtr intern(std::unique_ptr<Ring> ring) {
    std::lock_guard lock(mutex);
    auto [it, inserted] = rings.try_emplace(ring->descriptor_, nullptr);
    if (inserted) it->second = std::move(ring);
    return it->second.get();
  }

  static std::unique_ptr<Ring> fresh() { return std::unique_ptr<Ring>(new Ring()); }
};

RingPtr Ring::rationals() {
  static RingPtr q = [] {
    auto r = RingRegistry::fresh();
    r->kind_ = RingKind::rational;
    r->descriptor_ = "Q";
    return RingRegistry::instance().intern(std::move(r));
  }();
  return q;
}

RingPtr Ring::prime_field(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("Fp:" + std::to_string(p) + " - modulus is not prime");
  if (p > (std::int64_t{1} << 31)) throw std::invalid_argument("prime modulus too large");
  auto r = RingRegistry::fresh();
  r->kind_ = RingKind::prime;
  r->modulus_ = p;
  r->descriptor_ = "Fp:" + std::to_string(p);
  return RingRegistry::instance().intern(std::move(r));
}

RingPtr Ring::truncated(RingPtr base, std::vector<std::string> variables, int order) {
  if (!base->is_field()) throw std::invalid_argument("truncated ring base must be Q or F_p");
  if (variables.empty()) throw std::invalid_argument("truncated ring needs at least one variable");
  if (order < 1) throw std::invalid_argument("truncated ring order must be >= 1");
  auto r = RingRegistry::fresh();
  r->kind_ = RingKind::truncated;
  r->base_ = base;
  r->order_ = order;
  r->variable_names_ = std::move(variables);
  const int k = static_cast<int>(r->variable_names_.size());

  // Monomials sorted by total degree, then lexicographically descending in exponents.
  std::vector<std::vector<int>> all;
  std::vector<int> e(static_cast<std::size_t>(k), 0);
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == k) {
      all.push_back(e);
      return;
    }
    for (int x = remaining; x >= 0; --x) {
      e[static_cast<std::size_t>(var)] = x;
      self(self, var + 1, remaining - x);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  rec(rec, 0, order);
  auto total = [](const std::vector<int>& m) {
    int s = 0;
    for (int x : m) s += x;
    return s;
  };
  std::stable_sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
    if (total(a) != total(b)) return total(a) < total(b);
    return a > b;
  });
  r->monomials_ = std::move(all);
  const std::size_t n = r->monomials_.size();
  r->product_table_.assign(n * n, -1);
  std::map<std::vector<int>, int> lookup;
  for (std::size_t i = 0; i < n; ++i) lookup[r->monomials_[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<int> m(static_cast<std::size_t>(k));
      for (int v = 0; v < k; ++v) m[static_cast<std::size_t>(v)] = r->monomials_[i][static_cast<std::size_t>(v)] + r->monomials_[j][static_cast<std::size_t>(v)];
      auto it = lookup.find(m);
      if (it != lookup.end()) r->product_table_[i * n + j] = it->second;
    }

  if (k == 1) {
    r->descriptor_ = base->descriptor() + "[" + r->variable_names_[0] + "]/" + r->variable_names_[0] + "^" +
                     std::to_string(order + 1);
  } else {
    std::string vars;
    for (int v = 0; v < k; ++v) vars += (v ? "," : "") + r->variable_names_[static_cast<std::size_t>(v)];
    r->descriptor_ = base->descriptor() + "[" + vars + "]/deg^" + std::to_string(order + 1);
  }
  return RingRegistry::instance().intern(std::move(r));
}

RingPtr Ring::dual_numbers(RingPtr base) { return truncated(base, {"eps"}, 1); }

RingPtr Ring::parse(std::string_view descriptor) {
  std::string d = trim(descriptor);
  std::string head = d, tail;
  if (auto pos = d.find('['); pos != std::string::npos) {
    head = d.substr(0, pos);
    tail = d.substr(pos);
  }
  RingPtr base = nullptr;
  if (head == "Q") {
    base = rationals();
  } else if (head.rfind("Fp:", 0) == 0) {
    const std::string digits = head.substr(3);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("malformed prime field descriptor '" + d + "'");
    base = prime_field(std::stoll(digits));
  } else {
    throw std::invalid_argument("unknown scalar ring '" + d + "'");
  }
  if (tail.empty()) return base;

  const auto close = tail.find(']');
  if (close == std::string::npos || close + 2 > tail.size() || tail[close + 1] != '/')
    throw std::invalid_argument("malformed truncated ring descriptor '" + d + "'");
  std::vector<std::string> vars;
  {
    std::string inner = tail.substr(1, close - 1);
    std::size_t start = 0;
    while (start <= inner.size()) {
      auto comma = inner.find(',', start);
      std::string v = trim(inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (v.empty()) throw std::invalid_argument("empty variable name in '" + d + "'");
      vars.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  std::string ideal = tail.substr(close + 2);
  auto caret = ideal.find('^');
  if (caret == std::string::npos) throw std::invalid_argument("malformed ideal in '" + d + "'");
  std::string var = ideal.substr(0, caret);
  int power = std::stoi(ideal.substr(caret + 1));
  if (vars.size() == 1 ? var != vars[0] : var != "deg")
    throw std::invalid_argument("ideal generator '" + var + "' does not match variables in '" + d + "'");
  if (power < 2) throw std::invalid_argument("truncation power must be >= 2 in '" + d + "'");
  return truncated(base, vars, power - 1);
}

int Ring::monomial_degree(int i) const {
  int s = 0;
  for (int x : monomials_[static_cast<std::size_t>(i)]) s += x;
  return s;
}

std::optional<std::uint64_t> Ring::cardinality() const {
  if (!is_finite()) return std::nullopt;
  const std::uint64_t p = static_cast<std::uint64_t>(base()->modulus_);
  if (kind_ == RingKind::prime) return p;
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    if (n > UINT64_MAX / p) return std::nullopt;
    n *= p;
  }
  return n;
}

Scalar Ring::zero() const { return from_int(0); }
Scalar Ring::one() const { return from_int(1); }

Scalar Ring::from_int(long long value) const {
  switch (kind_) {
    case RingKind::rational:
      return Scalar(this, mpq_class(mpz_class(static_cast<long>(value))));
    case RingKind::prime: {
      std::int64_t r = value % modulus_;
      return Scalar(this, r < 0 ? r + modulus_ : r);
    }
    case RingKind::truncated: {
      std::vector<Scalar> c(monomials_.size(), base_->zero());
      c[0] = base_->from_int(value);
      return Scalar(this, std::move(c));
    }
  }
  throw std::logic_error("unreachable");
}

Scalar Ring::from_rational(const mpq_class& value) const {
  switch (kind_) {
    case RingKind::rational: {
      mpq_class q = value;
      q.canonicalize();
      return Scalar(this, std::move(q));
    }
    case RingKind::prime: {
      const std::int64_t num = mod_reduce(value.get_num(), modulus_);
      const std::int64_t den = mod_reduce(value.get_den(), modulus_);
      if (den == 0) throw std::domain_error("denominator vanishes in " + descriptor_);
      return Scalar(this, static_cast<std::int64_t>((static_cast<__int128>(num) * mod_inverse(den, modulus_)) % modulus_));
    }
    case RingKind::truncated: {
      std::vector<Scalar> c(monomials_.size(), base_->zero());
      c[0] = base_->from_rational(value);
      return Scalar(this, std::move(c));
    }
  }
  throw std::logic_error("unreachable");
}

Scalar Ring::variable(int i) const {
  if (kind_ != RingKind::truncated) throw std::logic_error("ring has no variables");
  std::vector<int> e(variable_names_.size(), 0);
  e[static_cast<std::size_t>(i)] = 1;
  for (std::size_t m = 0; m < monomials_.size(); ++m)
    if (monomials_[m] == e) return monomial(static_cast<int>(m), base_->one());
  throw std::logic_error("variable outside truncation");
}

Scalar Ring::monomial(int index, const Scalar& base_coefficient) const {
  if (kind_ != RingKind::truncated) throw std::logic_error("ring has no monomials");
  std::vector<Scalar> c(monomials_.size(), base_->zero());
  c[static_cast<std::size_t>(index)] = base_coefficient;
  return Scalar(this, std::move(c));
}

Scalar Ring::element(std::uint64_t index) const {
  if (!is_finite()) throw std::logic_error("element enumeration requires a finite ring");
  if (kind_ == RingKind::prime) return Scalar(this, static_cast<std::int64_t>(index % static_cast<std::uint64_t>(modulus_)));
  const std::uint64_t p = static_cast<std::uint64_t>(base_->modulus_);
  std::vector<Scalar> c(monomials_.size(), base_->zero());
  for (std::size_t m = monomials_.size(); m-- > 0;) {
    c[m] = Scalar(base_, static_cast<std::int64_t>(index % p));
    index /= p;
  }
  return Scalar(this, std::move(c));
}

std::uint64_t Ring::index_of(const Scalar& s) const {
  if (!is_finite()) throw std::logic_error("element enumeration requires a finite ring");
  if (kind_ == RingKind::prime) return static_cast<std::uint64_t>(s.residue());
  const std::uint64_t p = static_cast<std::uint64_t>(base_->modulus_);
  std::uint64_t idx = 0;
  for (const auto& c : s.coefficients()) idx = idx * p + static_cast<std::uint64_t>(c.residue());
  return idx;
}

Scalar Ring::parse_scalar(std::string_view text) const {
  if (kind_ != RingKind::truncated) return from_rational(parse_rational(text));

  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty coefficient");
  Scalar result = zero();
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    while (i < s.size() && (s[i] == '+' || s[i] == '-' || std::isspace(static_cast<unsigned char>(s[i])))) {
      if (s[i] == '-') negative = !negative;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && !(s[j] == '-' && j > i)) ++j;
    std::string term = trim(std::string_view(s).substr(i, j - i));
    if (term.empty()) throw std::invalid_argument("malformed polynomial '" + s + "'");
    Scalar coef = base_->one();
    std::vector<int> exps(variable_names_.size(), 0);
    std::size_t start = 0;
    while (start <= term.size()) {
      auto star = term.find('*', start);
      std::string factor = trim(term.substr(start, star == std::string::npos ? std::string::npos : star - start));
      std::string name = factor;
      int power = 1;
      if (auto caret = factor.find('^'); caret != std::string::npos) {
        name = trim(factor.substr(0, caret));
        power = std::stoi(factor.substr(caret + 1));
      }
      auto it = std::find(variable_names_.begin(), variable_names_.end(), name);
      if (it != variable_names_.end()) {
        exps[static_cast<std::size_t>(it - variable_names_.begin())] += power;
      } else {
        coef *= base_->from_rational(parse_rational(factor));
      }
      if (star == std::string::npos) break;
      start = star + 1;
    }
    if (negative) coef = -coef;
    auto mit = std::find(monomials_.begin(), monomials_.end(), exps);
    if (mit != monomials_.end()) result += monomial(static_cast<int>(mit - monomials_.begin()), coef);
    i = j;
  }
  return result;
}

// ---------------------------------------------------------------------------

void Scalar::check_same_ring(const Scalar& other) const {
  if (ring_ != other.ring_) {
    throw std::invalid_argument("scalar ring mismatch: " + (ring_ ? ring_->descriptor() : std::string("<none>")) +
                                " vs " + (other.ring_ ? other.ring_->descriptor() : std::string("<none>")));
  }
}

bool Scalar::is_zero() const {
  switch (value_.index()) {
    case 0: return std::get<0>(value_) == 0;
    case 1: return std::get<1>(value_) == 0;
    default:
      for (const auto& c : std::get<2>(value_))
        if (!c.is_zero()) return false;
      return true;
  }
}

bool Scalar::is_one() const { return ring_ && *this == ring_->one(); }

bool Scalar::is_unit() const { return !constant_term().is_zero(); }

Scalar Scalar::constant_term() const {
  if (value_.index() == 2) return std::get<2>(value_)[0];
  return *this;
}

Scalar Scalar::inverse() const {
  if (!is_unit()) throw std::domain_error("inverse of a non-unit " + to_string());
  switch (value_.index()) {
    case 0: return Scalar(ring_, mod_inverse(std::get<0>(value_), ring_->modulus()));
    case 1: return Scalar(ring_, mpq_class(1) / std::get<1>(value_));
    default: {
      // x = c (1 + n) with n nilpotent: x^{-1} = c^{-1} sum_k (-n)^k
      const Scalar c_inv = constant_term().inverse();
      std::vector<Scalar> scaled = coefficients();
      for (auto& c : scaled) c *= c_inv;
      scaled[0] = ring_->base()->zero();
      const Scalar minus_n = -Scalar(ring_, std::move(scaled));
      Scalar sum = ring_->one();
      Scalar power = ring_->one();
      for (int k = 1; k <= ring_->order(); ++k) {
        power *= minus_n;
        sum += power;
      }
      std::vector<Scalar> out = sum.coefficients();
      for (auto& c : out) c *= c_inv;
      return Scalar(ring_, std::move(out));
    }
  }
}

Scalar Scalar::operator-() const {
  switch (value_.index()) {
    case 0: {
      std::int64_t r = std::get<0>(value_);
      return Scalar(ring_, r == 0 ? std::int64_t{0} : ring_->modulus() - r);
    }
    case 1: return Scalar(ring_, mpq_class(-std::get<1>(value_)));
    default: {
      std::vector<Scalar> c = std::get<2>(value_);
      for (auto& x : c) x = -x;
      return Scalar(ring_, std::move(c));
    }
  }
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_same_ring(other);
  switch (value_.index()) {
    case 0: {
      auto& r = std::get<0>(value_);
      r += other.residue();
      if (r >= ring_->modulus()) r -= ring_->modulus();
      break;
    }
    case 1: std::get<1>(value_) += other.rational(); break;
    default: {
      auto& c = std::get<2>(value_);
      const auto& o = other.coefficients();
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += o[i];
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  check_same_ring(other);
  switch (value_.index()) {
    case 0: {
      auto& r = std::get<0>(value_);
      r = static_cast<std::int64_t>((static_cast<__int128>(r) * other.residue()) % ring_->modulus());
      break;
    }
    case 1: std::get<1>(value_) *= other.rational(); break;
    default: {
      const auto& a = std::get<2>(value_);
      const auto& b = other.coefficients();
      std::vector<Scalar> out(a.size(), ring_->base()->zero());
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (b[j].is_zero()) continue;
          const int k = ring_->monomial_product(static_cast<int>(i), static_cast<int>(j));
          if (k >= 0) out[static_cast<std::size_t>(k)] += a[i] * b[j];
        }
      }
      value_ = std::move(out);
    }
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.ring_ != b.ring_) return false;
  switch (a.value_.index()) {
    case 0: return std::get<0>(a.value_) == std::get<0>(b.value_);
    case 1: return std::get<1>(a.value_) == std::get<1>(b.value_);
    default: return std::get<2>(a.value_) == std::get<2>(b.value_);
  }
}

std::string Scalar::to_string() const {
  switch (value_.index()) {
    case 0: return std::to_string(std::get<0>(value_));
    case 1: return std::get<1>(value_).get_str();
    default: {
      const auto& c = std::get<2>(value_);
      std::string out;
      for (std::size_t m = 0; m < c.size(); ++m) {
        if (c[m].is_zero()) continue;
        std::string coef = c[m].to_string();
        bool negative = false;
        if (!coef.empty() && coef[0] == '-') {
          negative = true;
          coef.erase(0, 1);
        }
        std::string mono;
        const auto& e = ring_->monomials()[m];
        for (std::size_t v = 0; v < e.size(); ++v) {
          if (e[v] == 0) continue;
          if (!mono.empty()) mono += "*";
          mono += ring_->variable_names()[v];
          if (e[v] > 1) mono += "^" + std::to_string(e[v]);
        }
        std::string term = mono.empty() ? coef : (coef == "1" ? mono : coef + "*" + mono);
        if (out.empty())
          out = negative ? "-" + term : term;
        else
          out += negative ? " - " + term : " + " + term;
      }
      return out.empty() ? "0" : out;
    }
  }
}

}  // namespace dgt
