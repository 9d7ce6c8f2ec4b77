#include "dgt/graded.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dgt {

GradedModule::GradedModule(RingPtr ring, std::vector<BasisElement> basis) {
  auto data = std::make_shared<Data>();
  data->ring = ring;
  data->basis = std::move(basis);
  for (std::size_t i = 0; i < data->basis.size(); ++i) {
    if (data->basis[i].name.empty()) throw std::invalid_argument("empty basis name");
    if (!data->index.emplace(data->basis[i].name, i).second)
      throw std::invalid_argument("duplicate basis name '" + data->basis[i].name + "'");
  }
  data_ = std::move(data);
}

std::optional<std::size_t> GradedModule::index_of(const std::string& name) const {
  auto it = data_->index.find(name);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> GradedModule::indices_in_degree(int degree) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i)
    if (data_->basis[i].degree == degree) out.push_back(i);
  return out;
}

std::vector<int> GradedModule::degrees() const {
  std::set<int> s;
  for (const auto& b : data_->basis) s.insert(b.degree);
  return {s.begin(), s.end()};
}

Vec GradedModule::basis_vector(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw std::invalid_argument("unknown basis element '" + name + "'");
  return basis_vector(*i);
}

std::optional<int> GradedModule::degree_of(const Vec& v, int fallback) const {
  std::optional<int> deg;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (deg && *deg != degree(i)) return std::nullopt;
    deg = degree(i);
  }
  return deg ? deg : std::optional<int>(fallback);
}

bool GradedModule::is_homogeneous(const Vec& v, int degree) const {
  if (v.size() != dim()) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero() && this->degree(i) != degree) return false;
  return true;
}

std::string GradedModule::format(const Vec& v) const {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    std::string coef = v[i].to_string();
    const bool compound = coef.find_first_of("+ ") != std::string::npos ||
                          (coef.find('-', 1) != std::string::npos);
    bool negative = false;
    if (!compound && coef[0] == '-') {
      negative = true;
      coef.erase(0, 1);
    }
    std::string term = coef == "1" ? name(i) : (compound ? "(" + coef + ")" : coef) + "*" + name(i);
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += negative ? " - " + term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

bool operator==(const GradedModule& a, const GradedModule& b) {
  if (a.data_ == b.data_) return true;
  if (a.ring() != b.ring() || a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.name(i) != b.name(i) || a.degree(i) != b.degree(i)) return false;
  return true;
}

GradedModule tensor(const GradedModule& a, const GradedModule& b) {
  if (a.ring() != b.ring()) throw std::invalid_argument("tensor: ring mismatch");
  std::vector<BasisElement> basis;
  basis.reserve(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      basis.push_back({a.name(i) + "⊗" + b.name(j), a.degree(i) + b.degree(j)});
  return GradedModule(a.ring(), std::move(basis));
}

std::string Violation::describe() const {
  std::string out = identity;
  if (!elements.empty()) {
    out += " on (";
    for (std::size_t i = 0; i < elements.size(); ++i) out += (i ? ", " : "") + elements[i];
    out += ")";
  }
  if (!detail.empty()) out += ": " + detail;
  return out;
}

std::vector<Vec> enumerate_span(RingPtr ring, std::size_t dim, const std::vector<Vec>& generators, std::uint64_t limit) {
  if (!ring->is_finite()) throw std::domain_error("enumeration requires a finite scalar ring");
  RingPtr base = ring->base();
  const std::uint64_t q = static_cast<std::uint64_t>(base->modulus());
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (total > limit / q) throw ResourceLimitExceeded("enumeration exceeds bound " + std::to_string(limit));
    total *= q;
  }
  if (total > limit) throw ResourceLimitExceeded("enumeration exceeds bound " + std::to_string(limit));
  std::vector<Scalar> coefs;
  for (std::uint64_t c = 0; c < q; ++c) coefs.push_back(ring->from_int(static_cast<long long>(c)));
  std::vector<Vec> out;
  out.reserve(total);
  std::vector<std::uint64_t> digits(generators.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    Vec v = zero_vec(ring, dim);
    for (std::size_t g = 0; g < generators.size(); ++g)
      if (digits[g]) axpy(v, coefs[digits[g]], generators[g]);
    out.push_back(std::move(v));
    for (std::size_t g = generators.size(); g-- > 0;) {
      if (++digits[g] < q) break;
      digits[g] = 0;
    }
  }
  return out;
}

std::vector<Vec> enumerate_homogeneous(const GradedModule& m, int degree, std::uint64_t limit) {
  RingPtr ring = m.ring();
  if (!ring->is_finite()) throw std::domain_error("enumeration requires a finite scalar ring");
  const auto idx = m.indices_in_degree(degree);
  const std::uint64_t q = *ring->cardinality();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (total > limit / q) throw ResourceLimitExceeded("enumeration exceeds bound " + std::to_string(limit));
    total *= q;
  }
  if (total > limit) throw ResourceLimitExceeded("enumeration exceeds bound " + std::to_string(limit));
  std::vector<Vec> out;
  out.reserve(total);
  std::vector<std::uint64_t> digits(idx.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    Vec v = m.zero();
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (digits[k]) v[idx[k]] = ring->element(digits[k]);
    out.push_back(std::move(v));
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++digits[k] < q) break;
      digits[k] = 0;
    }
  }
  return out;
}

std::vector<std::uint64_t> finite_key(const Vec& v) {
  std::vector<std::uint64_t> key;
  key.reserve(v.size());
  for (const auto& x : v) key.push_back(x.ring()->index_of(x));
  return key;
}

std::map<int, std::size_t> homology_dimensions(const GradedModule& m, const Matrix& d) {
  std::map<int, std::size_t> out;
  auto rank_from = [&](int k) {
    const auto src = m.indices_in_degree(k), tgt = m.indices_in_degree(k - 1);
    if (src.empty() || tgt.empty()) return std::size_t{0};
    return rank(d.block(tgt, src));
  };
  for (int k : m.degrees()) out[k] = m.indices_in_degree(k).size() - rank_from(k) - rank_from(k + 1);
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> GradedMap::degree_violation(const GradedModule& source, const GradedModule& target,
                                                       int degree, const Matrix& matrix) {
  for (std::size_t c = 0; c < source.dim(); ++c)
    for (std::size_t r = 0; r < target.dim(); ++r)
      if (!matrix(r, c).is_zero() && target.degree(r) != source.degree(c) + degree) return c;
  return std::nullopt;
}

GradedMap::GradedMap(GradedModule source, GradedModule target, int degree, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim())
    throw std::invalid_argument("graded map: matrix shape does not match modules");
  if (auto bad = degree_violation(source_, target_, degree_, matrix_))
    throw std::invalid_argument("graded map: image of '" + source_.name(*bad) + "' is not of degree " +
                                std::to_string(source_.degree(*bad) + degree_));
}

GradedMap GradedMap::identity(const GradedModule& m) { return GradedMap(m, m, 0, Matrix::identity(m.ring(), m.dim())); }

GradedMap GradedMap::zero(const GradedModule& source, const GradedModule& target, int degree) {
  return GradedMap(source, target, degree, Matrix(source.ring(), target.dim(), source.dim()));
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (!(g.source() == f.target())) throw std::invalid_argument("compose: incompatible modules");
  return GradedMap(f.source(), g.target(), f.degree() + g.degree(), g.matrix() * f.matrix());
}

GradedMap tensor_of_maps(const GradedMap& f, const GradedMap& g) {
  if (f.source().ring() != g.source().ring()) throw std::invalid_argument("tensor_of_maps: ring mismatch");
  RingPtr ring = f.source().ring();
  GradedModule src = tensor(f.source(), g.source());
  GradedModule tgt = tensor(f.target(), g.target());
  Matrix m(ring, tgt.dim(), src.dim());
  const std::size_t fs = f.source().dim(), gs = g.source().dim();
  const std::size_t ft = f.target().dim(), gt = g.target().dim();
  for (std::size_t x = 0; x < fs; ++x)
    for (std::size_t y = 0; y < gs; ++y) {
      const Scalar sign = signed_one(ring, koszul_sign(g.degree(), f.source().degree(x)));
      for (std::size_t fx = 0; fx < ft; ++fx) {
        const Scalar& a = f.matrix()(fx, x);
        if (a.is_zero()) continue;
        for (std::size_t gy = 0; gy < gt; ++gy) {
          const Scalar& b = g.matrix()(gy, y);
          if (!b.is_zero()) m(fx * gt + gy, x * gs + y) = sign * a * b;
        }
      }
    }
  return GradedMap(src, tgt, f.degree() + g.degree(), std::move(m));
}

// ---------------------------------------------------------------------------

BilinearTable::BilinearTable(RingPtr ring, std::size_t left_dim, std::size_t right_dim, std::size_t out_dim)
    : ring_(ring), left_(left_dim), right_(right_dim), out_(out_dim), table_(left_dim * right_dim) {}

void BilinearTable::add(std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
  auto& entry = table_[i * right_ + j];
  auto it = std::lower_bound(entry.begin(), entry.end(), k, [](const auto& p, std::size_t key) { return p.first < key; });
  if (it != entry.end() && it->first == k) {
    it->second += c;
    if (it->second.is_zero()) entry.erase(it);
  } else if (!c.is_zero()) {
    entry.insert(it, {k, c});
  }
}

Vec BilinearTable::value(std::size_t i, std::size_t j) const {
  Vec v = zero_vec(ring_, out_);
  for (const auto& [k, c] : at(i, j)) v[k] = c;
  return v;
}

Vec BilinearTable::apply(const Vec& x, const Vec& y) const {
  Vec out = zero_vec(ring_, out_);
  for (std::size_t i = 0; i < left_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < right_; ++j) {
      if (y[j].is_zero()) continue;
      const auto& e = at(i, j);
      if (e.empty()) continue;
      axpy(out, x[i] * y[j], e);
    }
  }
  return out;
}

bool operator==(const BilinearTable& a, const BilinearTable& b) {
  return a.left_ == b.left_ && a.right_ == b.right_ && a.out_ == b.out_ && a.table_ == b.table_;
}

}  // namespace dgt
