#include "dgt/coalgebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace dgt {

namespace {

using Tensor2 = std::map<std::pair<std::size_t, std::size_t>, Scalar>;
using TensorN = std::map<std::vector<std::size_t>, Scalar>;

template <class Map, class Key>
void accumulate(Map& m, const Key& key, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = m.emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

Tensor2 apply_coproduct(const DGCoalgebra& c, const Vec& x) {
  Tensor2 out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (const auto& t : c.coproduct(i)) accumulate(out, std::make_pair(t.left, t.right), x[i] * t.coef);
  }
  return out;
}

std::string describe(const GradedModule& m, const Tensor2& t) {
  std::string s;
  for (const auto& [k, v] : t) s += (s.empty() ? "" : " + ") + v.to_string() + "*" + m.name(k.first) + "⊗" + m.name(k.second);
  return s.empty() ? "0" : s;
}

bool check_cocommutative(const GradedModule& m, const std::vector<std::vector<CoproductTerm>>& coproduct) {
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Tensor2 a, b;
    for (const auto& t : coproduct[i]) {
      accumulate(a, std::make_pair(t.left, t.right), t.coef);
      accumulate(b, std::make_pair(t.right, t.left),
                 signed_one(m.ring(), koszul_sign(m.degree(t.left), m.degree(t.right))) * t.coef);
    }
    if (a != b) return false;
  }
  return true;
}

}  // namespace

DGCoalgebra::DGCoalgebra(GradedModule module, Matrix differential, std::vector<std::vector<CoproductTerm>> coproduct,
                         Vec counit, Vec coaugmentation, bool cocommutative, int truncation)
    : module_(std::move(module)), differential_(std::move(differential)), coproduct_(std::move(coproduct)),
      counit_(std::move(counit)), coaugmentation_(std::move(coaugmentation)), cocommutative_(cocommutative),
      truncation_(truncation) {
  const std::size_t n = module_.dim();
  if (differential_.rows() != n || differential_.cols() != n) throw std::invalid_argument("differential shape mismatch");
  if (coproduct_.size() != n || counit_.size() != n || coaugmentation_.size() != n)
    throw std::invalid_argument("coalgebra shape mismatch");
  for (const auto& terms : coproduct_)
    for (const auto& t : terms)
      if (t.left >= n || t.right >= n) throw std::invalid_argument("coproduct index out of range");
}

Scalar DGCoalgebra::counit(const Vec& x) const {
  Scalar s = ring()->zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero() && !counit_[i].is_zero()) s += x[i] * counit_[i];
  return s;
}

DGCoalgebra DGCoalgebra::with_differential(Matrix d) const {
  return DGCoalgebra(module_, std::move(d), coproduct_, counit_, coaugmentation_, cocommutative_, truncation_);
}

bool operator==(const DGCoalgebra& a, const DGCoalgebra& b) {
  if (!(a.module_ == b.module_) || !(a.differential_ == b.differential_) || a.counit_ != b.counit_ ||
      a.coaugmentation_ != b.coaugmentation_ || a.cocommutative_ != b.cocommutative_ || a.truncation_ != b.truncation_)
    return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Tensor2 x, y;
    for (const auto& t : a.coproduct_[i]) accumulate(x, std::make_pair(t.left, t.right), t.coef);
    for (const auto& t : b.coproduct_[i]) accumulate(y, std::make_pair(t.left, t.right), t.coef);
    if (x != y) return false;
  }
  return true;
}

std::optional<Violation> find_coalgebra_violation(const DGCoalgebra& c) {
  const GradedModule& m = c.module();
  const std::size_t n = m.dim();
  RingPtr r = c.ring();
  if (auto bad = GradedMap::degree_violation(m, m, -1, c.differential()))
    return Violation{"differential not of degree -1", {m.name(*bad)}, ""};
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& t : c.coproduct(i))
      if (!t.coef.is_zero() && m.degree(t.left) + m.degree(t.right) != m.degree(i))
        return Violation{"coproduct not of degree 0", {m.name(i)}, ""};
  for (std::size_t i = 0; i < n; ++i)
    if (!c.counit()[i].is_zero() && m.degree(i) != 0) return Violation{"counit not of degree 0", {m.name(i)}, ""};
  if (!m.is_homogeneous(c.coaugmentation(), 0)) return Violation{"coaugmentation not of degree 0", {}, ""};

  const Matrix dd = c.differential() * c.differential();
  for (std::size_t i = 0; i < n; ++i)
    if (!is_zero(dd.column(i))) return Violation{"d∘d = 0", {m.name(i)}, m.format(dd.column(i))};

  for (std::size_t i = 0; i < n; ++i) {
    TensorN lhs, rhs;
    for (const auto& t : c.coproduct(i)) {
      for (const auto& u : c.coproduct(t.left)) accumulate(lhs, std::vector<std::size_t>{u.left, u.right, t.right}, t.coef * u.coef);
      for (const auto& u : c.coproduct(t.right)) accumulate(rhs, std::vector<std::size_t>{t.left, u.left, u.right}, t.coef * u.coef);
    }
    if (lhs != rhs) return Violation{"coassociativity", {m.name(i)}, ""};
  }

  for (std::size_t i = 0; i < n; ++i) {
    Vec left = m.zero(), right = m.zero();
    for (const auto& t : c.coproduct(i)) {
      left[t.right] += c.counit()[t.left] * t.coef;
      right[t.left] += c.counit()[t.right] * t.coef;
    }
    if (left != m.basis_vector(i)) return Violation{"left counit", {m.name(i)}, m.format(left)};
    if (right != m.basis_vector(i)) return Violation{"right counit", {m.name(i)}, m.format(right)};
  }

  const Vec& eta = c.coaugmentation();
  Tensor2 eta_eta;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) accumulate(eta_eta, std::make_pair(i, j), eta[i] * eta[j]);
  if (apply_coproduct(c, eta) != eta_eta) return Violation{"coaugmentation is not a coalgebra map", {}, ""};
  if (!c.counit(eta).is_one()) return Violation{"ε∘η = 1", {}, ""};
  if (!is_zero(c.d(eta))) return Violation{"d annihilates η(1)", {}, m.format(c.d(eta))};

  for (std::size_t i = 0; i < n; ++i) {
    Tensor2 lhs = apply_coproduct(c, c.d(m.basis_vector(i)));
    Tensor2 rhs;
    for (const auto& t : c.coproduct(i)) {
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& dl = c.differential()(k, t.left);
        if (!dl.is_zero()) accumulate(rhs, std::make_pair(k, t.right), t.coef * dl);
        const Scalar& dr = c.differential()(k, t.right);
        if (!dr.is_zero())
          accumulate(rhs, std::make_pair(t.left, k), signed_one(r, koszul_sign(1, m.degree(t.left))) * t.coef * dr);
      }
    }
    if (lhs != rhs) return Violation{"coderivation", {m.name(i)}, describe(m, lhs) + " vs " + describe(m, rhs)};
  }

  if (c.cocommutative() && !check_cocommutative(m, [&] {
        std::vector<std::vector<CoproductTerm>> all;
        for (std::size_t i = 0; i < n; ++i) all.push_back(c.coproduct(i));
        return all;
      }()))
    return Violation{"cocommutativity", {}, ""};
  return std::nullopt;
}

Validated<DGCoalgebra> validate_coalgebra(const DGCoalgebra& c) {
  if (auto v = find_coalgebra_violation(c)) return {std::nullopt, std::move(v)};
  return {c, std::nullopt};
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> SymmetricCoalgebra::index_of(const std::vector<int>& alpha) const {
  auto it = std::find(exponents.begin(), exponents.end(), alpha);
  if (it == exponents.end()) return std::nullopt;
  return static_cast<std::size_t>(it - exponents.begin());
}

SymmetricCoalgebra symmetric_coalgebra(RingPtr ring, const std::vector<BasisElement>& generators, int N) {
  if (N < 1) throw std::invalid_argument("truncation level must be at least 1");
  for (const auto& g : generators)
    if (g.degree % 2 != 0)
      throw std::invalid_argument("symmetric coalgebra: odd cogenerator '" + g.name + "' is not supported");
  const std::size_t k = generators.size();

  std::vector<std::vector<int>> exps;
  std::vector<int> cur(k, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos == k) {
      exps.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  rec(0, N);
  auto total = [](const std::vector<int>& a) { return std::accumulate(a.begin(), a.end(), 0); };
  std::stable_sort(exps.begin(), exps.end(), [&](const auto& a, const auto& b) {
    if (total(a) != total(b)) return total(a) < total(b);
    return a > b;
  });

  std::vector<BasisElement> basis;
  for (const auto& a : exps) {
    int deg = 0;
    for (std::size_t i = 0; i < k; ++i) deg += a[i] * generators[i].degree;
    std::string name;
    if (k == 1) {
      name = generators[0].name + std::to_string(a[0]);
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        if (!name.empty()) name += ".";
        name += generators[i].name;
        if (a[i] > 1) name += "^" + std::to_string(a[i]);
      }
      if (name.empty()) name = "1";
    }
    basis.push_back({name, deg});
  }
  GradedModule m(ring, basis);
  const std::size_t n = m.dim();
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[exps[i]] = i;

  std::vector<std::vector<CoproductTerm>> coproduct(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<int> rest(k);
      bool fits = true;
      for (std::size_t g = 0; g < k; ++g) {
        rest[g] = exps[i][g] - exps[j][g];
        if (rest[g] < 0) fits = false;
      }
      if (fits) coproduct[i].push_back({j, index.at(rest), ring->one()});
    }
  }
  Vec counit = m.zero();
  counit[0] = ring->one();
  SymmetricCoalgebra out{DGCoalgebra(m, Matrix(ring, n, n), std::move(coproduct), counit, m.basis_vector(0), true, N),
                         GradedModule(ring, generators), exps};
  return out;
}

TensorCoalgebra tensor_coalgebra(RingPtr ring, const std::vector<BasisElement>& letters, int N) {
  if (N < 1) throw std::invalid_argument("truncation level must be at least 1");
  GradedModule lm(ring, letters);
  std::vector<std::vector<std::size_t>> words{{}};
  std::vector<std::vector<std::size_t>> layer{{}};
  for (int len = 1; len <= N && !letters.empty(); ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : layer)
      for (std::size_t l = 0; l < letters.size(); ++l) {
        auto v = w;
        v.push_back(l);
        next.push_back(v);
      }
    words.insert(words.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::vector<BasisElement> basis;
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string name;
    int deg = 0;
    for (std::size_t l : words[i]) {
      name += (name.empty() ? "" : "|") + letters[l].name;
      deg += letters[l].degree;
    }
    basis.push_back({name.empty() ? "[]" : name, deg});
    index[words[i]] = i;
  }
  GradedModule m(ring, basis);
  const std::size_t n = m.dim();
  std::vector<std::vector<CoproductTerm>> coproduct(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = words[i];
    for (std::size_t cut = 0; cut <= w.size(); ++cut) {
      std::vector<std::size_t> a(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
      std::vector<std::size_t> b(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
      coproduct[i].push_back({index.at(a), index.at(b), ring->one()});
    }
  }
  Vec counit = m.zero();
  counit[0] = ring->one();
  const bool cocomm = check_cocommutative(m, coproduct);
  return TensorCoalgebra{DGCoalgebra(m, Matrix(ring, n, n), std::move(coproduct), counit, m.basis_vector(0), cocomm, N),
                         lm, words, index};
}

Matrix coderivation_from_corestrictions(const TensorCoalgebra& t, const Matrix& components) {
  const GradedModule& m = t.coalgebra.module();
  const GradedModule& lm = t.letters;
  RingPtr r = m.ring();
  const std::size_t n = m.dim();
  if (components.rows() != lm.dim() || components.cols() != n)
    throw std::invalid_argument("co-restriction must be a letters × words matrix");
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t l = 0; l < lm.dim(); ++l) {
      if (components(l, w).is_zero()) continue;
      if (t.words[w].empty()) throw std::invalid_argument("co-restriction must vanish on the empty word");
      if (lm.degree(l) != m.degree(w) - 1)
        throw std::invalid_argument("co-restriction on '" + m.name(w) + "' is not of degree -1");
    }
  Matrix delta(r, n, n);
  for (std::size_t w = 0; w < n; ++w) {
    const auto& word = t.words[w];
    int prefix_degree = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
      for (std::size_t j = 1; i + j <= word.size(); ++j) {
        std::vector<std::size_t> sub(word.begin() + static_cast<std::ptrdiff_t>(i),
                                     word.begin() + static_cast<std::ptrdiff_t>(i + j));
        const std::size_t s = t.word_index(sub);
        for (std::size_t l = 0; l < lm.dim(); ++l) {
          const Scalar& c = components(l, s);
          if (c.is_zero()) continue;
          std::vector<std::size_t> out(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
          out.push_back(l);
          out.insert(out.end(), word.begin() + static_cast<std::ptrdiff_t>(i + j), word.end());
          delta(t.word_index(out), w) += signed_one(r, koszul_sign(1, prefix_degree)) * c;
        }
      }
      prefix_degree += lm.degree(word[i]);
    }
  }
  return delta;
}

Matrix corestriction(const TensorCoalgebra& t, const Matrix& delta) {
  const std::size_t n = t.coalgebra.dim();
  Matrix out(t.coalgebra.ring(), t.letters.dim(), n);
  for (std::size_t l = 0; l < t.letters.dim(); ++l) {
    const std::size_t row = t.word_index({l});
    for (std::size_t w = 0; w < n; ++w) out(l, w) = delta(row, w);
  }
  return out;
}

std::vector<int> coaugmentation_filtration(const DGCoalgebra& c) {
  const GradedModule& m = c.module();
  const std::size_t n = m.dim();
  const Vec& eta = c.coaugmentation();
  auto bar = [&](const Vec& x) {
    Vec y = x;
    axpy(y, -c.counit(x), eta);
    return y;
  };
  // Δ̄(e_j) = Δ(ē_j) − η⊗ē_j − ē_j⊗η
  std::vector<Tensor2> reduced(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec ej = bar(m.basis_vector(j));
    Tensor2 t = apply_coproduct(c, ej);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        accumulate(t, std::make_pair(a, b), -(eta[a] * ej[b]));
        accumulate(t, std::make_pair(a, b), -(ej[a] * eta[b]));
      }
    reduced[j] = std::move(t);
  }
  std::vector<int> levels(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec x = bar(m.basis_vector(i));
    TensorN cur;
    for (std::size_t k = 0; k < n; ++k) accumulate(cur, std::vector<std::size_t>{k}, x[k]);
    int level = 0;
    while (!cur.empty() && level <= static_cast<int>(n) + 1) {
      ++level;
      TensorN next;
      for (const auto& [key, coef] : cur)
        for (const auto& [pair, c2] : reduced[key.back()]) {
          auto nk = key;
          nk.back() = pair.first;
          nk.push_back(pair.second);
          accumulate(next, nk, coef * c2);
        }
      cur = std::move(next);
    }
    levels[i] = level;
  }
  return levels;
}

// ---------------------------------------------------------------------------

GradedModule hom_module(const GradedModule& c, const GradedModule& a) {
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) basis.push_back({c.name(i) + ">" + a.name(j), a.degree(j) - c.degree(i)});
  return GradedModule(c.ring(), basis);
}

namespace {

Matrix hom_differential(const DGCoalgebra& c, const GradedModule& target, const Matrix& dt, const GradedModule& hom) {
  RingPtr r = c.ring();
  const std::size_t nc = c.dim(), na = target.dim(), n = hom.dim();
  Matrix d(r, n, n);
  for (std::size_t c1 = 0; c1 < nc; ++c1)
    for (std::size_t a1 = 0; a1 < na; ++a1) {
      const std::size_t f = hom_index(c1, a1, na);
      for (std::size_t a = 0; a < na; ++a)
        if (!dt(a, a1).is_zero()) d(hom_index(c1, a, na), f) += dt(a, a1);
      const Scalar sign = signed_one(r, -koszul_sign(1, hom.degree(f)));
      for (std::size_t cc = 0; cc < nc; ++cc)
        if (!c.differential()(c1, cc).is_zero()) d(hom_index(cc, a1, na), f) += sign * c.differential()(c1, cc);
    }
  return d;
}

BilinearTable hom_product(const DGCoalgebra& c, const GradedModule& target, const BilinearTable& mu, const GradedModule& hom) {
  RingPtr r = c.ring();
  const std::size_t nc = c.dim(), na = target.dim(), n = hom.dim();
  BilinearTable out(r, n, n, n);
  for (std::size_t cc = 0; cc < nc; ++cc)
    for (const auto& t : c.coproduct(cc))
      for (std::size_t a1 = 0; a1 < na; ++a1)
        for (std::size_t a2 = 0; a2 < na; ++a2) {
          const auto& prod = mu.at(a1, a2);
          if (prod.empty()) continue;
          const std::size_t f = hom_index(t.left, a1, na), g = hom_index(t.right, a2, na);
          const Scalar coef = signed_one(r, koszul_sign(hom.degree(g), c.module().degree(t.left))) * t.coef;
          for (const auto& [k, v] : prod) out.add(f, g, hom_index(cc, k, na), coef * v);
        }
  return out;
}

}  // namespace

DGAlgebra convolution_algebra(const DGCoalgebra& c, const DGAlgebra& a) {
  if (c.ring() != a.ring()) throw std::invalid_argument("convolution algebra: ring mismatch");
  GradedModule hom = hom_module(c.module(), a.module());
  Vec unit = hom.zero();
  for (std::size_t cc = 0; cc < c.dim(); ++cc)
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (!c.counit()[cc].is_zero()) unit[hom_index(cc, k, a.dim())] = c.counit()[cc] * a.unit()[k];
  return DGAlgebra(hom, hom_differential(c, a.module(), a.differential(), hom),
                   hom_product(c, a.module(), a.product(), hom), unit);
}

DGLieAlgebra convolution_dgl(const DGCoalgebra& c, const DGLieAlgebra& g) {
  if (c.ring() != g.ring()) throw std::invalid_argument("convolution DGL: ring mismatch");
  if (!c.cocommutative()) throw std::invalid_argument("convolution DGL requires a cocommutative coalgebra");
  GradedModule hom = hom_module(c.module(), g.module());
  return DGLieAlgebra(hom, hom_differential(c, g.module(), g.differential(), hom),
                      hom_product(c, g.module(), g.bracket_table(), hom));
}

// ---------------------------------------------------------------------------

DGModule::DGModule(DGAlgebra algebra, GradedModule module, Matrix differential, BilinearTable action)
    : algebra_(std::move(algebra)), module_(std::move(module)), differential_(std::move(differential)),
      action_(std::move(action)) {
  const std::size_t n = module_.dim();
  if (differential_.rows() != n || differential_.cols() != n) throw std::invalid_argument("differential shape mismatch");
  if (action_.left_dim() != algebra_.dim() || action_.right_dim() != n || action_.out_dim() != n)
    throw std::invalid_argument("action shape mismatch");
}

bool operator==(const DGModule& a, const DGModule& b) {
  return a.algebra_ == b.algebra_ && a.module_ == b.module_ && a.differential_ == b.differential_ &&
         a.action_ == b.action_;
}

DGModule regular_module(const DGAlgebra& a) { return DGModule(a, a.module(), a.differential(), a.product()); }

std::optional<Violation> find_module_violation(const DGModule& mod) {
  const DGAlgebra& a = mod.algebra();
  const GradedModule& m = mod.module();
  const GradedModule& am = a.module();
  if (auto bad = GradedMap::degree_violation(m, m, -1, mod.differential()))
    return Violation{"differential not of degree -1", {m.name(*bad)}, ""};
  for (std::size_t i = 0; i < am.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      for (const auto& [k, c] : mod.action_table().at(i, j))
        if (m.degree(k) != am.degree(i) + m.degree(j))
          return Violation{"action not of degree 0", {am.name(i), m.name(j)}, ""};
  const Matrix dd = mod.differential() * mod.differential();
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (!is_zero(dd.column(i))) return Violation{"d∘d = 0", {m.name(i)}, ""};
  for (std::size_t j = 0; j < m.dim(); ++j)
    if (mod.act(a.unit(), m.basis_vector(j)) != m.basis_vector(j)) return Violation{"unit action", {m.name(j)}, ""};
  for (std::size_t i = 0; i < am.dim(); ++i)
    for (std::size_t k = 0; k < am.dim(); ++k) {
      const Vec ik = a.product().value(i, k);
      for (std::size_t j = 0; j < m.dim(); ++j) {
        const Vec mj = m.basis_vector(j);
        if (mod.act(ik, mj) != mod.act(am.basis_vector(i), mod.act(am.basis_vector(k), mj)))
          return Violation{"action associativity", {am.name(i), am.name(k), m.name(j)}, ""};
      }
    }
  for (std::size_t i = 0; i < am.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const Vec x = am.basis_vector(i), y = m.basis_vector(j);
      Vec lhs = mod.d(mod.act(x, y));
      Vec rhs = mod.act(a.d(x), y);
      axpy(rhs, signed_one(a.ring(), koszul_sign(1, am.degree(i))), mod.act(x, mod.d(y)));
      if (lhs != rhs) return Violation{"module Leibniz", {am.name(i), m.name(j)}, ""};
    }
  return std::nullopt;
}

Validated<DGModule> validate_module(const DGModule& m) {
  if (auto v = find_module_violation(m)) return {std::nullopt, std::move(v)};
  return {m, std::nullopt};
}

TwistedComplex twisted_tensor_complex_unchecked(const DGCoalgebra& c, const DGAlgebra& a, const Vec& tau,
                                                const DGModule& mod) {
  RingPtr r = c.ring();
  const GradedModule& cm = c.module();
  const GradedModule& mm = mod.module();
  const std::size_t nc = cm.dim(), nm = mm.dim(), na = a.dim();
  if (tau.size() != nc * na) throw std::invalid_argument("τ is not an element of Hom(C, A)");
  GradedModule total = tensor(cm, mm);
  Matrix d(r, total.dim(), total.dim());
  auto at = [&](std::size_t ci, std::size_t mi) { return ci * nm + mi; };
  for (std::size_t ci = 0; ci < nc; ++ci)
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const std::size_t col = at(ci, mi);
      for (std::size_t k = 0; k < nc; ++k)
        if (!c.differential()(k, ci).is_zero()) d(at(k, mi), col) += c.differential()(k, ci);
      const Scalar sc = signed_one(r, koszul_sign(1, cm.degree(ci)));
      for (std::size_t k = 0; k < nm; ++k)
        if (!mod.differential()(k, mi).is_zero()) d(at(ci, k), col) += sc * mod.differential()(k, mi);
      for (const auto& t : c.coproduct(ci)) {
        Vec tc = a.module().zero();
        for (std::size_t k = 0; k < na; ++k) tc[k] = tau[hom_index(t.right, k, na)];
        if (is_zero(tc)) continue;
        const Vec img = mod.act(tc, mm.basis_vector(mi));
        const Scalar s = signed_one(r, -koszul_sign(1, cm.degree(t.left))) * t.coef;
        for (std::size_t k = 0; k < nm; ++k)
          if (!img[k].is_zero()) d(at(t.left, k), col) += s * img[k];
      }
    }
  return {total, std::move(d)};
}

TwistedComplexResult twisted_tensor_complex(const DGCoalgebra& c, const DGAlgebra& a, const Vec& tau, const DGModule& m) {
  const DGAlgebra conv = convolution_algebra(c, a);
  if (!conv.module().is_homogeneous(tau, -1)) throw std::invalid_argument("τ must be homogeneous of degree -1");
  Vec residual = twisting_residual(conv, tau);
  if (!is_zero(residual)) return {std::nullopt, std::move(residual)};
  return {twisted_tensor_complex_unchecked(c, a, tau, m), std::move(residual)};
}

}  // namespace dgt
