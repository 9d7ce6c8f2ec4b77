#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dgt/dg_algebra.hpp"

namespace fixtures {

using namespace dgt;

inline Scalar k(RingPtr r, long long v) { return r->from_int(v); }

inline Vec combo_vec(const GradedModule& m, std::initializer_list<std::pair<long long, const char*>> terms) {
  Vec v = m.zero();
  for (const auto& [c, name] : terms) axpy(v, m.ring()->from_int(c), m.basis_vector(name));
  return v;
}

inline Vec combo(const DGAlgebra& a, std::initializer_list<std::pair<long long, const char*>> terms) {
  Vec v = a.module().zero();
  for (const auto& [c, name] : terms) axpy(v, a.ring()->from_int(c), a.basis(name));
  return v;
}

// 1 (0), u (0), a (-1); Du = a; all products of u, a vanish.
inline DGAlgebra E1(RingPtr r, bool with_differential = true) {
  DGAlgebraSpec s{r, {{"1", 0}, {"u", 0}, {"a", -1}}, {}, {}, "1"};
  if (with_differential) s.differential.push_back({"u", "a", r->one()});
  return build_dga(s);
}

// E1 with u·u = 1: not associative at (u, u, a).
inline DGAlgebra E1_uu(RingPtr r) {
  DGAlgebraSpec s{r, {{"1", 0}, {"u", 0}, {"a", -1}}, {{"u", "a", r->one()}}, {{"u", "u", "1", r->one()}}, "1"};
  return build_dga(s);
}

// E1 with the degree-violating D(u) = u.
inline DGAlgebra E1_bad_degree(RingPtr r) {
  DGAlgebraSpec s{r, {{"1", 0}, {"u", 0}, {"a", -1}}, {{"u", "u", r->one()}}, {}, "1"};
  return build_dga(s);
}

// 1, u (0), a (-1), b (-2); D = 0; a·a = b.
inline DGAlgebra E1_extended(RingPtr r) {
  DGAlgebraSpec s{r, {{"1", 0}, {"u", 0}, {"a", -1}, {"b", -2}}, {}, {{"a", "a", "b", r->one()}}, "1"};
  return build_dga(s);
}

inline DGAlgebra exterior(RingPtr r) { return build_dga({r, {{"1", 0}, {"a", -1}}, {}, {}, "1"}); }

inline DGAlgebra ground(RingPtr r) { return build_dga({r, {{"1", 0}}, {}, {}, "1"}); }

// End(V), V = k v0 (deg 0) ⊕ k v1 (deg -1), basis 1 = E00+E11, e = E00, p = E01 (+1), q = E10 (-1),
// with the inner differential [q, -].
inline DGAlgebra endomorphisms(RingPtr r) {
  const auto one = r->one();
  DGAlgebraSpec s{r,
                  {{"1", 0}, {"e", 0}, {"p", 1}, {"q", -1}},
                  {{"e", "q", one}, {"p", "1", one}},
                  {{"e", "e", "e", one},
                   {"e", "p", "p", one},
                   {"q", "e", "q", one},
                   {"p", "q", "e", one},
                   {"q", "p", "1", one},
                   {"q", "p", "e", -one}},
                  "1"};
  return build_dga(s);
}

struct Named {
  std::string name;
  DGAlgebra algebra;
};

// Validated fixtures of dimension ≤ 4.
inline std::vector<Named> small_fixtures(RingPtr r) {
  return {{"E1", E1(r)},
          {"E1_D0", E1(r, false)},
          {"E1_extended", E1_extended(r)},
          {"exterior", exterior(r)},
          {"ground", ground(r)},
          {"End(V)", endomorphisms(r)}};
}

inline Scalar random_scalar(RingPtr r, std::mt19937_64& rng) {
  if (r->is_finite()) {
    std::uniform_int_distribution<std::uint64_t> d(0, *r->cardinality() - 1);
    return r->element(d(rng));
  }
  std::uniform_int_distribution<int> d(-3, 3);
  return r->from_int(d(rng));
}

// Upper-triangular matrices on a graded space of dimension 2 or 3 with an inner
// differential D(x) = m x − (−1)^{|x|} x m, m of degree -1 and m² = 0.
inline DGAlgebra random_triangular(RingPtr r, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 3), deg(-2, 0);
  const int n = size(rng);
  std::vector<int> dv(n);
  for (auto& d : dv) d = deg(rng);
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) cells.emplace_back(i, j);
  std::vector<BasisElement> basis;
  for (auto [i, j] : cells) basis.push_back({"E" + std::to_string(i) + std::to_string(j), dv[i] - dv[j]});
  GradedModule m(r, basis);
  const std::size_t dim = cells.size();
  auto cell = [&](int i, int j) {
    for (std::size_t c = 0; c < dim; ++c)
      if (cells[c] == std::make_pair(i, j)) return c;
    return dim;
  };
  BilinearTable prod(r, dim, dim, dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y)
      if (cells[x].second == cells[y].first) prod.add(x, y, cell(cells[x].first, cells[y].second), r->one());
  Vec unit = m.zero();
  for (int i = 0; i < n; ++i) unit[cell(i, i)] = r->one();

  Vec mm = m.zero();
  for (std::size_t c = 0; c < dim; ++c)
    if (cells[c].first < cells[c].second && m.degree(c) == -1) mm[c] = random_scalar(r, rng);
  while (!is_zero(prod.apply(mm, mm))) mm[first_nonzero(mm)] = r->zero();

  std::vector<Vec> cols;
  for (std::size_t c = 0; c < dim; ++c) {
    const Vec x = m.basis_vector(c);
    Vec dx = prod.apply(mm, x);
    axpy(dx, signed_one(r, -koszul_sign(1, m.degree(c))), prod.apply(x, mm));
    cols.push_back(dx);
  }
  return DGAlgebra(m, Matrix::from_columns(r, dim, cols), prod, unit);
}

// K[u]/(u^n) ⊗ Λ(a) with D(u) = g(u)·a, g(0) = 0 unless p divides n.
inline DGAlgebra random_truncated_polynomial(RingPtr r, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 4);
  const int n = size(rng);
  std::vector<Scalar> g(n);
  for (auto& c : g) c = random_scalar(r, rng);
  const long long p = r->characteristic();
  if (p == 0 || n % p != 0) g[0] = r->zero();

  std::vector<BasisElement> basis;
  for (int i = 0; i < n; ++i) basis.push_back({i == 0 ? "1" : "u" + std::to_string(i), 0});
  for (int i = 0; i < n; ++i) basis.push_back({i == 0 ? "a" : "u" + std::to_string(i) + "a", -1});
  GradedModule m(r, basis);
  const std::size_t dim = basis.size();
  BilinearTable prod(r, dim, dim, dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j) {
      prod.add(i, j, i + j, r->one());
      prod.add(i, n + j, n + i + j, r->one());
      prod.add(n + i, j, n + i + j, r->one());
    }
  Matrix d(r, dim, dim);
  // D(u^i) = i u^{i-1} g(u) a
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < n && i - 1 + j < n; ++j) d(n + i - 1 + j, i) += r->from_int(i) * g[j];
  return DGAlgebra(m, std::move(d), prod, m.basis_vector(0));
}

inline DGAlgebra random_dga(RingPtr r, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 1);
  return pick(rng) ? random_triangular(r, rng) : random_truncated_polynomial(r, rng);
}

}  // namespace fixtures
