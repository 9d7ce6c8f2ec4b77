#include "dgt/dg_lie.hpp"

#include <set>
#include <stdexcept>

namespace dgt {

struct MCAccess {
  static MCElement make(Vec v) { return MCElement(std::move(v)); }
};

DGLieAlgebra::DGLieAlgebra(GradedModule module, Matrix differential, BilinearTable bracket)
    : module_(std::move(module)), differential_(std::move(differential)), bracket_(std::move(bracket)) {
  const std::size_t n = module_.dim();
  if (differential_.rows() != n || differential_.cols() != n) throw std::invalid_argument("differential shape mismatch");
  if (bracket_.left_dim() != n || bracket_.right_dim() != n || bracket_.out_dim() != n)
    throw std::invalid_argument("bracket shape mismatch");
}

Matrix DGLieAlgebra::ad(const Vec& x) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(bracket(x, module_.basis_vector(j)));
  return Matrix::from_columns(ring(), dim(), cols);
}

bool operator==(const DGLieAlgebra& a, const DGLieAlgebra& b) {
  return a.module_ == b.module_ && a.differential_ == b.differential_ && a.bracket_ == b.bracket_;
}

DGLieAlgebra build_dgl(const DGLieSpec& spec) {
  GradedModule m(spec.ring, spec.basis);
  const std::size_t n = m.dim();
  auto lookup = [&](const std::string& name) {
    auto i = m.index_of(name);
    if (!i) throw std::invalid_argument("unknown basis element '" + name + "'");
    return *i;
  };
  Matrix d(spec.ring, n, n);
  for (const auto& [src, tgt, c] : spec.differential) d(lookup(tgt), lookup(src)) += c;
  BilinearTable b(spec.ring, n, n, n);
  std::set<std::pair<std::size_t, std::size_t>> given;
  for (const auto& [x, y, z, c] : spec.bracket) {
    b.add(lookup(x), lookup(y), lookup(z), c);
    given.emplace(lookup(x), lookup(y));
  }
  for (const auto& [x, y, z, c] : spec.bracket) {
    const std::size_t i = lookup(x), j = lookup(y);
    if (i == j || given.count({j, i})) continue;
    b.add(j, i, lookup(z), signed_one(spec.ring, -koszul_sign(m.degree(i), m.degree(j))) * c);
  }
  return DGLieAlgebra(m, std::move(d), std::move(b));
}

std::optional<Violation> find_dgl_violation(const DGLieAlgebra& g) {
  const GradedModule& m = g.module();
  const std::size_t n = m.dim();
  RingPtr r = g.ring();
  if (auto bad = GradedMap::degree_violation(m, m, -1, g.differential()))
    return Violation{"differential not of degree -1", {m.name(*bad)}, ""};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : g.bracket_table().at(i, j))
        if (m.degree(k) != m.degree(i) + m.degree(j))
          return Violation{"bracket not of degree 0", {m.name(i), m.name(j)}, ""};
  const Matrix dd = g.differential() * g.differential();
  for (std::size_t i = 0; i < n; ++i)
    if (!is_zero(dd.column(i))) return Violation{"d∘d = 0", {m.name(i)}, m.format(dd.column(i))};

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec s = g.bracket_table().value(i, j);
      axpy(s, signed_one(r, koszul_sign(m.degree(i), m.degree(j))), g.bracket_table().value(j, i));
      if (!is_zero(s)) return Violation{"antisymmetry", {m.name(i), m.name(j)}, m.format(s)};
    }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vec a = m.basis_vector(i), b = m.basis_vector(j), c = m.basis_vector(k);
        const int da = m.degree(i), db = m.degree(j), dc = m.degree(k);
        Vec s = m.zero();
        axpy(s, signed_one(r, koszul_sign(da, dc)), g.bracket(a, g.bracket(b, c)));
        axpy(s, signed_one(r, koszul_sign(db, da)), g.bracket(b, g.bracket(c, a)));
        axpy(s, signed_one(r, koszul_sign(dc, db)), g.bracket(c, g.bracket(a, b)));
        if (!is_zero(s)) return Violation{"Jacobi", {m.name(i), m.name(j), m.name(k)}, m.format(s)};
      }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec a = m.basis_vector(i), b = m.basis_vector(j);
      Vec lhs = g.d(g.bracket(a, b));
      Vec rhs = g.bracket(g.d(a), b);
      axpy(rhs, signed_one(r, koszul_sign(1, m.degree(i))), g.bracket(a, g.d(b)));
      if (lhs != rhs) return Violation{"Leibniz", {m.name(i), m.name(j)}, m.format(lhs - rhs)};
    }
  return std::nullopt;
}

Validated<DGLieAlgebra> validate_dgl(const DGLieAlgebra& g) {
  if (auto v = find_dgl_violation(g)) return {std::nullopt, std::move(v)};
  return {g, std::nullopt};
}

Vec mc_residual(const DGLieAlgebra& g, const Vec& gamma, const std::optional<Vec>& divided_square) {
  RingPtr r = g.ring();
  const Vec sq = g.bracket(gamma, gamma);
  Vec out = g.d(gamma);
  if (r->characteristic() == 2) {
    if (!divided_square) throw std::domain_error("characteristic 2 requires a divided square for the MC equation");
    out += *divided_square;
    return out;
  }
  const Scalar half = r->from_rational(mpq_class(1, 2));
  if (divided_square && r->from_int(2) * *divided_square != sq)
    throw std::invalid_argument("divided square does not satisfy [γ,γ] = 2γ^[2]");
  axpy(out, half, sq);
  return out;
}

MCCheck is_mc(const DGLieAlgebra& g, const Vec& gamma, const std::optional<Vec>& divided_square) {
  if (!g.module().is_homogeneous(gamma, -1)) throw std::invalid_argument("MC element must be homogeneous of degree -1");
  Vec res = mc_residual(g, gamma, divided_square);
  if (is_zero(res)) return {MCAccess::make(gamma), std::move(res)};
  return {std::nullopt, std::move(res)};
}

Matrix twisted_differential_lie(const DGLieAlgebra& g, const Vec& gamma) {
  if (!g.module().is_homogeneous(gamma, -1)) throw std::invalid_argument("MC element must be homogeneous of degree -1");
  return g.differential() + g.ad(gamma);
}

DGLieAlgebra commutator_dgl(const DGAlgebra& a) {
  const GradedModule& m = a.module();
  const std::size_t n = m.dim();
  BilinearTable b(a.ring(), n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec v = a.product().value(i, j);
      axpy(v, signed_one(a.ring(), -koszul_sign(m.degree(i), m.degree(j))), a.product().value(j, i));
      b.set(i, j, v);
    }
  return DGLieAlgebra(m, a.differential(), std::move(b));
}

}  // namespace dgt
