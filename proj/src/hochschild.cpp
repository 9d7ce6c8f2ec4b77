#include "dgt/hochschild.hpp"

#include <stdexcept>

#include "dgt/deformation.hpp"

namespace dgt {

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

DGAlgebra base_change(const DGAlgebra& b, RingPtr ring) {
  const std::size_t n = b.dim();
  Matrix d(ring, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) d(r, c) = extend_scalar(ring, b.differential()(r, c));
  BilinearTable p(ring, n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : b.product().at(i, j)) p.add(i, j, k, extend_scalar(ring, c));
  return DGAlgebra(b.module().with_ring(ring), std::move(d), std::move(p), extend_vec(ring, b.unit()));
}

HochschildComplex::HochschildComplex(DGAlgebra b, int max_arity) : b_(std::move(b)), max_arity_(max_arity) {
  for (std::size_t i = 0; i < b_.dim(); ++i)
    if (b_.module().degree(i) != 0) throw std::invalid_argument("Hochschild complex needs an ungraded algebra");
  if (!b_.differential().is_zero()) throw std::invalid_argument("Hochschild complex needs a zero differential");
  if (max_arity_ < 1) throw std::invalid_argument("max arity must be positive");
  const std::size_t d = b_.dim();
  factorizations_.resize(d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (const auto& [k, c] : b_.product().at(x, y)) factorizations_[k].push_back({{x, y}, c});
}

std::size_t HochschildComplex::cochain_dim(int arity) const { return ipow(algebra_dim(), arity + 1); }

void HochschildComplex::check_arity(int arity) const {
  if (arity < 0) throw std::invalid_argument("negative arity");
  if (arity > max_arity_)
    throw ResourceLimitExceeded("arity " + std::to_string(arity) + " exceeds the truncation " + std::to_string(max_arity_));
}

std::size_t HochschildComplex::index(const std::vector<std::size_t>& args, std::size_t out) const {
  std::size_t i = 0;
  for (std::size_t a : args) i = i * algebra_dim() + a;
  return i * algebra_dim() + out;
}

std::pair<std::vector<std::size_t>, std::size_t> HochschildComplex::decode(int arity, std::size_t index) const {
  const std::size_t d = algebra_dim();
  const std::size_t out = index % d;
  index /= d;
  std::vector<std::size_t> args(static_cast<std::size_t>(arity));
  for (std::size_t i = args.size(); i-- > 0;) {
    args[i] = index % d;
    index /= d;
  }
  return {std::move(args), out};
}

std::string HochschildComplex::name(int arity, std::size_t index) const {
  auto [args, out] = decode(arity, index);
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + b_.module().name(args[i]);
  return s + ">" + b_.module().name(out);
}

Vec HochschildComplex::evaluate(const Vec& f, const std::vector<std::size_t>& args) const {
  const std::size_t base = index(args, 0);
  return Vec(f.begin() + static_cast<std::ptrdiff_t>(base), f.begin() + static_cast<std::ptrdiff_t>(base + algebra_dim()));
}

Vec HochschildComplex::mu() const {
  const std::size_t d = algebra_dim();
  Vec m = zero_vec(ring(), ipow(d, 3));
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (const auto& [k, c] : b_.product().at(x, y)) m[index({x, y}, k)] += c;
  return m;
}

Vec HochschildComplex::differential(const Vec& f, int n) const {
  check_arity(n + 1);
  const std::size_t d = algebra_dim();
  if (f.size() != cochain_dim(n)) throw std::invalid_argument("cochain has the wrong dimension");
  Vec out = zero(n + 1);
  for (const auto& [idx, c] : to_sparse(f)) {
    auto [args, o] = decode(n, idx);
    // a0 · f(a1..an)
    for (std::size_t a0 = 0; a0 < d; ++a0)
      for (const auto& [p, pc] : b_.product().at(a0, o)) {
        std::vector<std::size_t> t{a0};
        t.insert(t.end(), args.begin(), args.end());
        out[index(t, p)] += c * pc;
      }
    // f(.., a_i a_{i+1}, ..)
    for (int i = 0; i < n; ++i) {
      const Scalar sign = signed_one(ring(), (i + 1) % 2 == 0 ? 1 : -1);
      for (const auto& [xy, pc] : factorizations_[args[static_cast<std::size_t>(i)]]) {
        std::vector<std::size_t> t(args.begin(), args.begin() + i);
        t.push_back(xy.first);
        t.push_back(xy.second);
        t.insert(t.end(), args.begin() + i + 1, args.end());
        out[index(t, o)] += sign * c * pc;
      }
    }
    // f(a0..a_{n-1}) · an
    const Scalar last = signed_one(ring(), (n + 1) % 2 == 0 ? 1 : -1);
    for (std::size_t an = 0; an < d; ++an)
      for (const auto& [p, pc] : b_.product().at(o, an)) {
        std::vector<std::size_t> t = args;
        t.push_back(an);
        out[index(t, p)] += last * c * pc;
      }
  }
  return out;
}

Matrix HochschildComplex::differential_matrix(int n) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < cochain_dim(n); ++j) cols.push_back(differential(unit_vec(ring(), cochain_dim(n), j), n));
  return Matrix::from_columns(ring(), cochain_dim(n + 1), cols);
}

Vec HochschildComplex::circle(const Vec& f, int m, const Vec& g, int n) const {
  const int arity = m + n - 1;
  check_arity(arity);
  if (f.size() != cochain_dim(m) || g.size() != cochain_dim(n)) throw std::invalid_argument("cochain has the wrong dimension");
  Vec out = zero(arity);
  if (m == 0) return out;
  const auto fs = to_sparse(f), gs = to_sparse(g);
  for (const auto& [fi, fc] : fs) {
    auto [fargs, fo] = decode(m, fi);
    for (const auto& [gi, gc] : gs) {
      auto [gargs, go] = decode(n, gi);
      for (int i = 0; i < m; ++i) {
        if (fargs[static_cast<std::size_t>(i)] != go) continue;
        std::vector<std::size_t> t(fargs.begin(), fargs.begin() + i);
        t.insert(t.end(), gargs.begin(), gargs.end());
        t.insert(t.end(), fargs.begin() + i + 1, fargs.end());
        const Scalar sign = signed_one(ring(), (i * (n - 1)) % 2 == 0 ? 1 : -1);
        out[index(t, fo)] += sign * fc * gc;
      }
    }
  }
  return out;
}

Vec HochschildComplex::bracket(const Vec& f, int m, const Vec& g, int n) const {
  Vec out = circle(f, m, g, n);
  axpy(out, -signed_one(ring(), koszul_sign(m - 1, n - 1)), circle(g, n, f, m));
  return out;
}

Vec HochschildDGL::embed(const Vec& f, int arity) const {
  Vec x = lie.module().zero();
  const std::size_t off = offsets.at(static_cast<std::size_t>(arity - 1));
  for (std::size_t i = 0; i < f.size(); ++i) x[off + i] = f[i];
  return x;
}

Vec HochschildDGL::component(const Vec& x, int arity) const {
  const std::size_t off = offsets.at(static_cast<std::size_t>(arity - 1));
  const std::size_t end = static_cast<std::size_t>(arity) < offsets.size() ? offsets[static_cast<std::size_t>(arity)] : lie.dim();
  return Vec(x.begin() + static_cast<std::ptrdiff_t>(off), x.begin() + static_cast<std::ptrdiff_t>(end));
}

HochschildDGL hochschild_dgl(const HochschildComplex& c) {
  if (!validate_dga(c.algebra()).ok()) throw std::invalid_argument("Hochschild DGL needs an associative unital algebra");
  const int N = c.max_arity();
  RingPtr r = c.ring();
  HochschildDGL out;
  std::vector<BasisElement> basis;
  std::vector<int> arity_of;
  std::vector<std::size_t> local;
  for (int n = 1; n <= N; ++n) {
    out.offsets.push_back(basis.size());
    for (std::size_t i = 0; i < c.cochain_dim(n); ++i) {
      basis.push_back({c.name(n, i), HochschildComplex::degree(n)});
      arity_of.push_back(n);
      local.push_back(i);
    }
  }
  GradedModule m(r, basis);
  const std::size_t dim = basis.size();
  const Vec mu = c.mu();

  BilinearTable br(r, dim, dim, dim);
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = 0; q < dim; ++q) {
      const int a = arity_of[p], b = arity_of[q];
      if (a + b - 1 > N) continue;
      const Vec v = c.bracket(unit_vec(r, c.cochain_dim(a), local[p]), a, unit_vec(r, c.cochain_dim(b), local[q]), b);
      const std::size_t off = out.offsets[static_cast<std::size_t>(a + b - 2)];
      for (const auto& [k, coef] : to_sparse(v)) br.add(p, q, off + k, coef);
    }
  Matrix d(r, dim, dim);
  if (N >= 2)
    for (std::size_t p = 0; p < dim; ++p) {
      const int a = arity_of[p];
      if (a + 1 > N) continue;
      const Vec v = c.bracket(mu, 2, unit_vec(r, c.cochain_dim(a), local[p]), a);
      const std::size_t off = out.offsets[static_cast<std::size_t>(a)];
      for (const auto& [k, coef] : to_sparse(v)) d(off + k, p) += coef;
    }
  out.lie = DGLieAlgebra(std::move(m), std::move(d), std::move(br));
  return out;
}

HHGroup hh_cohomology(const DGAlgebra& b, int n, int max_arity) {
  if (n < 0) throw std::invalid_argument("negative degree");
  if (n > max_arity) throw ResourceLimitExceeded("HH^" + std::to_string(n) + " beyond the truncation " + std::to_string(max_arity));
  const std::size_t u = first_nonzero(b.unit());
  if (u == b.dim() || b.unit() != b.module().basis_vector(u)) throw std::invalid_argument("the unit must be a basis vector");
  const HochschildComplex c(b, n + 1);

  auto normalized = [&](int k) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < c.cochain_dim(k); ++i) {
      const auto args = c.decode(k, i).first;
      bool ok = true;
      for (auto a : args) ok = ok && a != u;
      if (ok) idx.push_back(i);
    }
    return idx;
  };
  const auto nk = normalized(n), nnext = normalized(n + 1);
  const Matrix out_map = c.differential_matrix(n).block(nnext, nk);
  Matrix in_map(b.ring(), nk.size(), 0);
  if (n > 0) in_map = c.differential_matrix(n - 1).block(nk, normalized(n - 1));
  const HomologyAt h(in_map, out_map);

  HHGroup g;
  g.arity = n;
  g.dimension = h.dimension();
  for (const auto& rep : h.representatives()) {
    Vec full = c.zero(n);
    for (std::size_t i = 0; i < nk.size(); ++i) full[nk[i]] = rep[i];
    g.basis.push_back(std::move(full));
  }
  return g;
}

DeformedProduct deform_product(const DGAlgebra& b, const std::vector<Vec>& gammas, int max_order) {
  const int N = static_cast<int>(gammas.size());
  if (N < 1) throw std::invalid_argument("at least one deformation coefficient is needed");
  if (N > max_order) throw ResourceLimitExceeded("order " + std::to_string(N) + " exceeds the bound " + std::to_string(max_order));
  if (!validate_dga(b).ok()) throw std::invalid_argument("deform_product needs an associative unital algebra");
  const HochschildComplex base(b, 3);
  for (const auto& g : gammas)
    if (g.size() != base.cochain_dim(2)) throw std::invalid_argument("deformation coefficients must be 2-cochains");

  RingPtr t_ring = Ring::truncated(b.ring(), {"t"}, N);
  const std::size_t d = b.dim();
  const Scalar t = t_ring->variable(0);

  Vec gamma = zero_vec(t_ring, base.cochain_dim(2));
  Scalar power = t_ring->one();
  for (const auto& g : gammas) {
    power *= t;
    axpy(gamma, power, extend_vec(t_ring, g));
  }

  DGAlgebra bt = base_change(b, t_ring);
  BilinearTable prod(t_ring, d, d, d);
  const HochschildComplex ct(bt, 3);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) prod.set(x, y, bt.product().value(x, y) + ct.evaluate(gamma, {x, y}));
  DeformedProduct out{DGAlgebra(bt.module(), bt.differential(), prod, bt.unit()), {}, std::nullopt, std::nullopt, {}, {}};

  // Hochschild side: [μ, γ] + γ∘γ (= ½[γ,γ])
  out.mc_residual = ct.bracket(ct.mu(), 2, gamma, 2) + ct.circle(gamma, 2, gamma, 2);

  auto t_degree_coefficient = [&](const Scalar& s, int k) {
    const auto& coeffs = s.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (t_ring->monomial_degree(static_cast<int>(i)) == k) return coeffs[i];
    return b.ring()->zero();
  };

  out.associative_at_order.assign(static_cast<std::size_t>(N + 1), true);
  out.mc_at_order.assign(static_cast<std::size_t>(N + 1), true);
  std::vector<std::optional<std::array<std::size_t, 3>>> first_triple(static_cast<std::size_t>(N + 1));
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z) {
        const Vec ex = bt.module().basis_vector(x), ey = bt.module().basis_vector(y), ez = bt.module().basis_vector(z);
        const Vec assoc = out.algebra.mul(out.algebra.mul(ex, ey), ez) - out.algebra.mul(ex, out.algebra.mul(ey, ez));
        for (const auto& s : assoc)
          for (int k = 0; k <= N; ++k)
            if (!t_degree_coefficient(s, k).is_zero()) {
              out.associative_at_order[static_cast<std::size_t>(k)] = false;
              if (!first_triple[static_cast<std::size_t>(k)]) first_triple[static_cast<std::size_t>(k)] = std::array<std::size_t, 3>{x, y, z};
            }
      }
  for (const auto& s : out.mc_residual)
    for (int k = 0; k <= N; ++k)
      if (!t_degree_coefficient(s, k).is_zero()) out.mc_at_order[static_cast<std::size_t>(k)] = false;

  for (int k = 0; k <= N; ++k)
    if (out.associative_at_order[static_cast<std::size_t>(k)] != out.mc_at_order[static_cast<std::size_t>(k)])
      throw std::logic_error("associativity and the Hochschild MC residual disagree at order " + std::to_string(k));
  for (int k = 0; k <= N; ++k)
    if (!out.associative_at_order[static_cast<std::size_t>(k)]) {
      out.first_failing_order = k;
      out.failing_triple = first_triple[static_cast<std::size_t>(k)];
      break;
    }
  return out;
}

}  // namespace dgt
