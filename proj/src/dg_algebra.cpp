#include "dgt/dg_algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "union_find.hpp"

namespace dgt {

struct TwistingAccess {
  static TwistingElement make(Vec v) { return TwistingElement(std::move(v)); }
};

DGAlgebra::DGAlgebra(GradedModule module, Matrix differential, BilinearTable product, Vec unit)
    : module_(std::move(module)), differential_(std::move(differential)), product_(std::move(product)),
      unit_(std::move(unit)) {
  const std::size_t n = module_.dim();
  if (differential_.rows() != n || differential_.cols() != n) throw std::invalid_argument("differential shape mismatch");
  if (product_.left_dim() != n || product_.right_dim() != n || product_.out_dim() != n)
    throw std::invalid_argument("product shape mismatch");
  if (unit_.size() != n) throw std::invalid_argument("unit shape mismatch");
}

Matrix DGAlgebra::left_multiplication(const Vec& x) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(mul(x, module_.basis_vector(j)));
  return Matrix::from_columns(ring(), dim(), cols);
}

Matrix DGAlgebra::right_multiplication(const Vec& x) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(mul(module_.basis_vector(j), x));
  return Matrix::from_columns(ring(), dim(), cols);
}

bool operator==(const DGAlgebra& a, const DGAlgebra& b) {
  return a.module_ == b.module_ && a.differential_ == b.differential_ && a.product_ == b.product_ && a.unit_ == b.unit_;
}

namespace {

std::size_t lookup(const GradedModule& m, const std::string& name) {
  auto i = m.index_of(name);
  if (!i) throw std::invalid_argument("unknown basis element '" + name + "'");
  return *i;
}

}  // namespace

DGAlgebra build_dga(const DGAlgebraSpec& spec) {
  GradedModule m(spec.ring, spec.basis);
  const std::size_t n = m.dim();
  Matrix d(spec.ring, n, n);
  for (const auto& [src, tgt, c] : spec.differential) d(lookup(m, tgt), lookup(m, src)) += c;
  BilinearTable p(spec.ring, n, n, n);
  for (const auto& [x, y, z, c] : spec.product) p.add(lookup(m, x), lookup(m, y), lookup(m, z), c);
  const std::size_t one = lookup(m, spec.unit);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.at(one, i).empty()) p.add(one, i, i, spec.ring->one());
    if (p.at(i, one).empty()) p.add(i, one, i, spec.ring->one());
  }
  return DGAlgebra(m, std::move(d), std::move(p), m.basis_vector(one));
}

std::optional<Violation> find_dga_violation(const DGAlgebra& a) {
  const GradedModule& m = a.module();
  const std::size_t n = m.dim();
  if (auto bad = GradedMap::degree_violation(m, m, -1, a.differential()))
    return Violation{"differential not of degree -1", {m.name(*bad)}, ""};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : a.product().at(i, j))
        if (m.degree(k) != m.degree(i) + m.degree(j))
          return Violation{"product not of degree 0", {m.name(i), m.name(j)}, ""};
  if (is_zero(a.unit()) || !m.is_homogeneous(a.unit(), 0)) return Violation{"unit not a nonzero degree-0 element", {}, ""};

  const Matrix dd = a.differential() * a.differential();
  for (std::size_t i = 0; i < n; ++i)
    if (!is_zero(dd.column(i))) return Violation{"D∘D = 0", {m.name(i)}, m.format(dd.column(i))};

  for (std::size_t i = 0; i < n; ++i) {
    const Vec e = m.basis_vector(i);
    if (a.mul(a.unit(), e) != e) return Violation{"left unit", {m.name(i)}, ""};
    if (a.mul(e, a.unit()) != e) return Violation{"right unit", {m.name(i)}, ""};
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec ij = a.product().value(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        const Vec ek = m.basis_vector(k);
        const Vec lhs = a.mul(ij, ek);
        const Vec rhs = a.mul(m.basis_vector(i), a.product().value(j, k));
        if (lhs != rhs)
          return Violation{"associativity", {m.name(i), m.name(j), m.name(k)}, m.format(lhs - rhs)};
      }
    }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec x = m.basis_vector(i), y = m.basis_vector(j);
      Vec lhs = a.d(a.product().value(i, j));
      Vec rhs = a.mul(a.d(x), y);
      axpy(rhs, signed_one(a.ring(), koszul_sign(1, m.degree(i))), a.mul(x, a.d(y)));
      if (lhs != rhs) return Violation{"Leibniz", {m.name(i), m.name(j)}, m.format(lhs - rhs)};
    }
  return std::nullopt;
}

Validated<DGAlgebra> validate_dga(const DGAlgebra& a) {
  if (auto v = find_dga_violation(a)) return {std::nullopt, std::move(v)};
  return {a, std::nullopt};
}

Vec twisting_residual(const DGAlgebra& a, const Vec& tau) { return a.d(tau) - a.mul(tau, tau); }

TwistingCheck is_twisting_element(const DGAlgebra& a, const Vec& tau) {
  if (!a.module().is_homogeneous(tau, -1)) throw std::invalid_argument("twisting element must be homogeneous of degree -1");
  Vec r = twisting_residual(a, tau);
  if (is_zero(r)) return {TwistingAccess::make(tau), std::move(r)};
  return {std::nullopt, std::move(r)};
}

std::optional<UnitGroupElement> as_unit(const DGAlgebra& a, const Vec& x) {
  const GradedModule& m = a.module();
  if (!m.is_homogeneous(x, 0)) throw std::invalid_argument("unit candidate must be homogeneous of degree 0");
  const auto idx = m.indices_in_degree(0);
  const Matrix lx = a.left_multiplication(x).block(idx, idx);
  Vec one0;
  for (std::size_t i : idx) one0.push_back(a.unit()[i]);
  const LinearSolution sol = solve_linear(lx, one0);
  if (!sol.solvable() || !sol.kernel.empty()) return std::nullopt;
  Vec inv = m.zero();
  for (std::size_t k = 0; k < idx.size(); ++k) inv[idx[k]] = sol.particular[k];
  if (a.mul(inv, x) != a.unit()) return std::nullopt;
  return UnitGroupElement(x, std::move(inv));
}

UnitGroupElement one_unit(const DGAlgebra& a) { return *as_unit(a, a.unit()); }

Vec gauge_act_raw(const DGAlgebra& a, const UnitGroupElement& x, const Vec& y) {
  Vec out = a.mul(a.mul(x.value(), y), x.inverse());
  out += a.mul(a.d(x.value()), x.inverse());
  return out;
}

TwistingElement gauge_act(const DGAlgebra& a, const UnitGroupElement& x, const TwistingElement& y) {
  Vec out = gauge_act_raw(a, x, y.value());
  if (!is_zero(twisting_residual(a, out))) throw std::logic_error("gauge action left the twisting set");
  return TwistingAccess::make(std::move(out));
}

std::vector<TwistingElement> enumerate_twisting_elements(const DGAlgebra& a, EnumerationLimits limits) {
  std::vector<TwistingElement> out;
  for (auto& v : enumerate_homogeneous(a.module(), -1, limits.max_elements))
    if (is_zero(twisting_residual(a, v))) out.push_back(TwistingAccess::make(std::move(v)));
  return out;
}

std::vector<UnitGroupElement> enumerate_units(const DGAlgebra& a, EnumerationLimits limits) {
  std::vector<UnitGroupElement> out;
  for (const auto& v : enumerate_homogeneous(a.module(), 0, limits.max_elements))
    if (auto u = as_unit(a, v)) out.push_back(std::move(*u));
  return out;
}

const char* to_string(GaugeEquivalence::Verdict v) {
  switch (v) {
    case GaugeEquivalence::Verdict::equivalent: return "equivalent";
    case GaugeEquivalence::Verdict::inequivalent: return "inequivalent";
    case GaugeEquivalence::Verdict::undecided: return "undecided";
  }
  return "undecided";
}

GaugeEquivalence are_gauge_equivalent(const DGAlgebra& a, const TwistingElement& y, const TwistingElement& y2,
                                      std::uint64_t search_bound) {
  const GradedModule& m = a.module();
  RingPtr ring = a.ring();
  const auto idx0 = m.indices_in_degree(0);
  const auto idx1 = m.indices_in_degree(-1);
  GaugeEquivalence result;

  // x ↦ x·y + Dx − y′·x restricted to A_0 → A_{-1}
  const Matrix full = a.right_multiplication(y.value()) + a.differential() - a.left_multiplication(y2.value());
  const Matrix sys = full.block(idx1, idx0);

  auto lift = [&](const Vec& coords) {
    Vec x = m.zero();
    for (std::size_t k = 0; k < idx0.size(); ++k) x[idx0[k]] = coords[k];
    return x;
  };
  auto try_candidate = [&](const Vec& x) {
    ++result.candidates_tested;
    if (is_zero(x)) return false;
    if (auto u = as_unit(a, x)) {
      result.verdict = GaugeEquivalence::Verdict::equivalent;
      result.witness = std::move(u);
      return true;
    }
    return false;
  };

  if (is_zero(full.apply(a.unit())) && try_candidate(a.unit())) return result;

  const LinearSolution sol = solve_linear(sys, zero_vec(ring, idx1.size()));
  if (sol.status == LinearSolution::Status::non_unit_pivot) {
    // Local ring without a free kernel basis: scan A_0 directly.
    std::vector<Vec> all;
    try {
      all = enumerate_homogeneous(m, 0, search_bound);
    } catch (const ResourceLimitExceeded&) {
      return result;
    }
    for (const auto& x : all)
      if (is_zero(full.apply(x)) && try_candidate(x)) return result;
    result.verdict = GaugeEquivalence::Verdict::inequivalent;
    return result;
  }
  result.solution_dimension = sol.kernel.size();
  if (sol.kernel.empty()) {
    result.verdict = GaugeEquivalence::Verdict::inequivalent;
    return result;
  }

  // A unit exists in the span iff one exists with coefficients in the base
  // field: invertibility only depends on the reduction modulo the maximal ideal.
  const std::size_t params = sol.kernel.size();
  std::uint64_t radix;
  std::vector<Scalar> values;
  if (ring->is_finite()) {
    radix = static_cast<std::uint64_t>(ring->characteristic());
  } else {
    // det of left multiplication on A_0 has degree ≤ dim A_0 in the parameters,
    // so a nonzero one is nonzero somewhere on {0..dim A_0}^m.
    radix = idx0.size() + 1;
  }
  for (std::uint64_t c = 0; c < radix; ++c) values.push_back(ring->from_int(static_cast<long long>(c)));

  bool exhaustive = true;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < params; ++i) {
    if (total > search_bound / radix) {
      exhaustive = false;
      total = search_bound;
      break;
    }
    total *= radix;
  }
  if (total > search_bound) {
    exhaustive = false;
    total = search_bound;
  }

  std::vector<std::uint64_t> digits(params, 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    Vec coords = zero_vec(ring, idx0.size());
    for (std::size_t g = 0; g < params; ++g)
      if (digits[g]) axpy(coords, values[digits[g]], sol.kernel[g]);
    if (try_candidate(lift(coords))) return result;
    for (std::size_t g = params; g-- > 0;) {
      if (++digits[g] < radix) break;
      digits[g] = 0;
    }
  }
  result.verdict = exhaustive ? GaugeEquivalence::Verdict::inequivalent : GaugeEquivalence::Verdict::undecided;
  return result;
}

using detail::UnionFind;

std::vector<Orbit> functor_D(const DGAlgebra& a, FunctorDOptions options) {
  const EnumerationLimits limits{options.max_work};
  const auto T = enumerate_twisting_elements(a, limits);
  const auto G = enumerate_units(a, limits);
  if (!T.empty() && G.size() > options.max_work / T.size())
    throw ResourceLimitExceeded("|G|·|T(A)| = " + std::to_string(G.size()) + "·" + std::to_string(T.size()) +
                                " exceeds bound " + std::to_string(options.max_work));

  std::map<std::vector<std::uint64_t>, std::size_t> index;
  for (std::size_t i = 0; i < T.size(); ++i) index.emplace(finite_key(T[i].value()), i);

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::size_t>(G.size(), 1))));
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> moves(jobs);
  std::vector<std::string> failures(jobs);
  auto worker = [&](unsigned job) {
    const std::size_t lo = G.size() * job / jobs, hi = G.size() * (job + 1) / jobs;
    for (std::size_t g = lo; g < hi; ++g)
      for (std::size_t t = 0; t < T.size(); ++t) {
        auto it = index.find(finite_key(gauge_act_raw(a, G[g], T[t].value())));
        if (it == index.end()) {
          failures[job] = "gauge action left the twisting set";
          return;
        }
        if (it->second != t) moves[job].emplace_back(t, it->second);
      }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker, j);
    for (auto& th : threads) th.join();
  }
  for (const auto& f : failures)
    if (!f.empty()) throw std::logic_error(f);

  UnionFind uf(T.size());
  for (const auto& batch : moves)
    for (const auto& [s, t] : batch) uf.unite(s, t);

  std::vector<Orbit> orbits;
  std::map<std::size_t, std::size_t> orbit_of_root;
  for (std::size_t i = 0; i < T.size(); ++i) {
    const std::size_t root = uf.find(i);
    auto [it, fresh] = orbit_of_root.emplace(root, orbits.size());
    if (fresh) orbits.push_back(Orbit{{}, T[i]});
    orbits[it->second].members.push_back(T[i]);
  }
  return orbits;
}

Matrix twisted_operator(const DGAlgebra& a, const Vec& tau) {
  if (!a.module().is_homogeneous(tau, -1)) throw std::invalid_argument("twisting element must be homogeneous of degree -1");
  return a.differential() - a.left_multiplication(tau);
}

}  // namespace dgt
