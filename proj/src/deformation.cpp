#include "dgt/deformation.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "union_find.hpp"

namespace dgt {

Scalar extend_scalar(RingPtr target, const Scalar& s) {
  if (s.ring() == target) return s;
  if (target->base() != s.ring()) throw std::invalid_argument("scalar from " + s.ring()->descriptor() + " is not in " + target->descriptor());
  if (s.ring()->kind() == RingKind::rational) return target->from_rational(s.rational());
  return target->from_int(s.residue());
}

Vec extend_vec(RingPtr target, const Vec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(extend_scalar(target, x));
  return out;
}

DGLieAlgebra base_change(const DGLieAlgebra& g, RingPtr a) {
  const std::size_t n = g.dim();
  Matrix d(a, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) d(r, c) = extend_scalar(a, g.differential()(r, c));
  BilinearTable br(a, n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : g.bracket_table().at(i, j)) br.add(i, j, k, extend_scalar(a, c));
  return DGLieAlgebra(g.module().with_ring(a), std::move(d), std::move(br));
}

bool in_maximal_ideal(const Vec& x) {
  for (const auto& c : x)
    if (!c.constant_term().is_zero()) return false;
  return true;
}

DeformationProblem::DeformationProblem(DGLieAlgebra g, RingPtr coefficients)
    : g_(std::move(g)), coefficients_(coefficients) {
  if (coefficients_->kind() != RingKind::truncated) throw std::invalid_argument("coefficients must be a truncated polynomial ring");
  if (coefficients_->base() != g_.ring()) throw std::invalid_argument("coefficient ring is not over the ring of g");
  extended_ = base_change(g_, coefficients_);
}

bool DeformationProblem::in_L(const Vec& x, int degree) const {
  return x.size() == extended_.dim() && !x.empty() && x[0].ring() == coefficients_ &&
         extended_.module().is_homogeneous(x, degree) && in_maximal_ideal(x);
}

std::vector<Vec> DeformationProblem::enumerate_L(int degree, std::uint64_t limit) const {
  if (!coefficients_->is_finite()) throw std::domain_error("enumeration needs a finite coefficient ring");
  std::vector<Scalar> ideal;
  const std::uint64_t card = *coefficients_->cardinality();
  for (std::uint64_t i = 0; i < card; ++i) {
    Scalar s = coefficients_->element(i);
    if (s.constant_term().is_zero()) ideal.push_back(s);
  }
  const auto idx = extended_.module().indices_in_degree(degree);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (total > limit / ideal.size()) throw ResourceLimitExceeded("L_" + std::to_string(degree) + " exceeds bound " + std::to_string(limit));
    total *= ideal.size();
  }
  std::vector<Vec> out;
  out.reserve(total);
  std::vector<std::size_t> digits(idx.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    Vec v = extended_.module().zero();
    for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = ideal[digits[i]];
    out.push_back(std::move(v));
    for (std::size_t i = idx.size(); i-- > 0;) {
      if (++digits[i] < ideal.size()) break;
      digits[i] = 0;
    }
  }
  return out;
}

Vec bch(const DGLieAlgebra& l, const Vec& x, const Vec& y, int nilpotency_class) {
  if (nilpotency_class < 1 || nilpotency_class > 4)
    throw std::invalid_argument("CBH series is available through class 4, got " + std::to_string(nilpotency_class));
  if (!l.module().is_homogeneous(x, 0) || !l.module().is_homogeneous(y, 0))
    throw std::invalid_argument("CBH arguments must have degree 0");
  RingPtr r = l.ring();
  Vec z = x + y;
  if (nilpotency_class < 2) return z;
  const Vec xy = l.bracket(x, y);
  axpy(z, r->from_rational(mpq_class(1, 2)), xy);
  if (nilpotency_class < 3) return z;
  const Vec xxy = l.bracket(x, xy);
  const Scalar twelfth = r->from_rational(mpq_class(1, 12));
  axpy(z, twelfth, xxy);
  axpy(z, twelfth, l.bracket(y, l.bracket(y, x)));
  if (nilpotency_class < 4) return z;
  axpy(z, r->from_rational(mpq_class(-1, 24)), l.bracket(y, xxy));
  return z;
}

GaugeGroupElement exp_of(const DeformationProblem& p, const Vec& zeta) {
  if (!p.in_L(zeta, 0)) throw std::invalid_argument("gauge logarithm must lie in L_0 = g_0 ⊗ m");
  return GaugeGroupElement(zeta);
}

GaugeGroupElement group_product(const DeformationProblem& p, const GaugeGroupElement& a, const GaugeGroupElement& b) {
  return GaugeGroupElement(bch(p.extended(), a.log(), b.log(), std::max(1, p.nilpotency_bound())));
}

Vec infinitesimal_action(const DGLieAlgebra& l, const Vec& zeta, const Vec& alpha) {
  if (!l.module().is_homogeneous(zeta, 0)) throw std::invalid_argument("ζ must have degree 0");
  if (!l.module().is_homogeneous(alpha, -1)) throw std::invalid_argument("α must have degree -1");
  return l.bracket(zeta, alpha) - l.d(zeta);
}

namespace {

Scalar inverse_factorial(RingPtr r, int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return r->from_rational(mpq_class(mpz_class(1), f));
}

}  // namespace

Vec gauge_action(const DGLieAlgebra& l, const Vec& zeta, const Vec& gamma, int max_terms) {
  if (!l.module().is_homogeneous(zeta, 0)) throw std::invalid_argument("ζ must have degree 0");
  if (!l.module().is_homogeneous(gamma, -1)) throw std::invalid_argument("γ must have degree -1");
  RingPtr r = l.ring();
  Vec out = gamma;
  Vec term = gamma;
  for (int k = 1;; ++k) {
    term = l.bracket(zeta, term);
    if (is_zero(term)) break;
    if (k > max_terms) throw ResourceLimitExceeded("ad ζ not nilpotent within " + std::to_string(max_terms) + " terms");
    axpy(out, inverse_factorial(r, k), term);
  }
  term = l.d(zeta);
  for (int k = 0; !is_zero(term); ++k) {
    if (k > max_terms) throw ResourceLimitExceeded("ad ζ not nilpotent within " + std::to_string(max_terms) + " terms");
    axpy(out, -inverse_factorial(r, k + 1), term);
    term = l.bracket(zeta, term);
  }
  return out;
}

Vec gauge_action(const DeformationProblem& p, const GaugeGroupElement& x, const Vec& gamma) {
  if (!p.in_L(gamma, -1)) throw std::invalid_argument("γ must lie in L_{-1} = g_{-1} ⊗ m");
  return gauge_action(p.extended(), x.log(), gamma, p.nilpotency_bound() + 1);
}

DefPoints def_points(const DeformationProblem& p, DefPointsOptions options) {
  RingPtr a = p.coefficients();
  if (!a->is_finite()) throw std::domain_error("def_points needs a finite coefficient ring");
  if (a->characteristic() == 2) throw std::domain_error("def_points needs odd characteristic");
  const DGLieAlgebra& l = p.extended();

  DefPoints out;
  for (auto& v : p.enumerate_L(-1, options.max_work))
    if (is_zero(mc_residual(l, v))) out.mc.push_back(std::move(v));
  const auto group = p.enumerate_L(0, options.max_work);
  out.group_order = group.size();
  if (!out.mc.empty() && group.size() > options.max_work / out.mc.size())
    throw ResourceLimitExceeded("|MC|·|Γ| = " + std::to_string(out.mc.size()) + "·" + std::to_string(group.size()) +
                                " exceeds bound " + std::to_string(options.max_work));

  std::map<std::vector<std::uint64_t>, std::size_t> index;
  for (std::size_t i = 0; i < out.mc.size(); ++i) index.emplace(finite_key(out.mc[i]), i);

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::size_t>(group.size(), 1))));
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> moves(jobs);
  std::vector<std::string> failures(jobs);
  const int terms = p.nilpotency_bound() + 1;
  auto worker = [&](unsigned job) {
    const std::size_t lo = group.size() * job / jobs, hi = group.size() * (job + 1) / jobs;
    for (std::size_t g = lo; g < hi; ++g)
      for (std::size_t t = 0; t < out.mc.size(); ++t) {
        auto it = index.find(finite_key(gauge_action(l, group[g], out.mc[t], terms)));
        if (it == index.end()) {
          failures[job] = "gauge action left the MC set";
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

  detail::UnionFind uf(out.mc.size());
  for (const auto& batch : moves)
    for (const auto& [s, t] : batch) uf.unite(s, t);
  std::map<std::size_t, std::size_t> orbit_of_root;
  for (std::size_t i = 0; i < out.mc.size(); ++i) {
    auto [it, fresh] = orbit_of_root.emplace(uf.find(i), out.orbits.size());
    if (fresh) out.orbits.push_back(MCOrbit{{}, out.mc[i]});
    out.orbits[it->second].members.push_back(out.mc[i]);
  }
  return out;
}

MCExtension mc_extend(const DGLieAlgebra& g, const Vec& gamma1, int N) {
  const GradedModule& m = g.module();
  if (!m.is_homogeneous(gamma1, -1)) throw std::invalid_argument("γ_1 must have degree -1");
  if (!is_zero(g.d(gamma1))) throw std::invalid_argument("γ_1 must be a cycle");
  if (N < 1) throw std::invalid_argument("order must be at least 1");
  RingPtr r = g.ring();
  if (r->characteristic() == 2) throw std::domain_error("order-by-order extension needs ½");
  const Scalar half = r->from_rational(mpq_class(1, 2));

  const auto i1 = m.indices_in_degree(-1), i2 = m.indices_in_degree(-2), i3 = m.indices_in_degree(-3);
  const HomologyAt h(g.differential().block(i2, i1), g.differential().block(i3, i2));
  auto restrict_to = [](const Vec& v, const std::vector<std::size_t>& idx) {
    Vec out;
    for (std::size_t i : idx) out.push_back(v[i]);
    return out;
  };
  auto embed = [&](const Vec& v, const std::vector<std::size_t>& idx) {
    Vec out = m.zero();
    for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = v[i];
    return out;
  };

  std::vector<Vec> gammas{gamma1};
  for (int k = 2; k <= N; ++k) {
    Vec c = m.zero();
    for (int i = 1; i < k; ++i) axpy(c, half, g.bracket(gammas[i - 1], gammas[k - i - 1]));
    const Vec cr = restrict_to(c, i2);
    if (!h.is_cycle(cr)) throw std::logic_error("order " + std::to_string(k) + " right side is not a cycle");
    auto pre = h.preimage(cr);
    if (!pre) {
      ObstructionReport rep;
      rep.order = k;
      rep.cocycle = c;
      rep.class_coordinates = h.class_coordinates(cr);
      for (const auto& b : h.representatives()) rep.class_basis.push_back(embed(b, i2));
      rep.partial_solution = gammas;
      return {std::nullopt, std::move(rep)};
    }
    gammas.push_back(-embed(*pre, i1));
  }
  return {std::move(gammas), std::nullopt};
}

Vec series_element(RingPtr series_ring, const std::vector<Vec>& gammas) {
  if (series_ring->kind() != RingKind::truncated || series_ring->variables() != 1)
    throw std::invalid_argument("series ring must be k[t]/(t^{N+1})");
  if (gammas.empty()) throw std::invalid_argument("empty series");
  Vec out = zero_vec(series_ring, gammas.front().size());
  Scalar power = series_ring->one();
  for (const auto& g : gammas) {
    power *= series_ring->variable(0);
    axpy(out, power, extend_vec(series_ring, g));
  }
  return out;
}

namespace {

void check_one_cogenerator(const SymmetricCoalgebra& c) {
  if (c.generators.dim() != 1 || c.generators.degree(0) != 0)
    throw std::invalid_argument("expected the symmetric coalgebra on one degree-0 cogenerator");
}

}  // namespace

std::vector<Vec> deformation_from_twisting_cochain(const SymmetricCoalgebra& c, const DGLieAlgebra& g, const Vec& tau) {
  check_one_cogenerator(c);
  const std::size_t n = g.dim();
  if (tau.size() != c.coalgebra.dim() * n) throw std::invalid_argument("cochain has the wrong dimension");
  auto at = [&](int k) {
    const std::size_t ci = *c.index_of({k});
    Vec v = g.module().zero();
    for (std::size_t a = 0; a < n; ++a) v[a] = tau[hom_index(ci, a, n)];
    return v;
  };
  if (!is_zero(at(0))) throw std::invalid_argument("τ(ξ_0) must vanish");
  std::vector<Vec> out;
  for (int k = 1; k <= c.coalgebra.truncation(); ++k) out.push_back(at(k));
  return out;
}

Vec twisting_cochain_from_deformation(const SymmetricCoalgebra& c, const DGLieAlgebra& g, const std::vector<Vec>& gammas) {
  check_one_cogenerator(c);
  if (static_cast<int>(gammas.size()) > c.coalgebra.truncation()) throw std::invalid_argument("more coefficients than the truncation");
  const std::size_t n = g.dim();
  Vec tau = zero_vec(g.ring(), c.coalgebra.dim() * n);
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    const std::size_t ci = *c.index_of({static_cast<int>(k + 1)});
    for (std::size_t a = 0; a < n; ++a) tau[hom_index(ci, a, n)] = gammas[k][a];
  }
  return tau;
}

FamilyVerdict kuranishi_family_check(const MCFamily& rho, const DGLieAlgebra& l, int N) {
  if (rho.variables < 1) throw std::invalid_argument("a family needs at least one variable");
  RingPtr r = l.ring();
  if (r->characteristic() == 2) throw std::domain_error("family check needs ½");
  for (const auto& [alpha, v] : rho.coefficients) {
    if (static_cast<int>(alpha.size()) != rho.variables) throw std::invalid_argument("multi-index of the wrong length");
    int total = 0;
    for (int e : alpha) {
      if (e < 0) throw std::invalid_argument("negative exponent");
      total += e;
    }
    if (total == 0 && !is_zero(v)) throw std::invalid_argument("ρ(0) must vanish");
    if (total > N) throw std::invalid_argument("coefficient beyond the truncation order");
    if (!l.module().is_homogeneous(v, -1)) throw std::invalid_argument("family coefficients must have degree -1");
  }

  std::vector<BasisElement> vars;
  for (int i = 0; i < rho.variables; ++i) vars.push_back({rho.variables == 1 ? "t" : "t" + std::to_string(i + 1), 0});
  const auto s = symmetric_coalgebra(r, vars, N);
  const std::size_t n = l.dim();
  auto coefficient = [&](const std::vector<int>& alpha) {
    auto it = rho.coefficients.find(alpha);
    return it == rho.coefficients.end() ? l.module().zero() : it->second;
  };

  // coefficient-wise equations
  const Scalar half = r->from_rational(mpq_class(1, 2));
  std::vector<Vec> residuals(s.exponents.size(), l.module().zero());
  for (std::size_t i = 0; i < s.exponents.size(); ++i) {
    const auto& alpha = s.exponents[i];
    Vec res = l.d(coefficient(alpha));
    for (std::size_t j = 0; j < s.exponents.size(); ++j) {
      const auto& beta = s.exponents[j];
      std::vector<int> gamma(alpha.size());
      bool fits = true;
      int bt = 0, gt = 0;
      for (std::size_t v = 0; v < alpha.size(); ++v) {
        gamma[v] = alpha[v] - beta[v];
        fits = fits && gamma[v] >= 0;
        bt += beta[v];
        gt += gamma[v];
      }
      if (!fits || bt == 0 || gt == 0) continue;
      axpy(res, half, l.bracket(coefficient(beta), coefficient(gamma)));
    }
    residuals[i] = std::move(res);
  }

  // −ρ as a Lie twisting cochain on S^c(V)
  const auto conv = convolution_dgl(s.coalgebra, l);
  Vec tau = conv.module().zero();
  for (std::size_t i = 0; i < s.exponents.size(); ++i) {
    const Vec c = coefficient(s.exponents[i]);
    for (std::size_t a = 0; a < n; ++a) tau[hom_index(i, a, n)] = -c[a];
  }
  Vec twist = conv.d(tau);
  axpy(twist, -half, conv.bracket(tau, tau));
  for (std::size_t i = 0; i < s.exponents.size(); ++i)
    for (std::size_t a = 0; a < n; ++a)
      if (twist[hom_index(i, a, n)] != -residuals[i][a])
        throw std::logic_error("twisting-cochain reading disagrees with the coefficient equations");

  FamilyVerdict out;
  out.residual = l.module().zero();
  for (std::size_t i = 0; i < s.exponents.size(); ++i)
    if (!is_zero(residuals[i])) {
      out.valid = false;
      out.failing_index = s.exponents[i];
      out.residual = residuals[i];
      break;
    }
  return out;
}

std::vector<std::size_t> pronilpotent_degree_zero(const DGCoalgebra& c, const GradedModule& g) {
  const std::size_t e = first_nonzero(c.coaugmentation());
  if (e == c.dim() || c.coaugmentation() != c.module().basis_vector(e))
    throw std::invalid_argument("η(1) must be a basis vector");
  std::vector<std::size_t> out;
  for (std::size_t ci = 0; ci < c.dim(); ++ci) {
    if (ci == e) continue;
    for (std::size_t a = 0; a < g.dim(); ++a)
      if (g.degree(a) == c.module().degree(ci)) out.push_back(hom_index(ci, a, g.dim()));
  }
  return out;
}

EquivalenceComparison compare_equivalences(const DGCoalgebra& c, const DGAlgebra& a, const Vec& tau1, const Vec& tau2,
                                           std::uint64_t search_bound) {
  const DGAlgebra conv = convolution_algebra(c, a);
  const auto t1 = is_twisting_element(conv, tau1), t2 = is_twisting_element(conv, tau2);
  if (!t1.ok() || !t2.ok()) throw std::invalid_argument("both cochains must be twisting");

  EquivalenceComparison out;
  out.unit_group = are_gauge_equivalent(conv, *t1.element, *t2.element, search_bound);

  const DGLieAlgebra lie = convolution_dgl(c, commutator_dgl(a));
  const Vec g1 = mc_sign_adapter(tau1), g2 = mc_sign_adapter(tau2);
  const auto idx = pronilpotent_degree_zero(c, a.module());
  RingPtr r = a.ring();
  const int terms = c.truncation() + 2;

  std::vector<Scalar> alphabet;
  bool exhaustive = false;
  if (r->is_finite()) {
    for (std::uint64_t i = 0; i < *r->cardinality(); ++i) alphabet.push_back(r->element(i));
    exhaustive = true;
  } else {
    long long k = 0;
    auto fits = [&](long long kk) {
      long double total = 1;
      for (std::size_t i = 0; i < idx.size(); ++i) total *= static_cast<long double>(2 * kk + 1);
      return total <= static_cast<long double>(search_bound);
    };
    while (k < 64 && fits(k + 1)) ++k;
    alphabet.push_back(r->zero());
    for (long long v = 1; v <= k; ++v) {
      alphabet.push_back(r->from_int(v));
      alphabet.push_back(r->from_int(-v));
    }
  }

  std::vector<std::size_t> digits(idx.size(), 0);
  auto& d = out.deligne;
  while (true) {
    if (d.candidates_tested >= search_bound) {
      d.verdict = GaugeEquivalence::Verdict::undecided;
      return out;
    }
    Vec zeta = lie.module().zero();
    for (std::size_t i = 0; i < idx.size(); ++i) zeta[idx[i]] = alphabet[digits[i]];
    ++d.candidates_tested;
    if (gauge_action(lie, zeta, g1, terms) == g2) {
      d.verdict = GaugeEquivalence::Verdict::equivalent;
      d.witness = zeta;
      return out;
    }
    std::size_t i = idx.size();
    while (i-- > 0) {
      if (++digits[i] < alphabet.size()) break;
      digits[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  d.verdict = exhaustive ? GaugeEquivalence::Verdict::inequivalent : GaugeEquivalence::Verdict::undecided;
  return out;
}

}  // namespace dgt
