#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "dgt/chen_hpt.hpp"
#include "dgt/deformation.hpp"
#include "dgt/hochschild.hpp"
#include "dgt/io.hpp"

using namespace dgt;
using io::json;

namespace {

struct Config {
  int max_dim = 8;
  int max_order = 4;
  int max_length = 4;
  int max_arity = 4;
  std::uint64_t search_bound = 1000;
  unsigned jobs = 1;
  bool timing = false;
};

// exit codes
constexpr int ok_code = 0;
constexpr int invalid_code = 1;
constexpr int undecided_code = 2;

struct Outcome {
  json report;
  int code = ok_code;
};

std::string file_label(const std::string& path) { return std::filesystem::path(path).filename().string(); }

json start(const std::string& command, const std::vector<std::string>& inputs) {
  json r;
  r["command"] = command;
  json in = json::array();
  for (const auto& p : inputs) in.push_back(file_label(p));
  r["inputs"] = in;
  return r;
}

json parse_arg(const std::string& text, const std::string& flag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    throw io::ParseError(flag + ": not valid JSON");
  }
}

Vec element_arg(const GradedModule& m, const std::string& text, const std::string& flag) {
  try {
    return io::vec_from_json(m, parse_arg(text, flag));
  } catch (const io::ParseError& e) {
    throw io::ParseError(flag + ": " + e.what());
  }
}

void check_dim(const Config& cfg, std::size_t dim) {
  if (dim > static_cast<std::size_t>(cfg.max_dim))
    throw ResourceLimitExceeded("dimension " + std::to_string(dim) + " exceeds --max-dim " + std::to_string(cfg.max_dim));
}

void require_finite(RingPtr r) {
  if (!r->is_finite()) throw std::domain_error("exhaustive enumeration needs a finite ring, got " + r->descriptor());
}

json vecs_json(const GradedModule& m, const std::vector<Vec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(io::vec_to_json(m, v));
  return out;
}

// ---------------------------------------------------------------------------

Outcome cmd_validate(const Config&, const std::string& path, bool emit) {
  Outcome o{start("validate", {path})};
  const io::Presentation raw = io::parse_unchecked(io::read_json(path));
  o.report["kind"] = io::to_string(raw.kind);
  std::optional<Violation> v;
  std::size_t dim = 0;
  std::visit(
      [&](const auto& obj) {
        using T = std::decay_t<decltype(obj)>;
        if constexpr (std::is_same_v<T, DGAlgebra>) v = find_dga_violation(obj);
        else if constexpr (std::is_same_v<T, DGLieAlgebra>) v = find_dgl_violation(obj);
        else if constexpr (std::is_same_v<T, DGCoalgebra>) v = find_coalgebra_violation(obj);
        else v = find_module_violation(obj);
        dim = obj.module().dim();
      },
      raw.object);
  o.report["scalars"] = std::visit([](const auto& obj) { return obj.module().ring()->descriptor(); }, raw.object);
  o.report["dimension"] = dim;
  o.report["valid"] = !v.has_value();
  if (v) {
    o.report["violation"] = io::violation_to_json(*v);
    o.code = invalid_code;
  } else if (emit) {
    o.report["canonical"] = io::to_json(raw);
  }
  return o;
}

Outcome cmd_twist_check(const Config&, const std::string& path, const std::string& element) {
  Outcome o{start("twist check", {path})};
  const auto p = io::load(path);
  if (p.kind == io::Kind::dgl) {
    const auto& g = p.lie();
    const Vec gamma = element_arg(g.module(), element, "--element");
    const auto check = is_mc(g, gamma);
    o.report["equation"] = "dγ + ½[γ,γ] = 0";
    o.report["element"] = io::vec_to_json(g.module(), gamma);
    o.report["maurer_cartan"] = check.ok();
    o.report["residual"] = io::vec_to_json(g.module(), check.residual);
    o.report["twisted_differential_squares_to_zero"] =
        [&] { const Matrix t = twisted_differential_lie(g, gamma); return (t * t).is_zero(); }();
    return o;
  }
  const auto& a = p.algebra();
  const Vec tau = element_arg(a.module(), element, "--element");
  const auto check = is_twisting_element(a, tau);
  const Matrix t = twisted_operator(a, tau);
  o.report["equation"] = "Dτ = ττ";
  o.report["element"] = io::vec_to_json(a.module(), tau);
  o.report["twisting"] = check.ok();
  o.report["residual"] = io::vec_to_json(a.module(), check.residual);
  o.report["twisted_differential_squares_to_zero"] = (t * t).is_zero();
  return o;
}

Outcome cmd_twist_enumerate(const Config& cfg, const std::string& path) {
  Outcome o{start("twist enumerate", {path})};
  const auto a = io::load(path).algebra();
  require_finite(a.ring());
  check_dim(cfg, a.dim());
  const auto ts = enumerate_twisting_elements(a, {cfg.search_bound});
  json list = json::array();
  for (const auto& t : ts) list.push_back(io::vec_to_json(a.module(), t.value()));
  o.report["count"] = ts.size();
  o.report["twisting_elements"] = list;
  return o;
}

Outcome cmd_gauge_act(const Config&, const std::string& path, const std::string& unit, const std::string& element) {
  Outcome o{start("gauge act", {path})};
  const auto a = io::load(path).algebra();
  const Vec x = element_arg(a.module(), unit, "--unit");
  const Vec y = element_arg(a.module(), element, "--element");
  const auto u = as_unit(a, x);
  if (!u) throw std::invalid_argument("--unit: not an invertible degree-0 element");
  const Vec out = gauge_act_raw(a, *u, y);
  o.report["unit"] = io::vec_to_json(a.module(), x);
  o.report["inverse"] = io::vec_to_json(a.module(), u->inverse());
  o.report["element"] = io::vec_to_json(a.module(), y);
  o.report["result"] = io::vec_to_json(a.module(), out);
  o.report["element_twisting"] = is_twisting_element(a, y).ok();
  o.report["result_twisting"] = is_twisting_element(a, out).ok();
  return o;
}

Outcome cmd_gauge_orbit(const Config& cfg, const std::string& path) {
  Outcome o{start("gauge orbit", {path})};
  const auto a = io::load(path).algebra();
  require_finite(a.ring());
  check_dim(cfg, a.dim());
  const auto orbits = functor_D(a, {cfg.search_bound * cfg.search_bound, cfg.jobs});
  json list = json::array();
  for (const auto& orb : orbits) {
    json e;
    e["representative"] = io::vec_to_json(a.module(), orb.representative.value());
    e["size"] = orb.members.size();
    json members = json::array();
    for (const auto& m : orb.members) members.push_back(io::vec_to_json(a.module(), m.value()));
    e["members"] = members;
    list.push_back(e);
  }
  o.report["orbit_count"] = orbits.size();
  o.report["orbits"] = list;
  return o;
}

Outcome cmd_defo_points(const Config& cfg, const std::string& path, std::string coefficients, bool members) {
  Outcome o{start("defo points", {path})};
  const auto g = io::load(path).lie();
  check_dim(cfg, g.dim());
  if (coefficients.empty()) coefficients = g.ring()->descriptor() + "[t]/t^2";
  RingPtr A = Ring::parse(coefficients);
  DeformationProblem prob(g, A);
  const auto pts = def_points(prob, {cfg.search_bound * cfg.search_bound, cfg.jobs});
  const GradedModule& m = prob.extended().module();
  o.report["coefficients"] = A->descriptor();
  o.report["mc_count"] = pts.mc.size();
  o.report["group_order"] = pts.group_order;
  o.report["orbit_count"] = pts.orbits.size();
  json list = json::array();
  for (const auto& orb : pts.orbits) {
    json e;
    e["representative"] = io::vec_to_json(m, orb.representative);
    e["size"] = orb.members.size();
    if (members) e["members"] = vecs_json(m, orb.members);
    list.push_back(e);
  }
  o.report["orbits"] = list;
  return o;
}

Vec default_gamma(const DGLieAlgebra& g) {
  const GradedModule& m = g.module();
  const auto top = m.indices_in_degree(-1);
  const auto low = m.indices_in_degree(-2), high = m.indices_in_degree(0);
  const Matrix out = g.differential().block(low, top);
  const Matrix in = g.differential().block(top, high);
  std::vector<Vec> preferred;
  for (std::size_t i = 0; i < top.size(); ++i) preferred.push_back(unit_vec(g.ring(), top.size(), i));
  const HomologyAt h(in, out, preferred);
  if (h.dimension() == 0) throw std::invalid_argument("no degree -1 cohomology; pass --gamma");
  Vec v = m.zero();
  for (std::size_t i = 0; i < top.size(); ++i) v[top[i]] = h.representatives()[0][i];
  return v;
}

Outcome cmd_defo_extend(const Config& cfg, const std::string& path, const std::string& gamma, int order) {
  Outcome o{start("defo extend", {path})};
  const auto g = io::load(path).lie();
  if (order > cfg.max_order)
    throw ResourceLimitExceeded("order " + std::to_string(order) + " exceeds --max-order " + std::to_string(cfg.max_order));
  if (order < 1) throw std::invalid_argument("--order must be at least 1");
  const Vec g1 = gamma.empty() ? default_gamma(g) : element_arg(g.module(), gamma, "--gamma");
  const auto ext = mc_extend(g, g1, order);
  const GradedModule& m = g.module();
  o.report["order"] = order;
  o.report["gamma1"] = io::vec_to_json(m, g1);
  if (ext.ok()) {
    o.report["status"] = "extended";
    o.report["solution"] = vecs_json(m, *ext.solution);
  } else {
    const auto& ob = *ext.obstruction;
    o.report["status"] = "obstructed";
    json r;
    r["order"] = ob.order;
    r["cocycle"] = io::vec_to_json(m, ob.cocycle);
    json coords = json::array();
    for (const auto& c : ob.class_coordinates) coords.push_back(io::scalar_to_json(c));
    r["class_coordinates"] = coords;
    r["class_basis"] = vecs_json(m, ob.class_basis);
    r["partial_solution"] = vecs_json(m, ob.partial_solution);
    o.report["obstruction"] = r;
  }
  return o;
}

Outcome cmd_defo_compare(const Config& cfg, const std::string& cpath, const std::string& apath, const std::string& t1,
                         const std::string& t2) {
  Outcome o{start("defo compare", {cpath, apath})};
  const auto c = io::load(cpath).coalgebra();
  const auto a = io::load(apath).algebra();
  if (c.ring() != a.ring()) throw io::ParseError("coalgebra and algebra have different scalars");
  const GradedModule hm = hom_module(c.module(), a.module());
  const Vec tau1 = element_arg(hm, t1, "--tau1"), tau2 = element_arg(hm, t2, "--tau2");
  const auto cmp = compare_equivalences(c, a, tau1, tau2, cfg.search_bound);
  json b;
  b["verdict"] = to_string(cmp.unit_group.verdict);
  if (cmp.unit_group.witness) b["witness"] = io::vec_to_json(hm, cmp.unit_group.witness->value());
  b["candidates_tested"] = cmp.unit_group.candidates_tested;
  json d;
  d["verdict"] = to_string(cmp.deligne.verdict);
  if (cmp.deligne.witness) d["witness"] = io::vec_to_json(hm, *cmp.deligne.witness);
  d["candidates_tested"] = cmp.deligne.candidates_tested;
  o.report["unit_group"] = b;
  o.report["pronilpotent_group"] = d;
  using V = GaugeEquivalence::Verdict;
  if (cmp.unit_group.verdict == V::undecided || cmp.deligne.verdict == V::undecided) o.code = undecided_code;
  return o;
}

// --- Hochschild -------------------------------------------------------------

json cochain_json(const HochschildComplex& h, int arity, const Vec& f) {
  json out = json::array();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f[i].is_zero()) out.push_back(json::array({h.name(arity, i), io::scalar_to_json(f[i])}));
  return out;
}

Vec cochain_arg(const HochschildComplex& h, int arity, const std::string& text, const std::string& flag) {
  const json j = parse_arg(text, flag);
  if (!j.is_array()) throw io::ParseError(flag + ": expected [[\"x,y>z\", coefficient], ...]");
  std::map<std::string, std::size_t> names;
  for (std::size_t i = 0; i < h.cochain_dim(arity); ++i) names.emplace(h.name(arity, i), i);
  Vec f = h.zero(arity);
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string()) throw io::ParseError(flag + ": expected [name, coefficient]");
    auto it = names.find(e[0].get<std::string>());
    if (it == names.end()) throw io::ParseError(flag + ": unknown " + std::to_string(arity) + "-cochain entry '" +
                                                e[0].get<std::string>() + "'");
    f[it->second] += io::scalar_from_json(h.ring(), e[1]);
  }
  return f;
}

void check_arity(const Config& cfg, int n) {
  if (n < 0) throw std::invalid_argument("arity must be non-negative");
  if (n > cfg.max_arity)
    throw ResourceLimitExceeded("arity " + std::to_string(n) + " exceeds --max-arity " + std::to_string(cfg.max_arity));
}

Outcome cmd_hh_diff(const Config& cfg, const std::string& path, int arity, const std::string& cochain) {
  Outcome o{start("hh diff", {path})};
  const auto b = io::load(path).algebra();
  check_arity(cfg, arity + 1);
  HochschildComplex h(b, cfg.max_arity);
  o.report["arity"] = arity;
  if (cochain.empty()) {
    const Matrix d = h.differential_matrix(arity);
    json entries = json::array();
    for (std::size_t c = 0; c < d.cols(); ++c)
      for (std::size_t r = 0; r < d.rows(); ++r)
        if (!d(r, c).is_zero())
          entries.push_back(json::array({h.name(arity, c), h.name(arity + 1, r), io::scalar_to_json(d(r, c))}));
    o.report["rank"] = rank(d);
    o.report["matrix"] = entries;
  } else {
    const Vec f = cochain_arg(h, arity, cochain, "--cochain");
    o.report["cochain"] = cochain_json(h, arity, f);
    o.report["differential"] = cochain_json(h, arity + 1, h.differential(f, arity));
  }
  return o;
}

Outcome cmd_hh_bracket(const Config& cfg, const std::string& path, int m, const std::string& f, int n,
                       const std::string& g) {
  Outcome o{start("hh bracket", {path})};
  const auto b = io::load(path).algebra();
  check_arity(cfg, m);
  check_arity(cfg, n);
  check_arity(cfg, m + n - 1);
  HochschildComplex h(b, cfg.max_arity);
  const Vec fv = cochain_arg(h, m, f, "--f"), gv = cochain_arg(h, n, g, "--g");
  const int k = m + n - 1;
  o.report["arity"] = k;
  o.report["f_circle_g"] = cochain_json(h, k, h.circle(fv, m, gv, n));
  o.report["g_circle_f"] = cochain_json(h, k, h.circle(gv, n, fv, m));
  o.report["bracket"] = cochain_json(h, k, h.bracket(fv, m, gv, n));
  return o;
}

Outcome cmd_hh_cohomology(const Config& cfg, const std::string& path, int arity) {
  Outcome o{start("hh cohomology", {path})};
  const auto b = io::load(path).algebra();
  check_arity(cfg, arity + 1);
  const auto group = hh_cohomology(b, arity, cfg.max_arity);
  HochschildComplex h(b, cfg.max_arity);
  o.report["arity"] = arity;
  o.report["dimension"] = group.dimension;
  json basis = json::array();
  for (const auto& v : group.basis) basis.push_back(cochain_json(h, arity, v));
  o.report["basis"] = basis;
  return o;
}

Outcome cmd_hh_deform(const Config& cfg, const std::string& path, const std::string& gammas) {
  Outcome o{start("hh deform", {path})};
  const auto b = io::load(path).algebra();
  const json list = parse_arg(gammas, "--gammas");
  if (!list.is_array() || list.empty()) throw io::ParseError("--gammas: expected a non-empty array of 2-cochains");
  HochschildComplex h(b, std::max(cfg.max_arity, 3));
  std::vector<Vec> gs;
  for (std::size_t k = 0; k < list.size(); ++k)
    gs.push_back(cochain_arg(h, 2, list[k].dump(), "--gammas[" + std::to_string(k) + "]"));
  const auto def = deform_product(b, gs, cfg.max_order);
  o.report["order"] = gs.size();
  o.report["scalars"] = def.algebra.ring()->descriptor();
  o.report["associative"] = def.associative();
  o.report["associative_at_order"] = def.associative_at_order;
  o.report["maurer_cartan_at_order"] = def.mc_at_order;
  if (def.first_failing_order) {
    o.report["first_failing_order"] = *def.first_failing_order;
    const auto& t = *def.failing_triple;
    const auto& m = b.module();
    o.report["failing_triple"] = json::array({m.name(t[0]), m.name(t[1]), m.name(t[2])});
  }
  o.report["product"] = io::to_json(def.algebra, io::Kind::assoc)["structure"];
  return o;
}

// --- Chen -------------------------------------------------------------------

json connection_json(const DGAlgebra& a, const FormalConnection& fc, const Splitting& s) {
  const auto& wm = fc.words.coalgebra.module();
  json letters = json::array();
  for (std::size_t i = 0; i < fc.words.letters.dim(); ++i)
    letters.push_back(json::array({fc.words.letters.name(i), fc.words.letters.degree(i),
                                   io::vec_to_json(a.module(), s.h_basis[fc.letter_class[i]])}));
  json omega = json::array(), delta = json::array();
  for (std::size_t w = 0; w < wm.dim(); ++w) {
    const Vec v = fc.omega.column(w);
    if (!is_zero(v)) omega.push_back(json::array({wm.name(w), io::vec_to_json(a.module(), v)}));
    const Vec c = fc.corestriction.column(w);
    if (!is_zero(c)) delta.push_back(json::array({wm.name(w), io::vec_to_json(fc.words.letters, c)}));
  }
  json j;
  j["max_length"] = fc.truncation;
  j["letters"] = letters;
  j["omega"] = omega;
  j["delta"] = delta;
  return j;
}

FormalConnection connection_from_json(const DGAlgebra& a, const Splitting& s, const json& j) {
  if (!j.is_object() || !j.contains("max_length") || !j.contains("letters") || !j.contains("omega") ||
      !j.contains("delta"))
    throw io::ParseError("connection: expected max_length, letters, omega and delta");
  const int N = j["max_length"].get<int>();
  std::vector<BasisElement> letters;
  FormalConnection fc;
  fc.truncation = N;
  for (const auto& l : j["letters"]) {
    if (!l.is_array() || l.size() != 3) throw io::ParseError("connection: letters are [name, degree, representative]");
    letters.push_back({l[0].get<std::string>(), l[1].get<int>()});
    const Vec rep = io::vec_from_json(a.module(), l[2]);
    auto it = std::find(s.h_basis.begin(), s.h_basis.end(), rep);
    // a foreign representative has no class index; point past the end so normalization fails
    fc.letter_class.push_back(static_cast<std::size_t>(it - s.h_basis.begin()));
  }
  fc.words = tensor_coalgebra(a.ring(), letters, N);
  const auto& wm = fc.words.coalgebra.module();
  fc.omega = Matrix(a.ring(), a.dim(), wm.dim());
  fc.corestriction = Matrix(a.ring(), letters.size(), wm.dim());
  auto word = [&](const json& name) {
    auto i = wm.index_of(name.get<std::string>());
    if (!i) throw io::ParseError("connection: unknown word '" + name.get<std::string>() + "'");
    return *i;
  };
  for (const auto& e : j["omega"]) fc.omega.set_column(word(e[0]), io::vec_from_json(a.module(), e[1]));
  for (const auto& e : j["delta"]) fc.corestriction.set_column(word(e[0]), io::vec_from_json(fc.words.letters, e[1]));
  fc.delta = coderivation_from_corestrictions(fc.words, fc.corestriction);
  return fc;
}

void check_length(const Config& cfg, int n) {
  if (n < 1) throw std::invalid_argument("--max-length must be at least 1");
  if (n > cfg.max_length)
    throw ResourceLimitExceeded("word length " + std::to_string(n) + " exceeds the configured bound");
}

Outcome cmd_chen_build(const Config& cfg, const std::string& path) {
  Outcome o{start("chen build", {path})};
  const auto a = io::load(path).algebra();
  check_length(cfg, cfg.max_length);
  const auto s = splitting_from_dga(a);
  const auto fc = build_formal_connection(a, s, cfg.max_length);
  o.report["connection"] = connection_json(a, fc, s);
  json h = json::object();
  for (const auto& [deg, dim] : bar_model_homology(fc)) h[std::to_string(deg)] = dim;
  o.report["bar_homology"] = h;
  return o;
}

Outcome cmd_chen_verify(const Config& cfg, const std::string& path, const std::string& conn_path) {
  std::vector<std::string> inputs{path};
  if (!conn_path.empty()) inputs.push_back(conn_path);
  Outcome o{start("chen verify", inputs)};
  const auto a = io::load(path).algebra();
  const auto s = splitting_from_dga(a);
  FormalConnection fc;
  if (conn_path.empty()) {
    check_length(cfg, cfg.max_length);
    fc = build_formal_connection(a, s, cfg.max_length);
  } else {
    json j = io::read_json(conn_path);
    if (j.contains("connection")) j = j["connection"];
    fc = connection_from_json(a, s, j);
    check_length(cfg, fc.truncation);
  }
  const auto rep = verify_formal_connection(a, s, fc);
  json lengths = json::array();
  for (const auto& l : rep.lengths) {
    json e;
    e["length"] = l.length;
    e["residual_violations"] = l.residual_violations;
    e["delta_square_violations"] = l.delta_square_violations;
    e["normalization_violations"] = l.normalization_violations;
    if (l.first_word) e["first_word"] = *l.first_word;
    lengths.push_back(e);
  }
  o.report["coderivation"] = rep.coderivation;
  o.report["lengths"] = lengths;
  o.report["ok"] = rep.ok();
  if (!rep.ok()) o.code = invalid_code;
  return o;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("DGT_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

json error_report(const std::string& command, const std::string& type, const std::string& message) {
  json r;
  r["command"] = command;
  r["error"] = {{"type", type}, {"message", message}};
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  cfg.jobs = default_jobs();

  CLI::App app{"Exact computations with twisting elements, Maurer-Cartan elements and their deformations", "dgt"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--max-dim", cfg.max_dim, "largest dimension accepted by exhaustive enumerations");
  app.add_option("--max-order", cfg.max_order, "largest deformation order");
  app.add_option("--max-length", cfg.max_length, "word length for the formal connection");
  app.add_option("--max-arity", cfg.max_arity, "largest Hochschild cochain arity");
  app.add_option("--search-bound", cfg.search_bound, "candidate bound for searches and enumerations");
  app.add_option("--jobs", cfg.jobs, "worker threads for orbit enumerations (default: DGT_JOBS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", cfg.timing, "print elapsed time on stderr");

  std::string command;
  std::function<Outcome()> run;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& full, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    sub->parse_complete_callback([&command, full] { command = full; });
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };

  std::string file, file2, element, unit, coefficients, gamma, gammas, tau1, tau2, cochain, f, g, connection;
  int order = 2, arity = 1, m = 2, n = 2;
  bool emit = false, members = false;

  auto* validate = leaf(&app, "validate", "validate", "load a presentation and run its validator");
  validate->add_option("file", file)->required();
  validate->add_flag("--emit", emit, "include the canonical re-serialization");
  validate->final_callback([&] { run = [&] { return cmd_validate(cfg, file, emit); }; });

  auto* twist = group("twist", "twisting elements");
  auto* tcheck = leaf(twist, "check", "twist check", "residual of Dτ = ττ (dga) or the MC equation (dgl)");
  tcheck->add_option("file", file)->required();
  tcheck->add_option("--element", element, "[[name, coefficient], ...]")->required();
  tcheck->final_callback([&] { run = [&] { return cmd_twist_check(cfg, file, element); }; });
  auto* tenum = leaf(twist, "enumerate", "twist enumerate", "all twisting elements over a finite ring");
  tenum->add_option("file", file)->required();
  tenum->final_callback([&] { run = [&] { return cmd_twist_enumerate(cfg, file); }; });

  auto* gauge = group("gauge", "gauge action of the unit group");
  auto* gact = leaf(gauge, "act", "gauge act", "x*y = x y x⁻¹ + (Dx) x⁻¹");
  gact->add_option("file", file)->required();
  gact->add_option("--unit", unit)->required();
  gact->add_option("--element", element)->required();
  gact->final_callback([&] { run = [&] { return cmd_gauge_act(cfg, file, unit, element); }; });
  auto* gorbit = leaf(gauge, "orbit", "gauge orbit", "orbits of twisting elements (the set D(A))");
  gorbit->add_option("file", file)->required();
  gorbit->final_callback([&] { run = [&] { return cmd_gauge_orbit(cfg, file); }; });

  auto* defo = group("defo", "deformation functor of a DGL");
  auto* dpoints = leaf(defo, "points", "defo points", "MC(g⊗m) modulo the gauge group");
  dpoints->add_option("file", file)->required();
  dpoints->add_option("--coefficients", coefficients, "Artinian ring, default <scalars>[t]/t^2");
  dpoints->add_flag("--members", members, "list orbit members");
  dpoints->final_callback([&] { run = [&] { return cmd_defo_points(cfg, file, coefficients, members); }; });
  auto* dext = leaf(defo, "extend", "defo extend", "extend a first-order MC element order by order");
  dext->add_option("file", file)->required();
  dext->add_option("--gamma", gamma, "first-order term; default: first degree -1 cohomology class");
  dext->add_option("--order", order, "target order");
  dext->final_callback([&] { run = [&] { return cmd_defo_extend(cfg, file, gamma, order); }; });
  auto* dcmp = leaf(defo, "compare", "defo compare", "two equivalence relations on twisting cochains C → A");
  dcmp->add_option("coalgebra", file)->required();
  dcmp->add_option("algebra", file2)->required();
  dcmp->add_option("--tau1", tau1, "[[\"c>a\", coefficient], ...]")->required();
  dcmp->add_option("--tau2", tau2)->required();
  dcmp->final_callback([&] { run = [&] { return cmd_defo_compare(cfg, file, file2, tau1, tau2); }; });

  auto* hh = group("hh", "Hochschild cochains of an associative algebra");
  auto* hdiff = leaf(hh, "diff", "hh diff", "Hochschild differential");
  hdiff->add_option("file", file)->required();
  hdiff->add_option("--arity", arity);
  hdiff->add_option("--cochain", cochain, "[[\"x,y>z\", coefficient], ...]; omitted: the whole matrix");
  hdiff->final_callback([&] { run = [&] { return cmd_hh_diff(cfg, file, arity, cochain); }; });
  auto* hbr = leaf(hh, "bracket", "hh bracket", "Gerstenhaber bracket");
  hbr->add_option("file", file)->required();
  hbr->add_option("--m", m, "arity of f");
  hbr->add_option("--f", f)->required();
  hbr->add_option("--n", n, "arity of g");
  hbr->add_option("--g", g)->required();
  hbr->final_callback([&] { run = [&] { return cmd_hh_bracket(cfg, file, m, f, n, g); }; });
  auto* hcoh = leaf(hh, "cohomology", "hh cohomology", "HH^n from normalized cochains");
  hcoh->add_option("file", file)->required();
  hcoh->add_option("--arity", arity);
  hcoh->final_callback([&] { run = [&] { return cmd_hh_cohomology(cfg, file, arity); }; });
  auto* hdef = leaf(hh, "deform", "hh deform", "associativity of μ + Σ γ_k t^k");
  hdef->add_option("file", file)->required();
  hdef->add_option("--gammas", gammas, "[γ_1, γ_2, ...], each a 2-cochain")->required();
  hdef->final_callback([&] { run = [&] { return cmd_hh_deform(cfg, file, gammas); }; });

  auto* chen = group("chen", "formal connection of a DGA");
  auto* cbuild = leaf(chen, "build", "chen build", "build ω and δ up to --max-length");
  cbuild->add_option("file", file)->required();
  cbuild->final_callback([&] { run = [&] { return cmd_chen_build(cfg, file); }; });
  auto* cver = leaf(chen, "verify", "chen verify", "re-check residuals, δ² and normalization");
  cver->add_option("file", file)->required();
  cver->add_option("--connection", connection, "output of chen build; default: build afresh");
  cver->final_callback([&] { run = [&] { return cmd_chen_verify(cfg, file, connection); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return invalid_code;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (!run) throw std::logic_error("no command selected");
    out = run();
  } catch (const io::ValidationError& e) {
    out.report = error_report(command, "validation", e.what());
    out.report["violation"] = io::violation_to_json(e.violation);
    out.code = invalid_code;
  } catch (const io::ParseError& e) {
    out.report = error_report(command, "parse", e.what());
    out.code = invalid_code;
  } catch (const ResourceLimitExceeded& e) {
    out.report = error_report(command, "resource", e.what());
    out.code = undecided_code;
  } catch (const std::exception& e) {
    out.report = error_report(command, "refused", e.what());
    out.code = invalid_code;
  }
  if (out.code != ok_code && out.report.contains("error"))
    std::cerr << "dgt: " << out.report["error"]["message"].get<std::string>() << "\n";
  out.report["exit_code"] = out.code;
  std::cout << out.report.dump(2) << "\n";
  if (cfg.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "elapsed: " << ms << " ms\n";
  }
  return out.code;
}
