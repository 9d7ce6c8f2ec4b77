#include "dgt/io.hpp"

#include <filesystem>
#include <fstream>
#include <set>

namespace dgt::io {

namespace {

const std::set<std::string> common_keys{"format", "kind", "scalars", "basis", "differential", "structure"};

std::string where(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

const json& array_field(const json& j, const char* key, bool optional = true) {
  static const json empty = json::array();
  if (!j.contains(key)) {
    if (optional) return empty;
    throw ParseError(std::string("missing field '") + key + "'");
  }
  const json& a = j.at(key);
  if (!a.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return a;
}

std::string name_at(const json& j, const std::string& context) {
  if (!j.is_string()) throw ParseError(context + ": basis names must be strings");
  return j.get<std::string>();
}

std::size_t lookup(const GradedModule& m, const json& j, const std::string& context) {
  const std::string name = name_at(j, context);
  auto i = m.index_of(name);
  if (!i) throw ParseError(context + ": unknown basis element '" + name + "'");
  return *i;
}

void check_keys(const json& j, const std::set<std::string>& extra) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!common_keys.count(key) && !extra.count(key)) throw ParseError("unknown field '" + key + "'");
  }
}

RingPtr parse_ring(const json& j) {
  const json& s = require(j, "scalars");
  if (!s.is_string()) throw ParseError("'scalars' must be a ring descriptor string");
  try {
    return Ring::parse(s.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(std::string("scalars: ") + e.what());
  }
}

GradedModule parse_basis(const json& j, RingPtr ring) {
  const json& b = array_field(j, "basis", false);
  std::vector<BasisElement> basis;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const json& e = b[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer())
      throw ParseError(where("basis", i) + ": expected [name, integer degree]");
    const std::string name = e[0].get<std::string>();
    if (name.empty()) throw ParseError(where("basis", i) + ": empty name");
    if (!seen.insert(name).second) throw ParseError(where("basis", i) + ": duplicate name '" + name + "'");
    basis.push_back({name, e[1].get<int>()});
  }
  return GradedModule(ring, basis);
}

Matrix parse_differential(const json& j, const GradedModule& m) {
  Matrix d(m.ring(), m.dim(), m.dim());
  const json& a = array_field(j, "differential");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string ctx = where("differential", i);
    if (!a[i].is_array() || a[i].size() != 3) throw ParseError(ctx + ": expected [source, target, coefficient]");
    d(lookup(m, a[i][1], ctx), lookup(m, a[i][0], ctx)) += scalar_from_json(m.ring(), a[i][2]);
  }
  return d;
}

BilinearTable parse_table(const json& j, const GradedModule& left, const GradedModule& right, const GradedModule& out) {
  BilinearTable t(out.ring(), left.dim(), right.dim(), out.dim());
  const json& a = array_field(j, "structure");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string ctx = where("structure", i);
    if (!a[i].is_array() || a[i].size() != 4) throw ParseError(ctx + ": expected [x, y, z, coefficient]");
    t.add(lookup(left, a[i][0], ctx), lookup(right, a[i][1], ctx), lookup(out, a[i][2], ctx),
          scalar_from_json(out.ring(), a[i][3]));
  }
  return t;
}

Vec parse_designator(const json& j, const GradedModule& m, const std::string& field) {
  if (j.is_string()) return m.basis_vector(lookup(m, j, field));
  return vec_from_json(m, j);
}

json designator_to_json(const GradedModule& m, const Vec& v) {
  const SparseVec s = to_sparse(v);
  if (s.size() == 1 && s[0].second.is_one()) return m.name(s[0].first);
  return vec_to_json(m, v);
}

json header(Kind kind, RingPtr ring) {
  json j;
  j["format"] = format_version;
  j["kind"] = to_string(kind);
  j["scalars"] = ring->descriptor();
  return j;
}

json basis_json(const GradedModule& m) {
  json b = json::array();
  for (const auto& e : m.basis()) b.push_back(json::array({e.name, e.degree}));
  return b;
}

json differential_json(const GradedModule& m, const Matrix& d) {
  json out = json::array();
  for (std::size_t c = 0; c < m.dim(); ++c)
    for (std::size_t r = 0; r < m.dim(); ++r)
      if (!d(r, c).is_zero()) out.push_back(json::array({m.name(c), m.name(r), scalar_to_json(d(r, c))}));
  return out;
}

json table_json(const GradedModule& left, const GradedModule& right, const GradedModule& out, const BilinearTable& t) {
  json s = json::array();
  for (std::size_t i = 0; i < left.dim(); ++i)
    for (std::size_t j = 0; j < right.dim(); ++j)
      for (const auto& [k, c] : t.at(i, j))
        s.push_back(json::array({left.name(i), right.name(j), out.name(k), scalar_to_json(c)}));
  return s;
}

Kind parse_kind(const json& j) {
  const json& k = require(j, "kind");
  if (!k.is_string()) throw ParseError("'kind' must be a string");
  const std::string s = k.get<std::string>();
  for (Kind kind : {Kind::dga, Kind::dgl, Kind::coalgebra, Kind::assoc, Kind::module})
    if (s == to_string(kind)) return kind;
  throw ParseError("unknown kind '" + s + "'");
}

Presentation build(const json& j, bool validate);

DGAlgebra build_algebra(const json& j, const GradedModule& m, bool assoc) {
  const Matrix d = parse_differential(j, m);
  BilinearTable p = parse_table(j, m, m, m);
  const Vec unit = parse_designator(require(j, "unit"), m, "unit");
  if (assoc) {
    for (std::size_t i = 0; i < m.dim(); ++i)
      if (m.degree(i) != 0) throw ParseError("assoc: basis element '" + m.name(i) + "' must have degree 0");
    if (!d.is_zero()) throw ParseError("assoc: no differential allowed");
  }
  // products with a unit basis vector default to the unit law
  const SparseVec u = to_sparse(unit);
  if (u.size() == 1 && u[0].second.is_one()) {
    const std::size_t one = u[0].first;
    for (std::size_t i = 0; i < m.dim(); ++i) {
      if (p.at(one, i).empty()) p.add(one, i, i, m.ring()->one());
      if (p.at(i, one).empty()) p.add(i, one, i, m.ring()->one());
    }
  }
  return DGAlgebra(m, d, std::move(p), unit);
}

Presentation build(const json& j, bool validate) {
  if (!j.is_object()) throw ParseError("presentation must be a JSON object");
  const json& f = require(j, "format");
  if (!f.is_number_integer() || f.get<int>() != format_version)
    throw ParseError("unsupported format version (expected " + std::to_string(format_version) + ")");
  const Kind kind = parse_kind(j);
  RingPtr ring = parse_ring(j);
  Presentation p;
  p.kind = kind;
  auto check = [&](std::optional<Violation> v) {
    if (validate && v) throw ValidationError(kind, *v);
  };

  switch (kind) {
    case Kind::dga:
    case Kind::assoc: {
      check_keys(j, {"unit"});
      const GradedModule m = parse_basis(j, ring);
      DGAlgebra a = build_algebra(j, m, kind == Kind::assoc);
      check(find_dga_violation(a));
      p.object = std::move(a);
      break;
    }
    case Kind::dgl: {
      check_keys(j, {});
      const GradedModule m = parse_basis(j, ring);
      DGLieAlgebra g(m, parse_differential(j, m), parse_table(j, m, m, m));
      check(find_dgl_violation(g));
      p.object = std::move(g);
      break;
    }
    case Kind::coalgebra: {
      check_keys(j, {"counit", "coaugmentation", "cocommutative", "truncation"});
      const GradedModule m = parse_basis(j, ring);
      std::vector<std::vector<CoproductTerm>> cop(m.dim());
      const json& a = array_field(j, "structure");
      for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string ctx = where("structure", i);
        if (!a[i].is_array() || a[i].size() != 4) throw ParseError(ctx + ": expected [c, left, right, coefficient]");
        cop[lookup(m, a[i][0], ctx)].push_back(
            {lookup(m, a[i][1], ctx), lookup(m, a[i][2], ctx), scalar_from_json(ring, a[i][3])});
      }
      const Vec counit = parse_designator(require(j, "counit"), m, "counit");
      const Vec coaug = parse_designator(require(j, "coaugmentation"), m, "coaugmentation");
      bool cocomm = false;
      int trunc = 0;
      if (j.contains("cocommutative")) {
        if (!j["cocommutative"].is_boolean()) throw ParseError("'cocommutative' must be a boolean");
        cocomm = j["cocommutative"].get<bool>();
      }
      if (j.contains("truncation")) {
        if (!j["truncation"].is_number_integer()) throw ParseError("'truncation' must be an integer");
        trunc = j["truncation"].get<int>();
      }
      DGCoalgebra c(m, parse_differential(j, m), std::move(cop), counit, coaug, cocomm, trunc);
      check(find_coalgebra_violation(c));
      p.object = std::move(c);
      break;
    }
    case Kind::module: {
      check_keys(j, {"algebra"});
      Presentation inner = build(require(j, "algebra"), validate);
      if (inner.kind != Kind::dga && inner.kind != Kind::assoc) throw ParseError("module: 'algebra' must be a dga");
      const DGAlgebra& a = inner.algebra();
      if (a.ring() != ring) throw ParseError("module: scalars differ from the algebra's");
      const GradedModule m = parse_basis(j, ring);
      DGModule mod(a, m, parse_differential(j, m), parse_table(j, a.module(), m, m));
      check(find_module_violation(mod));
      p.object = std::move(mod);
      break;
    }
  }
  return p;
}

}  // namespace

const char* to_string(Kind k) {
  switch (k) {
    case Kind::dga: return "dga";
    case Kind::dgl: return "dgl";
    case Kind::coalgebra: return "coalgebra";
    case Kind::assoc: return "assoc";
    case Kind::module: return "module";
  }
  return "?";
}

ValidationError::ValidationError(Kind k, Violation v)
    : std::runtime_error(std::string(to_string(k)) + " fails validation: " + v.describe()),
      kind(k),
      violation(std::move(v)) {}

const DGAlgebra& Presentation::algebra() const {
  if (auto* a = std::get_if<DGAlgebra>(&object)) return *a;
  throw ParseError(std::string("expected a dga, got ") + to_string(kind));
}
const DGLieAlgebra& Presentation::lie() const {
  if (auto* a = std::get_if<DGLieAlgebra>(&object)) return *a;
  throw ParseError(std::string("expected a dgl, got ") + to_string(kind));
}
const DGCoalgebra& Presentation::coalgebra() const {
  if (auto* a = std::get_if<DGCoalgebra>(&object)) return *a;
  throw ParseError(std::string("expected a coalgebra, got ") + to_string(kind));
}
const DGModule& Presentation::module() const {
  if (auto* a = std::get_if<DGModule>(&object)) return *a;
  throw ParseError(std::string("expected a module, got ") + to_string(kind));
}

Presentation parse(const json& j) { return build(j, true); }
Presentation parse_unchecked(const json& j) { return build(j, false); }

json read_json(const std::string& path) {
  const std::string label = std::filesystem::path(path).filename().string();
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + label + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + label + "': " + e.what());
  }
}

Presentation load(const std::string& path) { return parse(read_json(path)); }

json to_json(const DGAlgebra& a, Kind kind) {
  const GradedModule& m = a.module();
  json j = header(kind, a.ring());
  j["basis"] = basis_json(m);
  j["differential"] = differential_json(m, a.differential());
  j["structure"] = table_json(m, m, m, a.product());
  j["unit"] = designator_to_json(m, a.unit());
  return j;
}

json to_json(const DGLieAlgebra& g) {
  const GradedModule& m = g.module();
  json j = header(Kind::dgl, g.ring());
  j["basis"] = basis_json(m);
  j["differential"] = differential_json(m, g.differential());
  j["structure"] = table_json(m, m, m, g.bracket_table());
  return j;
}

json to_json(const DGCoalgebra& c) {
  const GradedModule& m = c.module();
  json j = header(Kind::coalgebra, c.ring());
  j["basis"] = basis_json(m);
  j["differential"] = differential_json(m, c.differential());
  json s = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (const auto& t : c.coproduct(i))
      s.push_back(json::array({m.name(i), m.name(t.left), m.name(t.right), scalar_to_json(t.coef)}));
  j["structure"] = s;
  j["counit"] = designator_to_json(m, c.counit());
  j["coaugmentation"] = designator_to_json(m, c.coaugmentation());
  j["cocommutative"] = c.cocommutative();
  j["truncation"] = c.truncation();
  return j;
}

json to_json(const DGModule& mod) {
  const GradedModule& m = mod.module();
  json j = header(Kind::module, m.ring());
  j["algebra"] = to_json(mod.algebra());
  j["basis"] = basis_json(m);
  j["differential"] = differential_json(m, mod.differential());
  j["structure"] = table_json(mod.algebra().module(), m, m, mod.action_table());
  return j;
}

json to_json(const Presentation& p) {
  return std::visit(
      [&](const auto& obj) -> json {
        using T = std::decay_t<decltype(obj)>;
        if constexpr (std::is_same_v<T, DGAlgebra>) return to_json(obj, p.kind);
        else return to_json(obj);
      },
      p.object);
}

json scalar_to_json(const Scalar& s) {
  switch (s.ring()->kind()) {
    case RingKind::prime: return s.residue();
    default: return s.to_string();
  }
}

Scalar scalar_from_json(RingPtr ring, const json& j) {
  if (j.is_number_float()) throw ParseError("floating-point coefficient " + j.dump() + " is not exact");
  try {
    if (j.is_number_integer()) return ring->from_int(j.get<long long>());
    if (j.is_string()) return ring->parse_scalar(j.get<std::string>());
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("coefficient: ") + e.what());
  }
  throw ParseError("coefficient " + j.dump() + " must be an integer or a string");
}

json vec_to_json(const GradedModule& m, const Vec& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.push_back(json::array({m.name(i), scalar_to_json(v[i])}));
  return out;
}

Vec vec_from_json(const GradedModule& m, const json& j) {
  if (!j.is_array()) throw ParseError("element must be an array of [name, coefficient] pairs");
  Vec v = m.zero();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ctx = where("element", i);
    if (!j[i].is_array() || j[i].size() != 2) throw ParseError(ctx + ": expected [name, coefficient]");
    v[lookup(m, j[i][0], ctx)] += scalar_from_json(m.ring(), j[i][1]);
  }
  return v;
}

json violation_to_json(const Violation& v) {
  json j;
  j["identity"] = v.identity;
  j["elements"] = v.elements;
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

}  // namespace dgt::io
