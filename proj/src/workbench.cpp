#include "twistkit/workbench.hpp"

#include <fstream>
#include <map>
#include <set>

namespace twistkit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing member \"") + key + "\"");
  return j.at(key);
}

bool present(const json& j, const char* key) { return j.is_object() && j.contains(key) && !j.at(key).is_null(); }

std::string str(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_string()) bad(std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

long long integer(const json& j, const char* key, long long fallback) {
  if (!present(j, key)) return fallback;
  if (!j.at(key).is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
  return j.at(key).get<long long>();
}

Matrix diag_sigma_sqrt2() {
  const FieldPtr q = Field::rationals();
  Matrix s(q, 2, 2);
  s(0, 0) = q->one();
  s(1, 1) = q->from_int(-1);
  return s;
}

}  // namespace

const std::vector<FixtureInfo>& fixture_list() {
  static const std::vector<FixtureInfo> list{
      {"H", "quaternion.json"}, {"O", "octonion.json"},  {"f4", "f4.json"},           {"f9", "f9.json"},
      {"f27", "f27.json"},      {"f125", "f125.json"},   {"cyclicQ", "cyclicQ.json"}, {"cyclicF9", "cyclicF9.json"}};
  return list;
}

Built fixture(const std::string& name) {
  auto ext = [](std::uint32_t p, unsigned n) {
    CyclicExtension e = finite_cyclic_extension(Field::extension(p, n));
    CyclicSubfield k = whole_field(e);
    return Built{e.k, e, k};
  };
  if (name == "H") return {quaternions(), {}, {}};
  if (name == "O") return {octonions(), {}, {}};
  if (name == "f4") return ext(2, 2);
  if (name == "f9") return ext(3, 2);
  if (name == "f27") return ext(3, 3);
  if (name == "f125") return ext(5, 3);
  if (name == "cyclicQ") {
    const CyclicExtension e = rational_cyclic_extension({mpq_class(-2), mpq_class(0), mpq_class(1)}, diag_sigma_sqrt2());
    return {cyclic_algebra(e, Field::rationals()->from_int(3)), e, cyclic_algebra_subfield(e)};
  }
  if (name == "cyclicF9") {
    const CyclicExtension e = finite_cyclic_extension(Field::extension(3, 2));
    return {cyclic_algebra(e, e.k.field()->from_int(2)), e, cyclic_algebra_subfield(e)};
  }
  bad("unknown fixture \"" + name + "\"");
}

Built recover_structure(Algebra a) {
  const auto& f = a.field();
  const std::size_t n = a.dim();
  if (f->kind() != FieldKind::prime || n < 2 || n > kMaxExtensionDegree || !a.norm() ||
      a.norm()->degree() != n || a.norm()->kind() == NormForm::Kind::determinant)
    return {std::move(a), {}, {}};
  // t^n = e_1 e_{n-1} = -(m_0 + ... + m_{n-1} t^{n-1})
  const Vector tn = a.basis_product(1, n - 1);
  std::vector<std::uint32_t> mod;
  for (const auto& c : tn) mod.push_back((-c).residues().c[0]);
  mod.push_back(1);
  try {
    const CyclicExtension e = finite_cyclic_extension(Field::extension(f->characteristic(), static_cast<unsigned>(n), mod));
    if (!e.k.same_table(a)) return {std::move(a), {}, {}};
    CyclicSubfield k = whole_field(e);
    return {std::move(a), e, k};
  } catch (const MathError&) {
    return {std::move(a), {}, {}};
  }
}

const std::vector<std::string>& library_operations() {
  static const std::vector<std::string> ops{
      "field_make",         "arith",           "frobenius",        "field_norm",
      "multiply",           "left_mul_matrix", "right_mul_matrix", "find_unit",
      "commutator",         "associator",      "nucleus",          "isotope",
      "opposite",           "norm_eval",       "polarize",         "verify_similarity",
      "verify_multiplicative", "cayley_dickson", "extension_as_algebra", "cyclic_algebra",
      "make_map",           "twist",           "norm_criterion",   "iff_criterion",
      "unitalize",          "division_exhaustive", "division_probe_char0", "scan_c",
      "commutative_twist",  "closed_form_inverse", "closed_form_star", "derivations",
      "derivations_fixing", "is_automorphism", "is_derivation",    "inner_derivation",
      "containment_check"};
  return ops;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace {

struct Entry {
  Built built;
  std::optional<TwistSpec> spec;
  std::string base;
};

json summary(const std::string& label, const Algebra& a) {
  json j{{"label", label}, {"dim", a.dim()}, {"field", field_to_json(a.field())}};
  j["unit"] = a.unit() ? vector_to_json(*a.unit()) : json(nullptr);
  j["norm_degree"] = a.norm() ? json(a.norm()->degree()) : json(nullptr);
  j["norm_certificate"] = a.norm() ? json(to_string(a.norm()->certificate())) : json(nullptr);
  j["division_certificate"] = a.division_certificate() ? json(*a.division_certificate()) : json(nullptr);
  return j;
}

json witness_json(const std::optional<ZeroDivisor>& w) {
  if (!w) return nullptr;
  return {{"x", vector_to_json(w->x)}, {"y", vector_to_json(w->y)}};
}

// The recorded unit acts as a two-sided identity on every basis element.
bool unit_verified(const Algebra& a) {
  if (!a.unit()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Vector ei = basis_vector(a.field(), a.dim(), i);
    if (!(a.product(*a.unit(), ei) == ei) || !(a.product(ei, *a.unit()) == ei)) return false;
  }
  return true;
}

json pair_json(const std::optional<std::pair<std::size_t, std::size_t>>& p) {
  if (!p) return nullptr;
  return json::array({p->first, p->second});
}

class Runner {
 public:
  Runner(std::uint64_t seed, std::filesystem::path base) : seed_(seed), base_(std::move(base)) {}

  json step(const json& s, std::set<std::string>& ops) {
    const std::string op = str(s, "op");
    ops_ = &ops;
    if (op == "scalar") return scalar(s);
    if (op == "build") return build(s);
    if (op == "fixture") return store(str(s, "label"), fixture(str(s, "name")), {"fixtures"});
    if (op == "load") return load(s);
    if (op == "map") return map(s);
    if (op == "multiply") return multiply_step(s);
    if (op == "mul_matrix") return mul_matrix(s);
    if (op == "find_unit") return unit_step(s);
    if (op == "commutator") return commutator_step(s);
    if (op == "associator") return associator_step(s);
    if (op == "nucleus") return nucleus_step(s);
    if (op == "isotope") return isotope_step(s);
    if (op == "opposite") return opposite_step(s);
    if (op == "norm") return norm_step(s);
    if (op == "similarity") return similarity_step(s);
    if (op == "multiplicative") return multiplicative_step(s);
    if (op == "twist") return twist_step(s);
    if (op == "iff") return iff_step(s);
    if (op == "unitalize") return unitalize_step(s);
    if (op == "division") return division_step(s);
    if (op == "scan") return scan_step(s);
    if (op == "commutative_twist") return commutative_step(s);
    if (op == "closed_inverse") return closed_inverse_step(s);
    if (op == "closed_star") return closed_star_step(s);
    if (op == "derivations") return derivations_step(s);
    if (op == "automorphism") return automorphism_step(s);
    if (op == "derivation") return derivation_step(s);
    if (op == "inner_derivation") return inner_derivation_step(s);
    if (op == "containment") return containment_step(s);
    if (op == "subalgebra") return subalgebra_step(s);
    if (op == "export") return {{"algebra", algebra_to_json(entry(s).built.algebra)}};
    bad("unknown step op \"" + op + "\"");
  }

 private:
  void use(std::initializer_list<const char*> names) {
    for (const char* n : names) ops_->insert(n);
  }

  Entry& entry(const json& s, const char* key = "algebra") {
    const std::string l = str(s, key);
    auto it = algebras_.find(l);
    if (it == algebras_.end()) bad("unknown algebra label \"" + l + "\"");
    return it->second;
  }

  json store(const std::string& label, Built b, std::initializer_list<const char*> names, Entry extra = {}) {
    use(names);
    if (label.empty()) bad("empty label");
    b.algebra.set_label(label);
    extra.built = std::move(b);
    json j = summary(label, extra.built.algebra);
    algebras_[label] = std::move(extra);
    return j;
  }

  Vector vec(const Algebra& a, const json& s, const char* key) {
    return vector_from_json(a.field(), member(s, key), a.dim());
  }

  Matrix map_of(const Algebra& a, const json& m) {
    if (m.is_string()) {
      auto it = maps_.find(m.get<std::string>());
      if (it == maps_.end()) bad("unknown map label \"" + m.get<std::string>() + "\"");
      if (it->second.rows() != a.dim() || !(*it->second.field() == *a.field())) bad("map does not fit the algebra");
      return it->second;
    }
    use({"make_map"});
    return make_map(a, map_spec_from_json(a, m));
  }

  json resolve_maps(const Algebra& a, json spec) {
    for (const char* k : {"f", "g", "h"})
      if (present(spec, k) && spec[k].is_string())
        spec[k] = {{"map", "matrix"}, {"m", matrix_to_json(map_of(a, spec[k]))}};
    if (present(spec, "pre_isotope") && spec["pre_isotope"].is_array())
      for (auto& m : spec["pre_isotope"])
        if (m.is_string()) m = {{"map", "matrix"}, {"m", matrix_to_json(map_of(a, m))}};
    for (const char* k : {"f", "g", "h"})
      if (present(spec, k)) use({"make_map"});
    return spec;
  }

  TwistSpec spec_of(const Algebra& a, const json& s) { return twist_spec_from_json(a, resolve_maps(a, member(s, "spec"))); }

  json scalar(const json& s) {
    use({"field_make"});
    const FieldPtr f = field_from_json(member(s, "field"));
    const Scalar x = scalar_from_json(f, member(s, "x"));
    const std::string fn = str(s, "fn");
    Scalar r;
    if (fn == "add" || fn == "sub" || fn == "mul" || fn == "div") {
      use({"arith"});
      const Scalar y = scalar_from_json(f, member(s, "y"));
      r = fn == "add" ? x + y : fn == "sub" ? x - y : fn == "mul" ? x * y : x / y;
    } else if (fn == "frobenius") {
      use({"frobenius"});
      r = frobenius(x, integer(s, "k", 1));
    } else if (fn == "norm") {
      use({"field_norm"});
      r = field_norm(x);
    } else {
      bad("unknown scalar fn \"" + fn + "\"");
    }
    return {{"value", scalar_to_json(r)}, {"text", r.to_string()}};
  }

  json build(const json& s) {
    const json& spec = member(s, "spec");
    std::set<std::string> kinds;
    collect_builds(spec, kinds);
    for (const auto& k : kinds) ops_->insert(k);
    if (str(spec, "build") == "fixture") return store(str(s, "label"), fixture(str(spec, "name")), {"fixtures"});
    return store(str(s, "label"), build_from_json(spec), {});
  }

  static void collect_builds(const json& spec, std::set<std::string>& out) {
    const std::string b = spec.value("build", "");
    if (b == "cayley_dickson" || b == "quaternions" || b == "octonions") out.insert("cayley_dickson");
    if (b == "extension") out.insert("extension_as_algebra");
    if (b == "cyclic") out.insert("cyclic_algebra");
    if (b == "cayley_dickson" && spec.contains("base")) collect_builds(spec["base"], out);
    if (b == "cyclic" && spec.contains("K")) collect_builds(spec["K"], out);
  }

  json load(const json& s) {
    std::filesystem::path p = str(s, "file");
    if (p.is_relative()) p = base_ / p;
    std::ifstream in(p);
    if (!in) bad("cannot open " + p.string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      bad(p.string() + ": " + e.what());
    }
    return store(str(s, "label"), recover_structure(algebra_from_json(j)), {});
  }

  json map(const json& s) {
    const Algebra& a = entry(s).built.algebra;
    const Matrix m = map_of(a, member(s, "spec"));
    maps_[str(s, "label")] = m;
    return {{"matrix", matrix_to_json(m)}};
  }

  json multiply_step(const json& s) {
    use({"multiply"});
    const Algebra& a = entry(s).built.algebra;
    return {{"value", vector_to_json(multiply(a, vec(a, s, "x"), vec(a, s, "y")))}};
  }

  json mul_matrix(const json& s) {
    const Algebra& a = entry(s).built.algebra;
    const std::string side = str(s, "side");
    Matrix m;
    if (side == "left") {
      use({"left_mul_matrix"});
      m = left_mul_matrix(a, vec(a, s, "x"));
    } else if (side == "right") {
      use({"right_mul_matrix"});
      m = right_mul_matrix(a, vec(a, s, "x"));
    } else {
      bad("side must be left or right");
    }
    if (present(s, "label")) maps_[str(s, "label")] = m;
    return {{"matrix", matrix_to_json(m)}, {"rank", rank(m)}};
  }

  json unit_step(const json& s) {
    use({"find_unit"});
    const auto u = find_unit(entry(s).built.algebra);
    return {{"unit", u ? vector_to_json(*u) : json(nullptr)}};
  }

  json commutator_step(const json& s) {
    use({"commutator"});
    const Algebra& a = entry(s).built.algebra;
    return {{"value", vector_to_json(commutator(a, vec(a, s, "x"), vec(a, s, "y")))}};
  }

  json associator_step(const json& s) {
    use({"associator"});
    const Algebra& a = entry(s).built.algebra;
    return {{"value", vector_to_json(associator(a, vec(a, s, "x"), vec(a, s, "y"), vec(a, s, "z")))},
            {"associative", is_associative(a)}};
  }

  json nucleus_step(const json& s) {
    use({"nucleus"});
    const Algebra& a = entry(s).built.algebra;
    json out;
    for (auto [name, side] : {std::pair{"left", NucleusSide::left},
                              {"middle", NucleusSide::middle},
                              {"right", NucleusSide::right},
                              {"all", NucleusSide::all}})
      out[name] = subspace_to_json(nucleus(a, side));
    out["center"] = subspace_to_json(center(a));
    return out;
  }

  json isotope_step(const json& s) {
    const Algebra& a = entry(s).built.algebra;
    Algebra iso = isotope(a, map_of(a, member(s, "f")), map_of(a, member(s, "g")), map_of(a, member(s, "h")));
    json j = store(str(s, "label"), {std::move(iso), {}, {}}, {"isotope"});
    if (present(s, "compare")) j["same_table_as_" + str(s, "compare")] = algebras_[str(s, "label")].built.algebra.same_table(entry(s, "compare").built.algebra);
    return j;
  }

  json opposite_step(const json& s) {
    return store(str(s, "label"), {opposite(entry(s).built.algebra), {}, {}}, {"opposite"});
  }

  json norm_step(const json& s) {
    use({"norm_eval"});
    const Algebra& a = entry(s).built.algebra;
    if (!a.norm()) throw MathError("algebra " + a.label() + " has no norm");
    json out{{"value", scalar_to_json((*a.norm())(vec(a, s, "x")))},
             {"degree", a.norm()->degree()},
             {"anisotropic", a.norm()->anisotropic()},
             {"certificate", to_string(a.norm()->certificate())}};
    if (present(s, "polarize")) {
      use({"polarize"});
      std::vector<Vector> args;
      for (const auto& v : s.at("polarize")) args.push_back(vector_from_json(a.field(), v, a.dim()));
      out["polarized"] = scalar_to_json(polarize(*a.norm(), args));
    }
    return out;
  }

  json similarity_step(const json& s) {
    use({"verify_similarity"});
    const Algebra& a = entry(s).built.algebra;
    if (!a.norm()) throw MathError("algebra " + a.label() + " has no norm");
    const auto alpha = verify_similarity(*a.norm(), map_of(a, member(s, "map")), seed_);
    return {{"factor", alpha ? scalar_to_json(*alpha) : json(nullptr)}};
  }

  json multiplicative_step(const json& s) {
    use({"verify_multiplicative"});
    const Algebra& a = entry(s).built.algebra;
    if (!a.norm()) throw MathError("algebra " + a.label() + " has no norm");
    return {{"multiplicative", verify_multiplicative(a, *a.norm(), seed_)}};
  }

  json twist_step(const json& s) {
    Entry& e = entry(s);
    const std::string base = str(s, "algebra");
    const Algebra a = e.built.algebra;
    const TwistSpec spec = spec_of(a, s);
    const auto trials = static_cast<std::size_t>(integer(s, "trials", 100));
    TwistResult r = run_twist(a, spec, seed_, trials);
    use({"twist", "norm_criterion", "unitalize"});
    use({a.field()->is_finite() ? "division_exhaustive" : "division_probe_char0"});
    const std::string label = str(s, "label");
    json j = twist_result_to_json(r);
    j["circ"] = label;
    if (r.witness && r.star) {
      // Kaplanski contract: the transported witness must be a zero divisor of (A,*).
      j["star_witness_verified"] = r.star_witness && is_zero(r.star->product(r.star_witness->x, r.star_witness->y));
    }
    if (r.star) {
      j["star_unit_verified"] = unit_verified(*r.star);
      j["star"] = label + "*";
      store(label + "*", {std::move(*r.star), {}, {}}, {}, Entry{{}, spec, base});
    }
    store(label, {std::move(r.circ), {}, {}}, {}, Entry{{}, spec, base});
    return j;
  }

  json iff_step(const json& s) {
    use({"iff_criterion"});
    const Entry& e = entry(s);
    if (!e.built.subfield) throw MathError("iff: algebra " + str(s, "algebra") + " has no cyclic subfield");
    const IffReport r = iff_criterion(e.built.algebra, spec_of(e.built.algebra, s), *e.built.subfield, seed_);
    json j{{"verdict", to_string(r.verdict)}, {"reason", r.reason}};
    j["s"] = r.s ? json(*r.s) : json(nullptr);
    j["t"] = r.t ? json(*r.t) : json(nullptr);
    j["norm_c"] = r.norm_c ? scalar_to_json(*r.norm_c) : json(nullptr);
    j["threshold"] = r.threshold ? scalar_to_json(*r.threshold) : json(nullptr);
    return j;
  }

  json unitalize_step(const json& s) {
    const Entry& e = entry(s);
    const Algebra& circ = e.built.algebra;
    const Vector a = vec(circ, s, "a"), b = vec(circ, s, "b");
    Algebra star = unitalize(circ, a, b);
    json j = store(str(s, "label"), {std::move(star), {}, {}}, {"unitalize"}, Entry{{}, e.spec, e.base});
    j["kaplanski_unit"] = vector_to_json(kaplanski_unit(circ, a, b));
    j["unit_verified"] = unit_verified(algebras_[str(s, "label")].built.algebra);
    if (present(s, "witness")) {
      const json& w = s.at("witness");
      const auto t = transport_zero_divisor(circ, a, b, {vec(circ, w, "x"), vec(circ, w, "y")});
      const Algebra& st = algebras_[str(s, "label")].built.algebra;
      j["transported"] = {{"x", vector_to_json(t.first)}, {"y", vector_to_json(t.second)}, {"zero", is_zero(st.product(t.first, t.second))}};
    }
    return j;
  }

  json division_step(const json& s) {
    const Algebra& a = entry(s).built.algebra;
    if (a.field()->is_finite()) {
      use({"division_exhaustive"});
      const auto w = zero_divisor_search(a);
      return {{"status", w ? "zero-divisor" : "certified"}, {"witness", witness_json(w)}};
    }
    use({"division_probe_char0"});
    const auto trials = static_cast<std::size_t>(integer(s, "trials", 100));
    const ProbeResult r = division_probe_char0(a, trials, seed_);
    return {{"status", r.witness ? "zero-divisor" : "no-counterexample"}, {"witness", witness_json(r.witness)},
            {"trials", r.trials}, {"seed", r.seed}};
  }

  json scan_step(const json& s) {
    use({"scan_c", "norm_criterion", "division_exhaustive"});
    const Entry& e = entry(s);
    const Algebra& a = e.built.algebra;
    std::optional<CyclicSubfield> k;
    if (s.value("iff", false)) {
      if (!e.built.subfield) throw MathError("scan: algebra " + str(s, "algebra") + " has no cyclic subfield");
      use({"iff_criterion"});
      k = e.built.subfield;
    }
    const auto v = static_cast<int>(integer(s, "variant", 1));
    return scan_to_json(scan_c(a, v, map_of(a, member(s, "f")), map_of(a, member(s, "g")), k, seed_));
  }

  json commutative_step(const json& s) {
    use({"commutative_twist"});
    const Built k = build_from_json(member(s, "K"));
    if (!k.extension) bad("commutative_twist: K must be an extension build");
    const Algebra& ka = k.extension->k;
    const CommutativeTwistReport r = commutative_twist(*k.extension, integer(s, "s", 1), integer(s, "t", 1),
                                                       vec(ka, s, "a"), vec(ka, s, "b"), vec(ka, s, "c"));
    const std::string label = str(s, "label");
    store(label, {r.circ, {}, {}}, {});
    store(label + "<>", {r.diamond, {}, {}}, {});
    return {{"commutative", r.commutative},
            {"noncommuting_pair", pair_json(r.noncommuting_pair)},
            {"closed_form_matches", r.closed_form_matches},
            {"closed_form_mismatch", pair_json(r.closed_form_mismatch)}};
  }

  json closed_inverse_step(const json& s) {
    use({"closed_form_inverse"});
    const Algebra& a = entry(s).built.algebra;
    const InverseForm kind = inverse_form_from_string(str(s, "kind"));
    const Vector c = vec(a, s, "c");
    const Matrix f = map_of(a, member(s, "map"));
    const Matrix inv = closed_form_inverse(a, kind, c, f, static_cast<unsigned>(integer(s, "n", 2)));
    const Matrix op = twist_operator(a, kind, c, f);
    const Matrix id = Matrix::identity(a.field(), a.dim());
    return {{"matrix", matrix_to_json(inv)}, {"inverts", op * inv == id && inv * op == id}};
  }

  json closed_star_step(const json& s) {
    use({"closed_form_star", "twist", "unitalize"});
    const Algebra& a = entry(s).built.algebra;
    const std::string id = str(s, "case");
    const Vector c = vec(a, s, "c");
    const Matrix f = map_of(a, member(s, "f"));
    const Matrix g = present(s, "g") ? map_of(a, s.at("g")) : f;
    const StarComparison cmp = compare_star(id, a, c, f, g);
    json j{{"case", id}, {"matches", cmp.matches()}, {"mismatch", pair_json(cmp.mismatch)}};
    json closed = json::object(), generic = json::object();
    if (present(s, "products"))
      for (const auto& p : s.at("products")) {
        const auto i = p.at(0).get<std::size_t>(), k = p.at(1).get<std::size_t>();
        if (i >= a.dim() || k >= a.dim()) bad("product index out of range");
        const std::string key = std::to_string(i) + "," + std::to_string(k);
        closed[key] = vector_to_json(cmp.closed.basis_product(i, k));
        generic[key] = vector_to_json(cmp.generic.basis_product(i, k));
      }
    j["closed"] = std::move(closed);
    j["generic"] = std::move(generic);
    return j;
  }

  json derivations_step(const json& s) {
    const Algebra& a = entry(s).built.algebra;
    DerivationSpace d;
    if (present(s, "fix")) {
      use({"derivations_fixing"});
      d = derivations_fixing(a, vec(a, s, "fix"));
    } else {
      use({"derivations"});
      d = derivations(a);
    }
    std::vector<Check> checks;
    for (std::size_t i = 0; i < d.dim(); ++i) {
      const auto v = derivation_violation(a, d.basis[i]);
      checks.push_back({"basis[" + std::to_string(i) + "]", !v, v ? pair_json(v).dump() : ""});
    }
    if (a.unit()) {
      bool kills = true;
      for (const auto& m : d.basis) kills = kills && is_zero(m * *a.unit());
      checks.push_back({"kills-unit", kills, ""});
    }
    use({"is_derivation"});
    return analysis_report(a.label(), d, checks);
  }

  json automorphism_step(const json& s) {
    use({"is_automorphism"});
    const Algebra& a = entry(s).built.algebra;
    const auto v = automorphism_violation(a, map_of(a, member(s, "map")));
    return {{"pass", !v}, {"witness", pair_json(v)}};
  }

  json derivation_step(const json& s) {
    use({"is_derivation"});
    const Algebra& a = entry(s).built.algebra;
    const auto v = derivation_violation(a, map_of(a, member(s, "map")));
    return {{"pass", !v}, {"witness", pair_json(v)}};
  }

  json inner_derivation_step(const json& s) {
    use({"inner_derivation"});
    const Algebra& a = entry(s).built.algebra;
    const Matrix d = inner_derivation(a, vec(a, s, "a"));
    if (present(s, "label")) maps_[str(s, "label")] = d;
    return {{"matrix", matrix_to_json(d)}};
  }

  // Candidates must satisfy the hypotheses exactly (commute with f and g, fix
  // or kill c) before they are tried on the target.
  json containment_step(const json& s) {
    use({"containment_check"});
    const std::string label = str(s, "algebra");
    const Entry& target = entry(s);
    if (!target.spec) throw MathError("containment: no twist spec recorded for " + label);
    const TwistSpec& spec = *target.spec;
    const Algebra& base = algebras_.at(target.base).built.algebra;
    const std::string family = str(s, "family");
    std::vector<Check> checks;
    std::size_t skipped = 0;
    std::size_t family_dim = 0;
    if (family == "inner-sample") {
      use({"is_automorphism"});
      std::vector<Matrix> cand;
      std::vector<std::size_t> idx;
      const auto sample = quaternion_sample(base);
      for (std::size_t i = 0; i < sample.size(); ++i) {
        const Matrix F = inner_map(base, sample[i]);
        if (F * spec.f == spec.f * F && F * spec.g == spec.g * F && F * spec.c == spec.c) {
          cand.push_back(F);
          idx.push_back(i);
        } else {
          ++skipped;
        }
      }
      auto res = check_automorphisms(target.built.algebra, cand, "inner");
      for (std::size_t i = 0; i < res.size(); ++i) res[i].name = "inner[" + std::to_string(idx[i]) + "]";
      checks = std::move(res);
    } else if (family == "derivations") {
      use({"derivations", "is_derivation"});
      const DerivationSpace src = derivations(present(s, "source") ? entry(s, "source").built.algebra : base);
      std::vector<Matrix> cand;
      for (const auto& d : src.basis) {
        if (d * spec.f == spec.f * d && d * spec.g == spec.g * d && is_zero(d * spec.c))
          cand.push_back(d);
        else
          ++skipped;
      }
      family_dim = cand.size();
      checks = check_derivations(target.built.algebra, cand, "der");
    } else if (family == "inner-derivation") {
      use({"inner_derivation", "is_derivation"});
      const Vector c = present(s, "c") ? vec(base, s, "c") : spec.c;
      const std::vector<Matrix> cand{inner_derivation(base, c)};
      family_dim = 1;
      checks = check_derivations(target.built.algebra, cand, "d_c");
    } else {
      bad("unknown family \"" + family + "\"");
    }
    use({"derivations"});
    const DerivationSpace d = derivations(target.built.algebra);
    const std::size_t bound = static_cast<std::size_t>(integer(s, "bound", static_cast<long long>(family_dim)));
    checks.push_back({"der_dim>=" + std::to_string(bound), d.dim() >= bound, "der_dim=" + std::to_string(d.dim())});
    json j = analysis_report(label, d, checks);
    j["skipped"] = skipped;
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;
    j["all_pass"] = all;
    return j;
  }

  // e_i e_j for i, j in `coords` must stay inside span(e_coords).
  json subalgebra_step(const json& s) {
    const Algebra& a = entry(s).built.algebra;
    std::vector<std::size_t> coords;
    for (const auto& c : member(s, "coords")) {
      const auto i = c.get<std::size_t>();
      if (i >= a.dim()) bad("coordinate out of range");
      coords.push_back(i);
    }
    const std::set<std::size_t> inside(coords.begin(), coords.end());
    for (auto i : coords)
      for (auto j : coords) {
        const Vector v = a.basis_product(i, j);
        for (std::size_t k = 0; k < a.dim(); ++k)
          if (!inside.count(k) && !v[k].is_zero())
            return {{"closed", false}, {"violation", json::array({i, j, k})}};
      }
    return {{"closed", true}, {"violation", nullptr}};
  }

  std::uint64_t seed_;
  std::filesystem::path base_;
  std::map<std::string, Entry> algebras_;
  std::map<std::string, Matrix> maps_;
  std::set<std::string>* ops_ = nullptr;
};

std::string error_text(const std::exception& e) { return e.what(); }

}  // namespace

ScenarioOutcome run_scenario(const json& scenario, std::uint64_t seed, const std::filesystem::path& base) {
  if (!scenario.is_object()) bad("scenario must be a JSON object");
  const json& steps = member(scenario, "steps");
  if (!steps.is_array()) bad("\"steps\" must be an array");
  Runner runner(seed, base);
  json report{{"scenario", scenario.value("name", "")},
              {"seed", seed},
              {"anchors", scenario.value("anchors", json::array())}};
  json out = json::array();
  json failures = json::array();
  std::set<std::string> coverage;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const json& s = steps[i];
    json rec{{"index", i}, {"op", member(s, "op")}};
    if (present(s, "label")) rec["label"] = s.at("label");
    std::set<std::string> ops;
    json result;
    if (present(s, "expect_error")) {
      const json& want = s.at("expect_error");
      std::string err;
      try {
        runner.step(s, ops);
      } catch (const MathError& e) {
        err = error_text(e);
      }
      const bool pass = !err.empty() && (!want.is_string() || err.find(want.get<std::string>()) != std::string::npos);
      result = {{"error", err.empty() ? json(nullptr) : json(err)}};
      if (!pass) failures.push_back({{"step", i}, {"pointer", "/error"}, {"expected", want}, {"computed", result["error"]}});
    } else {
      result = runner.step(s, ops);
    }
    coverage.insert(ops.begin(), ops.end());
    json checks = json::array();
    if (present(s, "expect")) {
      const json& ex = s.at("expect");
      if (!ex.is_object()) bad("\"expect\" must map JSON pointers to values");
      for (const auto& [ptr, want] : ex.items()) {
        json got;
        try {
          const json::json_pointer p(ptr);
          got = result.contains(p) ? result.at(p) : json(nullptr);
        } catch (const json::exception&) {
          bad("malformed pointer \"" + ptr + "\" in step " + std::to_string(i));
        }
        const bool pass = got == want;
        checks.push_back({{"pointer", ptr}, {"expected", want}, {"computed", got}, {"pass", pass}});
        if (!pass) failures.push_back({{"step", i}, {"pointer", ptr}, {"expected", want}, {"computed", got}});
      }
    }
    rec["covers"] = json(std::vector<std::string>(ops.begin(), ops.end()));
    rec["result"] = std::move(result);
    rec["checks"] = std::move(checks);
    out.push_back(std::move(rec));
  }
  report["steps"] = std::move(out);
  report["coverage"] = json(std::vector<std::string>(coverage.begin(), coverage.end()));
  report["failures"] = failures;
  report["status"] = failures.empty() ? "pass" : "fail";
  return {std::move(report), failures.empty() ? 0 : 1};
}

}  // namespace twistkit
