#include "twistkit/io.hpp"

#include <algorithm>

namespace twistkit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing member \"") + key + "\"");
  return j.at(key);
}

bool present(const json& j, const char* key) { return j.is_object() && j.contains(key) && !j.at(key).is_null(); }

long long as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<long long>();
}

std::uint32_t as_u32(const json& j, const char* what) {
  const long long v = as_int(j, what);
  if (v < 0 || v > static_cast<long long>(kMaxPrime)) bad(std::string(what) + " out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

json scalar_to_json(const Scalar& s) {
  const auto& f = s.field();
  switch (f->kind()) {
    case FieldKind::rational: return s.to_string();
    case FieldKind::prime: return s.residues().c[0];
    case FieldKind::extension: {
      json arr = json::array();
      for (unsigned i = 0; i < f->degree(); ++i) arr.push_back(s.residues().c[i]);
      return arr;
    }
  }
  bad("unknown field kind");
}

Scalar scalar_from_json(const FieldPtr& f, const json& j) {
  switch (f->kind()) {
    case FieldKind::rational: {
      if (j.is_number_integer()) return f->from_int(j.get<long long>());
      if (!j.is_string()) bad("rational scalars are \"p/q\" strings or integers");
      mpq_class q;
      if (q.set_str(j.get<std::string>(), 10) != 0) bad("malformed rational \"" + j.get<std::string>() + "\"");
      if (q.get_den() == 0) bad("zero denominator in \"" + j.get<std::string>() + "\"");
      q.canonicalize();
      return f->from_rational(q);
    }
    case FieldKind::prime: {
      if (j.is_number_integer()) return f->from_int(j.get<long long>());
      if (j.is_string()) {
        try {
          return f->from_int(std::stoll(j.get<std::string>()));
        } catch (const std::logic_error&) {
        }
      }
      bad("prime-field scalars are integers");
    }
    case FieldKind::extension: {
      if (j.is_number_integer()) return f->from_int(j.get<long long>());
      if (!j.is_array() || j.size() > f->degree()) bad("extension scalars are coefficient arrays of length <= degree");
      std::vector<long long> c;
      for (const auto& x : j) c.push_back(as_int(x, "coefficient"));
      return f->from_coeffs(c);
    }
  }
  bad("unknown field kind");
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(scalar_to_json(x));
  return arr;
}

Vector vector_from_json(const FieldPtr& f, const json& j, std::optional<std::size_t> len) {
  if (!j.is_array()) bad("vector must be an array");
  if (len && j.size() != *len) bad("vector has length " + std::to_string(j.size()) + ", expected " + std::to_string(*len));
  Vector v;
  for (const auto& x : j) v.push_back(scalar_from_json(f, x));
  return v;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r)));
  return rows;
}

Matrix matrix_from_json(const FieldPtr& f, const json& j, std::optional<std::size_t> n) {
  if (!j.is_array() || j.empty()) bad("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  if (n && rows != *n) bad("matrix has " + std::to_string(rows) + " rows, expected " + std::to_string(*n));
  std::vector<Vector> rv;
  for (const auto& r : j) rv.push_back(vector_from_json(f, r, rows));
  return Matrix::from_rows(f, rows, rv);
}

json field_to_json(const FieldPtr& f) {
  switch (f->kind()) {
    case FieldKind::rational: return {{"kind", "rational"}};
    case FieldKind::prime: return {{"kind", "prime"}, {"p", f->characteristic()}};
    case FieldKind::extension:
      return {{"kind", "ext"}, {"p", f->characteristic()}, {"n", f->degree()}, {"modulus", f->modulus()}};
  }
  bad("unknown field kind");
}

FieldPtr field_from_json(const json& j) {
  const json& kind = member(j, "kind");
  if (!kind.is_string()) bad("field kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "rational") return Field::rationals();
  if (k == "prime") return Field::prime(as_u32(member(j, "p"), "p"));
  if (k == "ext") {
    const std::uint32_t p = as_u32(member(j, "p"), "p");
    const long long n = as_int(member(j, "n"), "n");
    if (n < 1 || n > static_cast<long long>(kMaxExtensionDegree)) bad("n out of range");
    std::optional<std::vector<std::uint32_t>> mod;
    if (present(j, "modulus")) {
      mod.emplace();
      for (const auto& c : j.at("modulus")) mod->push_back(as_u32(c, "modulus coefficient"));
    }
    return Field::extension(p, static_cast<unsigned>(n), mod);
  }
  bad("unknown field kind \"" + k + "\"");
}

namespace {

json norm_to_json(const Algebra& a) {
  const NormForm& n = *a.norm();
  json j;
  j["certificate"] = to_string(n.certificate());
  if (n.kind() == NormForm::Kind::gram) {
    j["kind"] = "gram";
    j["gram"] = matrix_to_json(*n.gram());
  } else if (n.kind() == NormForm::Kind::determinant && n.degree() * n.degree() == a.dim()) {
    j["kind"] = "reduced-norm";
    j["degree"] = n.degree();
  } else if (n.degree() == a.dim() && a.unit()) {
    j["kind"] = "field-norm";
  } else {
    bad("norm of " + a.label() + " has no file encoding");
  }
  return j;
}

NormForm field_norm_of(const Algebra& a, AnisotropyCert cert) {
  Algebra bare(a.field(), a.dim(), a.table(), a.label());
  return NormForm::from_evaluator(
      a.field(), a.dim(), static_cast<unsigned>(a.dim()), NormForm::Kind::explicit_polynomial,
      [bare](const Vector& x) { return determinant(left_mul_matrix(bare, x)); }, cert);
}

// The cyclic structure is recovered from the table: K on the first n
// coordinates, sigma from u x_i = sigma(x_i) u and d from u^n.
NormForm reduced_norm_of(const Algebra& a, std::size_t n, AnisotropyCert cert) {
  const auto& f = a.field();
  if (n * n != a.dim() || n < 2) bad("reduced-norm degree does not match dim");
  std::vector<Scalar> kt;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) kt.push_back(a.structure(i, j, k));
  Algebra k(f, n, std::move(kt), "K");
  k.set_unit(basis_vector(f, n, 0));
  Matrix sigma(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m) sigma(m, i) = a.structure(n, i, m + n);
  const Vector u = basis_vector(f, a.dim(), n);
  Vector un = u;
  for (std::size_t i = 1; i < n; ++i) un = a.product(un, u);
  const Scalar d = un[0];
  if (!(un == scale(d, basis_vector(f, a.dim(), 0)))) bad("reduced-norm: u^n is not a scalar");
  const CyclicExtension ext{std::move(k), std::move(sigma)};
  return NormForm::from_evaluator(
      f, a.dim(), static_cast<unsigned>(n), NormForm::Kind::determinant,
      [ext, d](const Vector& x) { return reduced_norm(ext, d, x); }, cert);
}

}  // namespace

json algebra_to_json(const Algebra& a) {
  const std::size_t n = a.dim();
  json table = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(vector_to_json(a.basis_product(i, j)));
    table.push_back(std::move(row));
  }
  json j{{"field", field_to_json(a.field())},
         {"dim", n},
         {"table", std::move(table)},
         {"unit", a.unit() ? vector_to_json(*a.unit()) : json(nullptr)},
         {"label", a.label()}};
  if (a.norm()) j["norm"] = norm_to_json(a);
  if (a.division_certificate()) j["division_certificate"] = *a.division_certificate();
  return j;
}

Algebra algebra_from_json(const json& j) {
  const FieldPtr f = field_from_json(member(j, "field"));
  const long long dl = as_int(member(j, "dim"), "dim");
  if (dl < 1 || dl > 64) bad("dim out of range");
  const auto n = static_cast<std::size_t>(dl);
  const json& t = member(j, "table");
  if (!t.is_array() || t.size() != n) bad("table must have dim rows");
  std::vector<Scalar> table;
  table.reserve(n * n * n);
  for (const auto& row : t) {
    if (!row.is_array() || row.size() != n) bad("table row must have dim entries");
    for (const auto& v : row) {
      const Vector e = vector_from_json(f, v, n);
      table.insert(table.end(), e.begin(), e.end());
    }
  }
  std::string label = present(j, "label") ? j.at("label").get<std::string>() : "";
  Algebra a(f, n, std::move(table), std::move(label));
  if (present(j, "unit")) a.set_unit(vector_from_json(f, j.at("unit"), n));
  if (present(j, "norm")) {
    const json& nj = j.at("norm");
    AnisotropyCert cert = AnisotropyCert::unknown;
    if (present(nj, "certificate")) {
      const auto c = anisotropy_cert_from_string(nj.at("certificate").get<std::string>());
      if (!c) bad("unknown anisotropy certificate");
      cert = *c;
    }
    const std::string kind = member(nj, "kind").get<std::string>();
    if (kind == "gram") {
      a.set_norm(NormForm::from_gram(matrix_from_json(f, member(nj, "gram"), n), cert));
    } else if (kind == "field-norm") {
      a.set_norm(field_norm_of(a, cert));
    } else if (kind == "reduced-norm") {
      a.set_norm(reduced_norm_of(a, static_cast<std::size_t>(as_int(member(nj, "degree"), "degree")), cert));
    } else {
      bad("unknown norm kind \"" + kind + "\"");
    }
  }
  if (present(j, "division_certificate")) a.set_division_certificate(j.at("division_certificate").get<std::string>());
  return a;
}

MapSpec map_spec_from_json(const Algebra& a, const json& j) {
  const std::string kind = member(j, "map").get<std::string>();
  MapSpec s;
  if (kind == "id") {
    s.kind = MapSpec::Kind::identity;
  } else if (kind == "conj") {
    s.kind = MapSpec::Kind::conjugation;
  } else if (kind == "frob") {
    s.kind = MapSpec::Kind::frobenius;
    s.power = present(j, "k") ? as_int(j.at("k"), "k") : 1;
  } else if (kind == "inner" || kind == "reflection") {
    s.kind = kind == "inner" ? MapSpec::Kind::inner : MapSpec::Kind::reflection;
    s.q = vector_from_json(a.field(), member(j, "q"), a.dim());
  } else if (kind == "matrix") {
    s.kind = MapSpec::Kind::explicit_matrix;
    s.matrix = matrix_from_json(a.field(), member(j, "m"), a.dim());
  } else {
    bad("unknown map \"" + kind + "\"");
  }
  return s;
}

json map_spec_to_json(const MapSpec& s) {
  switch (s.kind) {
    case MapSpec::Kind::identity: return {{"map", "id"}};
    case MapSpec::Kind::conjugation: return {{"map", "conj"}};
    case MapSpec::Kind::frobenius: return {{"map", "frob"}, {"k", s.power}};
    case MapSpec::Kind::inner: return {{"map", "inner"}, {"q", vector_to_json(s.q)}};
    case MapSpec::Kind::reflection: return {{"map", "reflection"}, {"q", vector_to_json(s.q)}};
    case MapSpec::Kind::explicit_matrix: return {{"map", "matrix"}, {"m", matrix_to_json(s.matrix)}};
  }
  bad("unknown map kind");
}

json vector_text_to_json(const std::string& text) {
  if (!text.empty() && text.front() == '[') {
    try {
      return json::parse(text);
    } catch (const json::parse_error&) {
      bad("malformed vector \"" + text + "\"");
    }
  }
  json out = json::array();
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const std::string tok = text.substr(start, end - start);
    if (tok.empty()) bad("empty coordinate in \"" + text + "\"");
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == tok.size())
      out.push_back(v);
    else
      out.push_back(tok);
    start = end + 1;
  }
  return out;
}

MapSpec map_spec_from_string(const Algebra& a, const std::string& s) {
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  json j{{"map", head}};
  if (head == "frob") {
    try {
      j["k"] = arg.empty() ? 1 : std::stoll(arg);
    } catch (const std::logic_error&) {
      bad("frob power must be an integer: " + s);
    }
  } else if (head == "inner" || head == "reflection") {
    j["q"] = vector_text_to_json(arg);
  } else if (!arg.empty()) {
    bad("unexpected argument in map " + s);
  }
  return map_spec_from_json(a, j);
}

Built build_from_json(const json& j) {
  const std::string kind = member(j, "build").get<std::string>();
  if (kind == "quaternions") return {quaternions(), {}, {}};
  if (kind == "octonions") return {octonions(), {}, {}};
  if (kind == "scalar") return {scalar_algebra(field_from_json(member(j, "field"))), {}, {}};
  if (kind == "cayley_dickson") {
    const Built base = build_from_json(member(j, "base"));
    return {cayley_dickson(base.algebra, scalar_from_json(base.algebra.field(), member(j, "c"))), {}, {}};
  }
  if (kind == "extension") {
    json fd{{"kind", "ext"}, {"p", member(j, "p")}, {"n", member(j, "n")}};
    if (present(j, "modulus")) fd["modulus"] = j.at("modulus");
    const FieldPtr k = field_from_json(fd);
    CyclicExtension e = finite_cyclic_extension(k);
    CyclicSubfield sub = whole_field(e);
    return {e.k, e, sub};
  }
  if (kind == "rational_cyclic") {
    std::vector<mpq_class> mod;
    const FieldPtr q = Field::rationals();
    for (const auto& c : member(j, "modulus")) mod.push_back(scalar_from_json(q, c).rational());
    if (mod.size() < 3) bad("rational_cyclic modulus needs degree >= 2");
    const Matrix sigma = matrix_from_json(q, member(j, "sigma"), mod.size() - 1);
    CyclicExtension e = rational_cyclic_extension(mod, sigma);
    CyclicSubfield sub = whole_field(e);
    return {e.k, e, sub};
  }
  if (kind == "cyclic") {
    const Built k = build_from_json(member(j, "K"));
    if (!k.extension) bad("cyclic: K must be an extension or rational_cyclic build");
    const Algebra a = cyclic_algebra(*k.extension, scalar_from_json(k.algebra.field(), member(j, "d")));
    return {a, k.extension, cyclic_algebra_subfield(*k.extension)};
  }
  if (kind == "fixture") bad("fixture builds are resolved by the workbench");
  bad("unknown build \"" + kind + "\"");
}

TwistSpec twist_spec_from_json(const Algebra& a, const json& j) {
  const long long v = as_int(member(j, "variant"), "variant");
  TwistSpec s = TwistSpec::basic(a, static_cast<int>(v), vector_from_json(a.field(), member(j, "c"), a.dim()));
  if (present(j, "f")) s.f = make_map(a, map_spec_from_json(a, j.at("f")));
  if (present(j, "g")) s.g = make_map(a, map_spec_from_json(a, j.at("g")));
  if (present(j, "h")) s.h = make_map(a, map_spec_from_json(a, j.at("h")));
  if (present(j, "pre_isotope")) {
    const json& p = j.at("pre_isotope");
    if (!p.is_array() || p.size() != 3) bad("pre_isotope must list three maps");
    s.pre_isotope = std::array<Matrix, 3>{make_map(a, map_spec_from_json(a, p[0])),
                                          make_map(a, map_spec_from_json(a, p[1])),
                                          make_map(a, map_spec_from_json(a, p[2]))};
  }
  if (present(j, "kaplanski")) {
    const json& k = j.at("kaplanski");
    s.a = vector_from_json(a.field(), member(k, "a"), a.dim());
    s.b = vector_from_json(a.field(), member(k, "b"), a.dim());
  }
  return s;
}

namespace {

json witness_json(const std::optional<ZeroDivisor>& w) {
  if (!w) return nullptr;
  return {{"x", vector_to_json(w->x)}, {"y", vector_to_json(w->y)}};
}

}  // namespace

json twist_result_to_json(const TwistResult& r) {
  json j{{"circ", r.circ.label()},
         {"status", to_string(r.status)},
         {"witness", witness_json(r.witness)},
         {"criterion", to_string(r.criterion.verdict)},
         {"criterion_reason", r.criterion.reason},
         {"norm_c", r.criterion.norm_c ? scalar_to_json(*r.criterion.norm_c) : json(nullptr)},
         {"threshold", r.criterion.threshold ? scalar_to_json(*r.criterion.threshold) : json(nullptr)}};
  if (r.probe_trials) j["probe_trials"] = r.probe_trials;
  if (r.star) {
    j["star"] = r.star->label();
    j["star_unit"] = vector_to_json(*r.star->unit());
    j["star_witness"] = witness_json(r.star_witness);
  } else {
    j["star"] = nullptr;
    j["star_error"] = r.star_error;
  }
  return j;
}

json scan_to_json(const std::vector<ScanRecord>& records) {
  json lines = json::array();
  std::size_t division = 0, agree = 0, iff_checked = 0;
  for (const auto& r : records) {
    lines.push_back(r.line());
    if (!r.witness) ++division;
    if (r.iff && r.iff->verdict != IffVerdict::inapplicable) {
      ++iff_checked;
      if ((r.iff->verdict == IffVerdict::division) == !r.witness) ++agree;
    }
  }
  return {{"records", std::move(lines)},
          {"count", records.size()},
          {"division", division},
          {"zero_divisor", records.size() - division},
          {"iff_checked", iff_checked},
          {"iff_agree", agree}};
}

json analysis_report(const std::string& label, const DerivationSpace& s, const std::vector<Check>& checks) {
  json basis = json::array();
  for (const auto& m : s.basis) {
    Vector flat;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
    basis.push_back(vector_to_json(flat));
  }
  const std::size_t d = s.dim();
  json bracket = json::array();
  for (std::size_t a = 0; a < d; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < d; ++b) {
      Vector v(s.bracket.begin() + static_cast<std::ptrdiff_t>((a * d + b) * d),
               s.bracket.begin() + static_cast<std::ptrdiff_t>((a * d + b + 1) * d));
      row.push_back(vector_to_json(v));
    }
    bracket.push_back(std::move(row));
  }
  json cj = json::array();
  for (const auto& c : checks) cj.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  return {{"algebra", label},
          {"der_dim", d},
          {"der_basis", std::move(basis)},
          {"bracket", std::move(bracket)},
          {"bracket_closed", s.closed},
          {"checks", std::move(cj)}};
}

json subspace_to_json(const Subspace& s) {
  json b = json::array();
  for (const auto& v : s.basis) b.push_back(vector_to_json(v));
  return {{"dim", s.dim()}, {"basis", std::move(b)}};
}

}  // namespace twistkit
