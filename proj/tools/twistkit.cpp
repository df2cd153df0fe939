#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "twistkit/workbench.hpp"

using namespace twistkit;

namespace {

constexpr int kAssertionFailed = 1;
constexpr int kUsageError = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TWISTKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw FormatError(std::string("TWISTKIT_SEED is not an integer: ") + env);
    }
  }
  return 0;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

// A file path, or the name of a bundled fixture.
Built load_algebra(const std::string& what) {
  if (std::filesystem::exists(what)) return recover_structure(algebra_from_json(read_json(what)));
  for (const auto& f : fixture_list())
    if (f.name == what) return fixture(what);
  throw FormatError("no such algebra file or fixture: " + what);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw FormatError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

json header(const std::string& command, std::uint64_t seed) { return {{"command", command}, {"seed", seed}}; }

Vector parse_vector(const Algebra& a, const std::string& text) {
  return vector_from_json(a.field(), vector_text_to_json(text), a.dim());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistkit: twisted algebras over exact fields"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out;
  std::string algebra_arg;

  auto common = [&](CLI::App* sub, bool with_algebra) {
    sub->add_option("--seed", seed, "seed for every randomized step (default 0, or TWISTKIT_SEED)");
    sub->add_option("-o,--out", out, "write the output here instead of stdout");
    if (with_algebra) sub->add_option("--algebra", algebra_arg, "algebra file or fixture name")->required();
  };

  auto* build = app.add_subcommand("build", "build an algebra from a builder spec file");
  std::string spec_path;
  build->add_option("--spec", spec_path)->required();
  common(build, false);

  auto* twist_cmd = app.add_subcommand("twist", "twist, check division, unitalize");
  std::string twist_spec, c_text, f_text = "id", g_text = "id", circ_out, star_out;
  int variant = 1;
  std::size_t trials = 100;
  twist_cmd->add_option("--spec", twist_spec, "twist spec file");
  twist_cmd->add_option("--variant", variant);
  twist_cmd->add_option("--c", c_text, "comma-separated coordinates");
  twist_cmd->add_option("--f", f_text);
  twist_cmd->add_option("--g", g_text);
  twist_cmd->add_option("--trials", trials, "random probe pairs over Q");
  twist_cmd->add_option("--circ-out", circ_out);
  twist_cmd->add_option("--star-out", star_out);
  common(twist_cmd, true);

  auto* unit_cmd = app.add_subcommand("unitalize", "Kaplanski's trick at (a, b)");
  std::string a_text, b_text;
  unit_cmd->add_option("--a", a_text)->required();
  unit_cmd->add_option("--b", b_text)->required();
  common(unit_cmd, true);

  auto* div_cmd = app.add_subcommand("check-division", "exhaustive search or probe for zero divisors");
  div_cmd->add_option("--trials", trials);
  common(div_cmd, true);

  auto* scan_cmd = app.add_subcommand("scan", "division status for every c");
  scan_cmd->add_option("--variant", variant);
  scan_cmd->add_option("--f", f_text);
  scan_cmd->add_option("--g", g_text);
  common(scan_cmd, true);

  auto* der_cmd = app.add_subcommand("derivations", "derivation algebra report");
  std::string fix_text;
  der_cmd->add_option("--fix", fix_text, "only derivations killing this element");
  common(der_cmd, true);

  auto* nuc_cmd = app.add_subcommand("nuclei", "left, middle, right nuclei and center");
  common(nuc_cmd, true);

  auto* cf_cmd = app.add_subcommand("verify-closed-form", "closed-form product against twist then unitalize");
  std::string case_id;
  bool expect_match = false;
  cf_cmd->add_option("--case", case_id)->required();
  cf_cmd->add_option("--c", c_text)->required();
  cf_cmd->add_option("--f", f_text);
  cf_cmd->add_option("--g", g_text);
  cf_cmd->add_flag("--expect-match", expect_match, "exit 1 on disagreement");
  common(cf_cmd, true);

  auto* sc_cmd = app.add_subcommand("scenario", "run scenario files");
  std::vector<std::string> scenario_files;
  sc_cmd->add_option("files", scenario_files)->required();
  common(sc_cmd, false);

  auto* ex_cmd = app.add_subcommand("export", "write an algebra file");
  std::string fixture_name, fixture_dir;
  ex_cmd->add_option("--fixture", fixture_name);
  ex_cmd->add_option("--algebra", algebra_arg);
  ex_cmd->add_option("--all-fixtures", fixture_dir, "write every bundled fixture into this directory");
  ex_cmd->add_option("-o,--out", out);

  try {
    seed = default_seed();
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*build) {
      const Built b = build_from_json(read_json(spec_path));
      Output(out).stream() << dump(algebra_to_json(b.algebra));
      return 0;
    }
    if (*ex_cmd) {
      if (!fixture_dir.empty()) {
        std::filesystem::create_directories(fixture_dir);
        for (const auto& f : fixture_list()) {
          std::ofstream o(std::filesystem::path(fixture_dir) / f.file);
          o << dump(algebra_to_json(fixture(f.name).algebra));
        }
        return 0;
      }
      if (fixture_name.empty() == algebra_arg.empty()) throw FormatError("export needs exactly one of --fixture, --algebra");
      const Built b = fixture_name.empty() ? load_algebra(algebra_arg) : fixture(fixture_name);
      Output(out).stream() << dump(algebra_to_json(b.algebra));
      return 0;
    }
    if (*sc_cmd) {
      json reports = json::array();
      int code = 0;
      for (const auto& path : scenario_files) {
        const ScenarioOutcome r = run_scenario(read_json(path), seed, std::filesystem::path(path).parent_path());
        reports.push_back(r.report);
        code = std::max(code, r.exit_code);
      }
      json doc = header("scenario", seed);
      doc["reports"] = std::move(reports);
      doc["status"] = code == 0 ? "pass" : "fail";
      Output(out).stream() << dump(doc);
      if (code) std::cerr << "scenario: expected-result mismatch, see report\n";
      return code ? kAssertionFailed : 0;
    }

    const Built b = load_algebra(algebra_arg);
    const Algebra& a = b.algebra;
    Output o(out);

    if (*twist_cmd) {
      TwistSpec spec = twist_spec.empty() ? TwistSpec{} : twist_spec_from_json(a, read_json(twist_spec));
      if (twist_spec.empty()) {
        if (c_text.empty()) throw FormatError("twist needs --spec or --c");
        spec = TwistSpec::basic(a, variant, parse_vector(a, c_text));
        spec.f = make_map(a, map_spec_from_string(a, f_text));
        spec.g = make_map(a, map_spec_from_string(a, g_text));
      }
      const TwistResult r = run_twist(a, spec, seed, trials);
      json doc = header("twist", seed);
      doc["algebra"] = a.label();
      doc["result"] = twist_result_to_json(r);
      if (!circ_out.empty()) Output(circ_out).stream() << dump(algebra_to_json(r.circ));
      if (!star_out.empty()) {
        if (!r.star) throw MathError(r.star_error);
        Output(star_out).stream() << dump(algebra_to_json(*r.star));
      }
      o.stream() << dump(doc);
      return 0;
    }
    if (*unit_cmd) {
      o.stream() << dump(algebra_to_json(unitalize(a, parse_vector(a, a_text), parse_vector(a, b_text))));
      return 0;
    }
    if (*div_cmd) {
      json doc = header("check-division", seed);
      doc["algebra"] = a.label();
      if (a.field()->is_finite()) {
        const auto w = zero_divisor_search(a);
        doc["status"] = w ? "zero-divisor" : "certified";
        doc["witness"] = w ? json{{"x", vector_to_json(w->x)}, {"y", vector_to_json(w->y)}} : json(nullptr);
      } else {
        const ProbeResult r = division_probe_char0(a, trials, seed);
        doc["status"] = r.witness ? "zero-divisor" : "no-counterexample";
        doc["trials"] = r.trials;
        doc["witness"] =
            r.witness ? json{{"x", vector_to_json(r.witness->x)}, {"y", vector_to_json(r.witness->y)}} : json(nullptr);
      }
      o.stream() << dump(doc);
      return 0;
    }
    if (*scan_cmd) {
      const auto recs = scan_c(a, variant, make_map(a, map_spec_from_string(a, f_text)),
                               make_map(a, map_spec_from_string(a, g_text)), b.subfield, seed);
      o.stream() << "# scan algebra=" << a.label() << " variant=" << variant << " f=" << f_text << " g=" << g_text
                 << " seed=" << seed << "\n";
      for (const auto& r : recs) o.stream() << r.line() << "\n";
      return 0;
    }
    if (*der_cmd) {
      const DerivationSpace d = fix_text.empty() ? derivations(a) : derivations_fixing(a, parse_vector(a, fix_text));
      std::vector<Check> checks;
      for (std::size_t i = 0; i < d.dim(); ++i) checks.push_back({"basis[" + std::to_string(i) + "]", is_derivation(a, d.basis[i]), ""});
      json doc = analysis_report(a.label(), d, checks);
      doc["seed"] = seed;
      o.stream() << dump(doc);
      return 0;
    }
    if (*nuc_cmd) {
      json doc = header("nuclei", seed);
      doc["algebra"] = a.label();
      doc["left"] = subspace_to_json(nucleus(a, NucleusSide::left));
      doc["middle"] = subspace_to_json(nucleus(a, NucleusSide::middle));
      doc["right"] = subspace_to_json(nucleus(a, NucleusSide::right));
      doc["nucleus"] = subspace_to_json(nucleus(a, NucleusSide::all));
      doc["center"] = subspace_to_json(center(a));
      o.stream() << dump(doc);
      return 0;
    }
    if (*cf_cmd) {
      const Matrix f = make_map(a, map_spec_from_string(a, f_text));
      const Matrix g = make_map(a, map_spec_from_string(a, g_text));
      const StarComparison cmp = compare_star(case_id, a, parse_vector(a, c_text), f, g);
      json doc = header("verify-closed-form", seed);
      doc["algebra"] = a.label();
      doc["case"] = case_id;
      doc["matches"] = cmp.matches();
      doc["mismatch"] = cmp.mismatch ? json::array({cmp.mismatch->first, cmp.mismatch->second}) : json(nullptr);
      if (cmp.mismatch) {
        doc["closed_value"] = vector_to_json(cmp.closed.basis_product(cmp.mismatch->first, cmp.mismatch->second));
        doc["generic_value"] = vector_to_json(cmp.generic.basis_product(cmp.mismatch->first, cmp.mismatch->second));
      }
      o.stream() << dump(doc);
      return expect_match && !cmp.matches() ? kAssertionFailed : 0;
    }
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
