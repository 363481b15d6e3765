// whakit command-line front end.
#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "whakit/actions.hpp"
#include "whakit/fixtures.hpp"
#include "whakit/io.hpp"
#include "whakit/report.hpp"

namespace {

using namespace whakit;

constexpr int kOk = 0;
constexpr int kAxiomFailure = 2;
constexpr int kStageFailure = 3;
constexpr int kUsage = 64;
constexpr int kDataError = 65;
constexpr int kMissingFile = 66;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::MissingFile: return kMissingFile;
    case ErrorCode::SchemaError: return kDataError;
    case ErrorCode::ValidationError: return kAxiomFailure;
    default: return kStageFailure;
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::MissingFile, "cannot write " + path);
  out << text;
}

void emit_file(const WhaFile& f, const std::string& path) { emit(dump_wha_json(f), path); }

struct AxiomLine {
  std::string name;
  double residual;
  bool passed;
};

int run_validate(const std::string& path, const Tolerance& tol, const std::string& format) {
  const WhaFile f = read_wha_file(path);
  std::vector<AxiomLine> lines;
  if (f.kind == "algebra") {
    const AlgebraValidation v = validate_algebra(FinDimAlgebra(f.basis_labels, f.left, f.unit, f.involution), tol);
    lines.push_back({"associativity", v.associativity, tol.close(v.associativity)});
    lines.push_back({"unit", v.unit, tol.close(v.unit)});
    if (v.star_antimultiplicative)
      lines.push_back({"star-antimultiplicative", *v.star_antimultiplicative, tol.close(*v.star_antimultiplicative)});
    if (v.star_involutive) lines.push_back({"star-involutive", *v.star_involutive, tol.close(*v.star_involutive)});
  } else {
    if (!f.comultiplication || !f.counit) throw Error(ErrorCode::SchemaError, "$.comultiplication: missing");
    const WeakBialgebra w(FinDimAlgebra(f.basis_labels, f.left, f.unit, f.involution), *f.comultiplication,
                          *f.counit);
    std::vector<AxiomResidual> axioms = validate_wba(w, tol).axioms;
    const bool wba_ok = std::all_of(axioms.begin(), axioms.end(), [](const AxiomResidual& a) { return a.passed; });
    if (wba_ok) {
      try {
        const WeakHopfAlgebra h = make_wha(w, tol, f.antipode);
        const AntipodeCheck c = check_antipode(w, h.antipode, tol);
        axioms.push_back({"antipode", std::max({c.left_axiom, c.right_axiom, c.third_axiom}), 1.0, c.ok});
        if (f.involution) {
          const StarReport s = validate_star(h, tol);
          const double id = std::max({s.algebra, s.comultiplication, s.counit, s.antipode});
          axioms.push_back({"star", id, 1.0, tol.close(id)});
          axioms.push_back({"c-star", s.positivity_margin, 1.0, s.c_star});
        }
      } catch (const Error& e) {
        axioms.push_back({"antipode", 1.0, 1.0, false});
        std::cerr << e.what() << "\n";
      }
    }
    for (const AxiomResidual& a : axioms) lines.push_back({a.name, a.residual, a.passed});
  }
  bool ok = true;
  std::string failed;
  for (const AxiomLine& l : lines)
    if (!l.passed) {
      ok = false;
      failed += (failed.empty() ? "" : ", ") + l.name;
    }
  if (format == "json") {
    std::ostringstream os;
    os << "{\"file\": \"" << path << "\", \"ok\": " << (ok ? "true" : "false") << ", \"axioms\": [";
    for (std::size_t i = 0; i < lines.size(); ++i)
      os << (i ? ", " : "") << "{\"name\": \"" << lines[i].name << "\", \"residual\": " << lines[i].residual
         << ", \"passed\": " << (lines[i].passed ? "true" : "false") << "}";
    os << "]}\n";
    std::cout << os.str();
  } else {
    for (const AxiomLine& l : lines)
      std::cout << (l.passed ? "ok      " : "FAILED  ") << l.name << "  residual " << l.residual << "\n";
    std::cout << (ok ? "valid\n" : "invalid: " + failed + "\n");
  }
  return ok ? kOk : kAxiomFailure;
}

int run_analyze(const std::string& path, const Tolerance& tol, const std::string& format, bool timing,
                const std::string& out) {
  const AnalysisReport r = analyze(read_wha_file(path), tol);
  emit(format == "json" ? report_json(r, timing) : report_text(r), out);
  return r.exit_code();
}

WeakHopfAlgebra load_or_generate(const std::string& source, int param, const Tolerance& tol) {
  for (const std::string& kind : fixture_kinds())
    if (kind == source) return make_fixture(kind, param, tol);
  return load_wha(source, tol);
}

int run_crossprod(const std::string& action, const std::string& source, int param, const Tolerance& tol,
                  const std::string& out) {
  CrossedProduct cp;
  if (action == "smash") {
    cp = smash_product(load_or_generate(source, param, tol), tol).product;
  } else {
    WhaAction act;
    if (action == "translation") {
      act = translation_action(source.empty() ? param : std::stoi(source), tol);
    } else if (action == "dual-regular") {
      act = dual_regular_action(load_or_generate(source, param, tol), tol);
    } else if (action == "dual-arrow") {
      act = dual_arrow_action(load_or_generate(source, param, tol), tol);
    } else {
      std::cerr << "unknown action '" << action << "' (translation, dual-regular, dual-arrow, smash)\n";
      return kUsage;
    }
    const ValidationReport v = validate_action(act, tol);
    if (!v.ok) {
      for (const AxiomResidual& a : v.axioms)
        if (!a.passed) std::cerr << "action axiom fails: " << a.name << " (" << a.residual << ")\n";
      return kAxiomFailure;
    }
    cp = crossed_product(act, tol);
  }
  const BlockDecomposition b = block_decomposition(cp.algebra, tol);
  std::cerr << "crossed product: dim " << cp.algebra.dim() << ", blocks";
  for (const Block& q : b.blocks) std::cerr << " M_" << q.size;
  std::cerr << "\n";
  emit_file(to_file(cp.algebra, action + " crossed product", "whakit crossprod " + action), out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional weak Hopf algebras: validation, analysis and constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  double tol_value = 1e-9;
  std::string format = "text";
  std::string out;
  app.add_option("--tol", tol_value, "absolute and relative tolerance")->capture_default_str();

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  std::string path;
  auto* validate = app.add_subcommand("validate", "check the axioms of a structure-constant file");
  validate->add_option("path", path)->required();
  add_format(validate);

  bool no_timing = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "run the full analysis pipeline");
  analyze_cmd->add_option("path", path)->required();
  analyze_cmd->add_option("-o,--output", out);
  analyze_cmd->add_flag("--no-timing", no_timing, "omit wall time from JSON output");
  add_format(analyze_cmd);

  std::string kind;
  int param = 2;
  auto* generate = app.add_subcommand("generate", "write a fixture");
  generate->add_option("kind", kind)->required()->check(CLI::IsMember(fixture_kinds()));
  generate->add_option("param", param, "order or number of objects")->capture_default_str();
  generate->add_option("-o,--output", out);

  auto* dualize = app.add_subcommand("dualize", "write the dual weak Hopf algebra");
  dualize->add_option("path", path)->required();
  dualize->add_option("-o,--output", out);

  std::string action, source;
  auto* crossprod = app.add_subcommand("crossprod", "write a crossed product algebra");
  crossprod->add_option("action", action, "translation, dual-regular, dual-arrow or smash")->required();
  crossprod->add_option("source", source, "order (translation) or fixture kind / file");
  crossprod->add_option("--param", param, "fixture parameter when source is a kind")->capture_default_str();
  crossprod->add_option("-o,--output", out);

  std::uint64_t seed = 1;
  double magnitude = 1e-3;
  std::string target = "any";
  auto* perturb_cmd = app.add_subcommand("perturb", "write a copy with one coefficient shifted");
  perturb_cmd->add_option("path", path)->required();
  perturb_cmd->add_option("--seed", seed)->capture_default_str();
  perturb_cmd->add_option("--magnitude", magnitude)->capture_default_str();
  perturb_cmd->add_option("--target", target)->check(CLI::IsMember({"any", "product", "coproduct", "counit"}));
  perturb_cmd->add_option("-o,--output", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const Tolerance tol = Tolerance::uniform(tol_value);
  try {
    if (*validate) return run_validate(path, tol, format);
    if (*analyze_cmd) return run_analyze(path, tol, format, !no_timing, out);
    if (*generate) {
      const WeakHopfAlgebra h = make_fixture(kind, param, tol);
      emit_file(to_file(h, kind + (kind == "s3" || kind == "sweedler-h4" ? "" : " " + std::to_string(param)),
                        "whakit generate"),
                out);
      return kOk;
    }
    if (*dualize) {
      const WhaFile f = read_wha_file(path);
      const WeakHopfAlgebra d = dual_wha(wha_from_file(f, tol), tol);
      const std::string prefix = "dual of ";
      const std::string name = f.name.rfind(prefix, 0) == 0 ? f.name.substr(prefix.size()) : prefix + f.name;
      emit_file(to_file(d, name, f.provenance), out);
      return kOk;
    }
    if (*crossprod) return run_crossprod(action, source, param, tol, out);
    if (*perturb_cmd) {
      const PerturbTarget t = target == "product"     ? PerturbTarget::StructureConstants
                              : target == "coproduct" ? PerturbTarget::Comultiplication
                              : target == "counit"    ? PerturbTarget::Counit
                                                      : PerturbTarget::Any;
      emit_file(perturb(read_wha_file(path), seed, magnitude, t), out);
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStageFailure;
  }
  return kUsage;
}
