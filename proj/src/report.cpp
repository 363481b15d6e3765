#include "whakit/report.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "whakit/integrals.hpp"

namespace whakit {

namespace {

using json = nlohmann::ordered_json;

class Pipeline {
 public:
  explicit Pipeline(AnalysisReport& r) : r_(r) {}

  // Runs f as stage `name` unless a required stage did not succeed.
  template <typename F>
  bool run(const std::string& name, std::initializer_list<const char*> needs, F&& f) {
    for (const char* n : needs) {
      const StageResult* s = r_.stage(n);
      if (s == nullptr || s->status != "ok") {
        r_.stages.push_back({name, "skipped", std::string("needs ") + n});
        return false;
      }
    }
    try {
      f();
      r_.stages.push_back({name, "ok", ""});
      return true;
    } catch (const Error& e) {
      const bool absent = e.code() == ErrorCode::NoHaar || e.code() == ErrorCode::NoInvolution ||
                          e.code() == ErrorCode::NotIndecomposable;
      r_.stages.push_back({name, absent ? "absent" : "failed", e.what()});
    } catch (const std::exception& e) {
      r_.stages.push_back({name, "failed", e.what()});
    }
    return false;
  }

 private:
  AnalysisReport& r_;
};

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json matrix_json(const RealMat& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

}  // namespace

const StageResult* AnalysisReport::stage(const std::string& n) const {
  for (const StageResult& s : stages)
    if (s.name == n) return &s;
  return nullptr;
}

int AnalysisReport::exit_code() const {
  if (!valid) return 2;
  for (const StageResult& s : stages)
    if (s.status == "failed") return 3;
  return 0;
}

AnalysisReport analyze(const WhaFile& file, const Tolerance& tol) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport r;
  r.name = file.name;
  r.dim = file.dim();
  Pipeline p(r);

  std::optional<WeakBialgebra> w;
  p.run("validate", {}, [&] {
    if (file.kind != "wha" || !file.comultiplication || !file.counit)
      throw Error(ErrorCode::SchemaError, "file does not describe a weak Hopf algebra");
    w.emplace(FinDimAlgebra(file.basis_labels, file.left, file.unit, file.involution), *file.comultiplication,
              *file.counit);
    const ValidationReport v = validate_wba(*w, tol);
    r.axioms = v.axioms;
    r.valid = v.ok;
    if (!v.ok) {
      std::string failed;
      for (const AxiomResidual& a : v.axioms)
        if (!a.passed) failed += (failed.empty() ? "" : ", ") + a.name;
      throw Error(ErrorCode::ValidationError, "failing axioms: " + failed);
    }
  });

  WeakHopfAlgebra h;
  p.run("antipode", {"validate"}, [&] {
    if (file.antipode) {
      const AntipodeCheck c = check_antipode(*w, *file.antipode, tol);
      r.antipode_residual = std::max({c.left_axiom, c.right_axiom, c.third_axiom});
      if (!c.ok) throw Error(ErrorCode::ValidationError, "supplied antipode fails its axioms");
    } else {
      const AntipodeSolution s = solve_antipode(*w, tol);
      r.antipode_residual = s.residual;
      r.antipode_uniqueness_margin = s.uniqueness_margin;
    }
    h = make_wha(*w, tol, file.antipode);
  });

  p.run("counital", {"antipode"}, [&] {
    CounitalSummary c;
    c.dim_left = h.sub.left.rank();
    c.dim_right = h.sub.right.rank();
    c.dim_left_center = h.sub.left_center.rank();
    c.dim_right_center = h.sub.right_center.rank();
    c.dim_hypercenter = h.sub.hypercenter.rank();
    c.pure = h.sub.pure;
    c.indecomposable = h.sub.indecomposable;
    c.weak_kac_defect = weak_kac_defect(h);
    c.weak_kac = is_weak_kac(h, tol);
    r.counital = c;
  });

  p.run("star", {"antipode"}, [&] {
    if (!h.algebra().has_involution()) throw Error(ErrorCode::NoInvolution, "no involution in the file");
    const StarReport s = validate_star(h, tol);
    r.star_ok = s.ok;
    if (!s.ok) throw Error(ErrorCode::ValidationError, "*-identities or C*-positivity fail");
  });

  p.run("semisimplicity", {"antipode"}, [&] { r.semisimple = maschke_check(h, tol).semisimple; });

  std::optional<HaarData> hd;
  p.run("haar", {"antipode"}, [&] {
    const std::optional<HaarIntegral> hi = haar_integral(h, tol);
    if (!hi) throw Error(ErrorCode::NoHaar, "no normalized two-sided integral");
    const StageResult* star = r.stage("star");
    if (star->status != "ok") throw Error(ErrorCode::NoInvolution, "Haar data needs a valid C*-structure");
    hd = haar_data(h, tol);
    HaarSummary s;
    s.idempotent_residual = hi->idempotent_residual;
    s.antipode_residual = hi->antipode_residual;
    s.star_residual = hi->star_residual.value_or(0.0);
    s.grouplike_s2_residual = hd->grouplike.implements_s2_residual;
    s.grouplike_trace_residual = hd->grouplike.trace_balance_residual;
    s.grouplike_is_one = max_abs(hd->grouplike.g - h.algebra().unit()) < 1e-9;
    s.modular_residual = hd->modular.modular_residual;
    s.tracial = hd->modular.tracial;
    s.grouplike_block_traces = hd->grouplike.block_traces;
    s.index = hd->index.value;
    r.haar = s;
  });

  p.run("sectors", {"haar"}, [&] {
    const RepContext ctx = rep_context(h, tol);
    const SectorTable t = sector_dimensions(ctx, tol);
    r.sectors = t.sectors;
    r.dimension_matrix = t.d_regular;
    r.delta = t.delta;
    const int k = static_cast<int>(ctx.irreps.size());
    r.fusion.assign(k, std::vector<std::vector<int>>(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        r.fusion[a][b] = block_multiplicities(ctx.blocks, monoidal_product(h, ctx.irreps[a], ctx.irreps[b], tol).rep);
  });

  p.run("markov", {"sectors"}, [&] { r.markov = markov_index(h, tol); });

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string report_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << std::setprecision(10) << std::boolalpha;
  os << "name: " << (r.name.empty() ? "(unnamed)" : r.name) << "\n";
  os << "dim: " << r.dim << "\n";
  os << "axioms:\n";
  for (const AxiomResidual& a : r.axioms)
    os << "  " << std::left << std::setw(20) << a.name << (a.passed ? "ok    " : "FAILED") << "  residual "
       << a.residual << "\n";
  os << "stages:\n";
  for (const StageResult& s : r.stages) {
    os << "  " << std::left << std::setw(16) << s.name << s.status;
    if (!s.message.empty()) os << "  (" << s.message << ")";
    os << "\n";
  }
  if (r.antipode_residual)
    os << "antipode: residual " << *r.antipode_residual
       << (r.antipode_uniqueness_margin ? ", uniqueness margin " + std::to_string(*r.antipode_uniqueness_margin) : "")
       << "\n";
  if (r.counital) {
    const CounitalSummary& c = *r.counital;
    os << "dims: A^L " << c.dim_left << ", A^R " << c.dim_right << ", Z^L " << c.dim_left_center << ", Z^R "
       << c.dim_right_center << ", hypercenter " << c.dim_hypercenter << "\n";
    os << "flags: pure " << c.pure << ", indecomposable " << c.indecomposable << ", weak Kac " << c.weak_kac;
    if (r.semisimple) os << ", semisimple " << *r.semisimple;
    os << "\n";
  }
  if (r.haar) {
    const HaarSummary& s = *r.haar;
    os << "haar: h^2-h " << s.idempotent_residual << ", S(h)-h " << s.antipode_residual << ", h*-h "
       << s.star_residual << "\n";
    os << "grouplike: g = 1 " << s.grouplike_is_one << ", gxg^-1 - S^2(x) " << s.grouplike_s2_residual
       << ", modular residual " << s.modular_residual << ", tracial " << s.tracial << "\n";
    if (s.index) os << "haar index I: " << *s.index << "\n";
  }
  if (!r.sectors.empty()) {
    os << "sectors (block, n, d, d standard, vacua L/R):\n";
    for (const Sector& q : r.sectors)
      os << "  " << q.block << "  " << q.size << "  " << q.d << "  " << q.d_standard << "  " << q.left_vacuum << "/"
         << q.right_vacuum << "\n";
  }
  if (!r.fusion.empty()) {
    os << "fusion (p x q -> multiplicities):\n";
    for (std::size_t a = 0; a < r.fusion.size(); ++a)
      for (std::size_t b = 0; b < r.fusion.size(); ++b) {
        os << "  " << a << " x " << b << " ->";
        for (int m : r.fusion[a][b]) os << " " << m;
        os << "\n";
      }
  }
  if (r.dimension_matrix) os << "dimension matrix d_A:\n" << *r.dimension_matrix << "\n";
  if (r.delta) os << "delta: " << *r.delta << "\n";
  if (r.markov) {
    os << "markov: delta " << r.markov->delta << ", dual " << r.markov->delta_dual << ", inclusion";
    for (double x : r.markov->inclusion) os << " " << x;
    os << "\n";
  }
  os << "time: " << std::setprecision(3) << r.seconds << " s\n";
  return os.str();
}

std::string report_json(const AnalysisReport& r, bool timing) {
  json j;
  j["schema"] = "whakit-analysis";
  j["schema_version"] = kReportSchemaVersion;
  j["name"] = r.name;
  j["dim"] = r.dim;
  j["valid"] = r.valid;
  j["axioms"] = json::array();
  for (const AxiomResidual& a : r.axioms)
    j["axioms"].push_back({{"name", a.name}, {"residual", a.residual}, {"scale", a.scale}, {"passed", a.passed}});
  j["stages"] = json::array();
  for (const StageResult& s : r.stages)
    j["stages"].push_back({{"name", s.name}, {"status", s.status}, {"message", s.message}});
  j["antipode"] = r.antipode_residual ? json{{"residual", *r.antipode_residual},
                                             {"uniqueness_margin", optional_json(r.antipode_uniqueness_margin)}}
                                      : json(nullptr);
  if (r.counital) {
    const CounitalSummary& c = *r.counital;
    j["counital"] = {{"dim_left", c.dim_left},
                     {"dim_right", c.dim_right},
                     {"dim_left_center", c.dim_left_center},
                     {"dim_right_center", c.dim_right_center},
                     {"dim_hypercenter", c.dim_hypercenter},
                     {"pure", c.pure},
                     {"indecomposable", c.indecomposable},
                     {"weak_kac", c.weak_kac},
                     {"weak_kac_defect", c.weak_kac_defect}};
  } else {
    j["counital"] = nullptr;
  }
  j["star_ok"] = r.star_ok ? json(*r.star_ok) : json(nullptr);
  j["semisimple"] = r.semisimple ? json(*r.semisimple) : json(nullptr);
  if (r.haar) {
    const HaarSummary& s = *r.haar;
    j["haar"] = {{"idempotent_residual", s.idempotent_residual},
                 {"antipode_residual", s.antipode_residual},
                 {"star_residual", s.star_residual},
                 {"grouplike_s2_residual", s.grouplike_s2_residual},
                 {"grouplike_trace_residual", s.grouplike_trace_residual},
                 {"grouplike_is_one", s.grouplike_is_one},
                 {"grouplike_block_traces", s.grouplike_block_traces},
                 {"modular_residual", s.modular_residual},
                 {"tracial", s.tracial},
                 {"index", optional_json(s.index)}};
  } else {
    j["haar"] = nullptr;
  }
  j["sectors"] = json::array();
  for (const Sector& q : r.sectors)
    j["sectors"].push_back({{"block", q.block},
                            {"size", q.size},
                            {"d", q.d},
                            {"d_standard", q.d_standard},
                            {"left_vacuum", q.left_vacuum},
                            {"right_vacuum", q.right_vacuum}});
  j["fusion"] = r.fusion;
  j["dimension_matrix"] = r.dimension_matrix ? matrix_json(*r.dimension_matrix) : json(nullptr);
  j["delta"] = optional_json(r.delta);
  if (r.markov) {
    j["markov"] = {{"delta", r.markov->delta},
                   {"delta_dual", r.markov->delta_dual},
                   {"inclusion", r.markov->inclusion},
                   {"sum_n_d", optional_json(r.markov->sum_n_d)}};
  } else {
    j["markov"] = nullptr;
  }
  if (timing) j["timing_seconds"] = r.seconds;
  return j.dump(2) + "\n";
}

}  // namespace whakit
