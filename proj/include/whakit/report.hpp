#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whakit/io.hpp"
#include "whakit/reptheory.hpp"

namespace whakit {

inline constexpr int kReportSchemaVersion = 1;

/// Outcome of one pipeline stage. "absent" marks a structure that does not exist
/// (no Haar integral, no involution); "skipped" a stage whose inputs are missing.
struct StageResult {
  std::string name;
  std::string status;  // ok | absent | skipped | failed
  std::string message;
};

struct CounitalSummary {
  int dim_left = 0, dim_right = 0, dim_left_center = 0, dim_right_center = 0, dim_hypercenter = 0;
  bool pure = false;
  bool indecomposable = false;
  bool weak_kac = false;
  double weak_kac_defect = 0.0;
};

struct HaarSummary {
  double idempotent_residual = 0.0;
  double antipode_residual = 0.0;
  double star_residual = 0.0;
  double grouplike_s2_residual = 0.0;
  double grouplike_trace_residual = 0.0;
  bool grouplike_is_one = false;
  double modular_residual = 0.0;
  bool tracial = false;
  std::vector<double> grouplike_block_traces;
  std::optional<double> index;  // I
};

struct AnalysisReport {
  std::string name;
  int dim = 0;
  std::vector<AxiomResidual> axioms;
  bool valid = false;
  std::vector<StageResult> stages;

  std::optional<double> antipode_residual;
  std::optional<double> antipode_uniqueness_margin;
  std::optional<CounitalSummary> counital;
  std::optional<bool> star_ok;
  std::optional<bool> semisimple;
  std::optional<HaarSummary> haar;
  std::vector<Sector> sectors;
  std::optional<RealMat> dimension_matrix;  // d_A
  std::optional<double> delta;
  /// fusion[p][q][r]: multiplicity of irrep r in the monoidal product of irreps p and q.
  std::vector<std::vector<std::vector<int>>> fusion;
  std::optional<MarkovIndex> markov;
  double seconds = 0.0;

  [[nodiscard]] const StageResult* stage(const std::string& name) const;
  /// 0 ok, 2 axiom failure, 3 stage failure.
  [[nodiscard]] int exit_code() const;
};

/// Runs validate -> antipode -> counital data -> star -> semisimplicity -> Haar ->
/// sectors -> Markov index, recording failures instead of throwing.
AnalysisReport analyze(const WhaFile& file, const Tolerance& tol = {});

std::string report_text(const AnalysisReport& r);
/// Versioned JSON document; `timing` controls whether the wall time is included.
std::string report_json(const AnalysisReport& r, bool timing = true);

}  // namespace whakit
