#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "whakit/wha.hpp"

namespace whakit {

inline constexpr int kSchemaVersion = 1;

/// In-memory image of a structure-constant file (`.wha.json`). Nothing is
/// validated beyond shapes; see wha_from_file / algebra_from_file.
///
/// Layout: structure_constants[i][j][k] is the coefficient of e_k in e_i e_j,
/// comultiplication[i*n + j][k] the coefficient of e_i (x) e_j in Delta(e_k),
/// antipode[i][j] and involution[i][j] the coefficient of e_i in S(e_j), e_j*.
/// Every scalar is a [re, im] pair.
struct WhaFile {
  int schema_version = kSchemaVersion;
  std::string kind = "wha";  // "wha" or "algebra"
  std::vector<std::string> basis_labels;
  std::vector<Mat> left;  // left[i](k, j) = structure_constants[i][j][k]
  Vec unit;
  std::optional<Mat> comultiplication;
  std::optional<Vec> counit;
  std::optional<Mat> antipode;
  std::optional<Mat> involution;
  std::string name;
  std::string provenance;

  [[nodiscard]] int dim() const { return static_cast<int>(left.size()); }
};

/// Throws SchemaError naming the offending field path.
WhaFile parse_wha_json(const std::string& text);
std::string dump_wha_json(const WhaFile& file);

/// Throws MissingFile if the path cannot be opened.
WhaFile read_wha_file(const std::string& path);
void write_wha_file(const WhaFile& file, const std::string& path);

WhaFile to_file(const WeakHopfAlgebra& h, const std::string& name = "", const std::string& provenance = "");
WhaFile to_file(const FinDimAlgebra& a, const std::string& name = "", const std::string& provenance = "");

/// Revalidates everything: algebra and weak bialgebra axioms, the antipode
/// (solved, or checked if supplied) and the *-identities if an involution is present.
/// Throws ValidationError naming the failing axioms.
WeakHopfAlgebra wha_from_file(const WhaFile& file, const Tolerance& tol = {});
FinDimAlgebra algebra_from_file(const WhaFile& file, const Tolerance& tol = {});

WeakHopfAlgebra load_wha(const std::string& path, const Tolerance& tol = {});
void save_wha(const WeakHopfAlgebra& h, const std::string& path, const std::string& name = "",
              const std::string& provenance = "");

enum class PerturbTarget { Any, StructureConstants, Comultiplication, Counit };

/// Adds `magnitude` to the real part of one coefficient chosen deterministically from `seed`.
WhaFile perturb(const WhaFile& file, std::uint64_t seed, double magnitude, PerturbTarget target = PerturbTarget::Any);

}  // namespace whakit
