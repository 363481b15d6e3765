#include "whakit/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "whakit/linalg.hpp"

namespace whakit {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path + "." + key, "missing");
  return *it;
}

const json& array_of(const json& j, std::size_t size, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array");
  if (j.size() != size)
    schema_fail(path, "expected " + std::to_string(size) + " entries, found " + std::to_string(j.size()));
  return j;
}

Scalar scalar_of(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema_fail(path, "expected a [re, im] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

json scalar_json(Scalar z) { return json::array({z.real(), z.imag()}); }

Vec vector_of(const json& j, int n, const std::string& path) {
  array_of(j, static_cast<std::size_t>(n), path);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = scalar_of(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

json vector_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_json(v(i)));
  return out;
}

// rows x cols, row-major in the file
Mat matrix_of(const json& j, int rows, int cols, const std::string& path) {
  array_of(j, static_cast<std::size_t>(rows), path);
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) m.row(r) = vector_of(j[r], cols, path + "[" + std::to_string(r) + "]").transpose();
  return m;
}

json matrix_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
  return out;
}

}  // namespace

WhaFile parse_wha_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_fail("$", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_fail("$", "expected an object");

  WhaFile f;
  const json& version = field(doc, "schema_version", "$");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    schema_fail("$.schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  const json& kind = field(doc, "kind", "$");
  if (!kind.is_string() || (kind != "wha" && kind != "algebra")) schema_fail("$.kind", "expected \"wha\" or \"algebra\"");
  f.kind = kind.get<std::string>();

  const json& dim = field(doc, "dim", "$");
  if (!dim.is_number_integer() || dim.get<int>() < 1) schema_fail("$.dim", "expected a positive integer");
  const int n = dim.get<int>();

  const json& labels = array_of(field(doc, "basis_labels", "$"), static_cast<std::size_t>(n), "$.basis_labels");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string()) schema_fail("$.basis_labels[" + std::to_string(i) + "]", "expected a string");
    f.basis_labels.push_back(labels[i].get<std::string>());
  }

  const json& c = array_of(field(doc, "structure_constants", "$"), static_cast<std::size_t>(n), "$.structure_constants");
  f.left.assign(n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    const std::string pi = "$.structure_constants[" + std::to_string(i) + "]";
    array_of(c[i], static_cast<std::size_t>(n), pi);
    for (int j = 0; j < n; ++j) f.left[i].col(j) = vector_of(c[i][j], n, pi + "[" + std::to_string(j) + "]");
  }
  f.unit = vector_of(field(doc, "unit", "$"), n, "$.unit");

  if (f.kind == "wha") {
    f.comultiplication = matrix_of(field(doc, "comultiplication", "$"), n * n, n, "$.comultiplication");
    f.counit = vector_of(field(doc, "counit", "$"), n, "$.counit");
  }
  if (doc.contains("antipode") && !doc["antipode"].is_null())
    f.antipode = matrix_of(doc["antipode"], n, n, "$.antipode").transpose();
  if (doc.contains("involution") && !doc["involution"].is_null())
    f.involution = matrix_of(doc["involution"], n, n, "$.involution").transpose();

  if (doc.contains("metadata")) {
    const json& meta = doc["metadata"];
    if (!meta.is_object()) schema_fail("$.metadata", "expected an object");
    if (meta.contains("name")) {
      if (!meta["name"].is_string()) schema_fail("$.metadata.name", "expected a string");
      f.name = meta["name"].get<std::string>();
    }
    if (meta.contains("provenance")) {
      if (!meta["provenance"].is_string()) schema_fail("$.metadata.provenance", "expected a string");
      f.provenance = meta["provenance"].get<std::string>();
    }
  }
  return f;
}

std::string dump_wha_json(const WhaFile& f) {
  const int n = f.dim();
  json doc;
  doc["schema_version"] = f.schema_version;
  doc["kind"] = f.kind;
  doc["dim"] = n;
  doc["basis_labels"] = f.basis_labels;
  json c = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(vector_json(f.left[i].col(j)));
    c.push_back(std::move(row));
  }
  doc["structure_constants"] = std::move(c);
  doc["unit"] = vector_json(f.unit);
  if (f.comultiplication) doc["comultiplication"] = matrix_json(*f.comultiplication);
  if (f.counit) doc["counit"] = vector_json(*f.counit);
  // Stored column-wise: entry [i][j] is the coefficient of e_i in the image of e_j.
  if (f.antipode) doc["antipode"] = matrix_json(f.antipode->transpose());
  if (f.involution) doc["involution"] = matrix_json(f.involution->transpose());
  doc["metadata"] = {{"name", f.name}, {"provenance", f.provenance}};
  // nlohmann emits the shortest representation that round-trips exactly.
  return doc.dump(1) + "\n";
}

WhaFile read_wha_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_wha_json(ss.str());
}

void write_wha_file(const WhaFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::MissingFile, "cannot write " + path);
  out << dump_wha_json(file);
}

WhaFile to_file(const FinDimAlgebra& a, const std::string& name, const std::string& provenance) {
  WhaFile f;
  f.kind = "algebra";
  f.basis_labels = a.labels();
  for (int i = 0; i < a.dim(); ++i) f.left.push_back(a.left(i));
  f.unit = a.unit();
  if (a.has_involution()) f.involution = a.involution();
  f.name = name;
  f.provenance = provenance;
  return f;
}

WhaFile to_file(const WeakHopfAlgebra& h, const std::string& name, const std::string& provenance) {
  WhaFile f = to_file(h.algebra(), name, provenance);
  f.kind = "wha";
  f.comultiplication = h.wba.comultiplication();
  f.counit = h.wba.counit();
  f.antipode = h.antipode;
  return f;
}

FinDimAlgebra algebra_from_file(const WhaFile& f, const Tolerance& tol) {
  FinDimAlgebra a(f.basis_labels, f.left, f.unit, f.involution);
  const AlgebraValidation v = validate_algebra(a, tol);
  if (!v.ok) {
    std::ostringstream os;
    os << "algebra axioms fail:";
    if (!tol.close(v.associativity)) os << " associativity (" << v.associativity << ")";
    if (!tol.close(v.unit)) os << " unit (" << v.unit << ")";
    if (v.star_antimultiplicative && !tol.close(*v.star_antimultiplicative)) os << " star-antimultiplicative";
    if (v.star_involutive && !tol.close(*v.star_involutive)) os << " star-involutive";
    if (v.star_unit && !tol.close(*v.star_unit)) os << " star-unit";
    throw Error(ErrorCode::ValidationError, os.str());
  }
  return a;
}

WeakHopfAlgebra wha_from_file(const WhaFile& f, const Tolerance& tol) {
  if (f.kind != "wha" || !f.comultiplication || !f.counit)
    throw Error(ErrorCode::SchemaError, "$.kind: file does not describe a weak Hopf algebra");
  FinDimAlgebra a(f.basis_labels, f.left, f.unit, f.involution);
  WeakBialgebra w(std::move(a), *f.comultiplication, *f.counit);
  if (f.antipode) {
    const ValidationReport rep = validate_wba(w, tol);
    if (rep.ok && !check_antipode(w, *f.antipode, tol).ok)
      throw Error(ErrorCode::ValidationError, "supplied antipode fails its axioms: antipode");
  }
  WeakHopfAlgebra h = make_wha(w, tol, f.antipode);
  if (f.involution) {
    const StarReport s = validate_star(h, tol);
    std::ostringstream os;
    if (!tol.close(s.algebra)) os << " star-algebra (" << s.algebra << ")";
    if (!tol.close(s.comultiplication)) os << " star-comultiplication (" << s.comultiplication << ")";
    if (!tol.close(s.counit)) os << " star-counit (" << s.counit << ")";
    if (!tol.close(s.antipode)) os << " star-antipode (" << s.antipode << ")";
    if (!os.str().empty()) throw Error(ErrorCode::ValidationError, "*-structure fails:" + os.str());
  }
  return h;
}

WeakHopfAlgebra load_wha(const std::string& path, const Tolerance& tol) { return wha_from_file(read_wha_file(path), tol); }

void save_wha(const WeakHopfAlgebra& h, const std::string& path, const std::string& name,
              const std::string& provenance) {
  write_wha_file(to_file(h, name, provenance), path);
}

WhaFile perturb(const WhaFile& file, std::uint64_t seed, double magnitude, PerturbTarget target) {
  WhaFile f = file;
  const std::uint64_t n = static_cast<std::uint64_t>(f.dim());
  const std::uint64_t c_count = n * n * n;
  const std::uint64_t d_count = f.comultiplication ? n * n * n : 0;
  const std::uint64_t e_count = f.counit ? n : 0;
  std::uint64_t lo = 0, hi = c_count + d_count + e_count;
  switch (target) {
    case PerturbTarget::Any: break;
    case PerturbTarget::StructureConstants: hi = c_count; break;
    case PerturbTarget::Comultiplication: lo = c_count, hi = c_count + d_count; break;
    case PerturbTarget::Counit: lo = c_count + d_count; break;
  }
  if (hi <= lo) throw Error(ErrorCode::SchemaError, "perturbation target is absent from the file");
  Rng rng(seed);
  std::uint64_t k = lo + rng.index(hi - lo);
  if (k < c_count) {
    // structure_constants[i][j][m]
    const auto i = static_cast<int>(k / (n * n)), j = static_cast<int>((k / n) % n), m = static_cast<int>(k % n);
    f.left[i](m, j) += magnitude;
  } else if (k < c_count + d_count) {
    k -= c_count;
    (*f.comultiplication)(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) += magnitude;
  } else {
    (*f.counit)(static_cast<Eigen::Index>(k - c_count - d_count)) += magnitude;
  }
  return f;
}

}  // namespace whakit
