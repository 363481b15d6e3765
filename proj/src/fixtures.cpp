#include "whakit/fixtures.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace whakit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidGroupoid, what); }

}  // namespace

void validate_groupoid(const GroupoidSpec& g) {
  const int m = static_cast<int>(g.morphisms.size());
  const int o = static_cast<int>(g.objects.size());
  if (m == 0 || o == 0) bad("empty groupoid");
  if (static_cast<int>(g.composition.size()) != m || static_cast<int>(g.inverse.size()) != m ||
      static_cast<int>(g.identities.size()) != o)
    bad("table sizes do not match the number of morphisms/objects");
  for (const Morphism& f : g.morphisms)
    if (f.source < 0 || f.source >= o || f.target < 0 || f.target >= o) bad("morphism endpoint out of range");
  for (int a = 0; a < m; ++a) {
    if (static_cast<int>(g.composition[a].size()) != m) bad("composition table is not square");
    for (int b = 0; b < m; ++b) {
      const int c = g.composition[a][b];
      const bool composable = g.morphisms[a].source == g.morphisms[b].target;
      if (composable != (c >= 0)) bad("composition defined iff source(g) = target(h) fails");
      if (c >= m) bad("composite index out of range");
      if (c >= 0 && (g.morphisms[c].source != g.morphisms[b].source || g.morphisms[c].target != g.morphisms[a].target))
        bad("composite has wrong endpoints");
    }
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const int ab = g.composition[a][b], bc = g.composition[b][c];
        if (ab >= 0 && bc >= 0 && g.composition[ab][c] != g.composition[a][bc]) bad("composition is not associative");
      }
  for (int x = 0; x < o; ++x) {
    const int id = g.identities[x];
    if (id < 0 || id >= m || g.morphisms[id].source != x || g.morphisms[id].target != x) bad("bad identity");
    for (int a = 0; a < m; ++a) {
      if (g.morphisms[a].target == x && g.composition[id][a] != a) bad("identity is not a left unit");
      if (g.morphisms[a].source == x && g.composition[a][id] != a) bad("identity is not a right unit");
    }
  }
  for (int a = 0; a < m; ++a) {
    const int inv = g.inverse[a];
    if (inv < 0 || inv >= m) bad("inverse index out of range");
    if (g.composition[a][inv] != g.identities[g.morphisms[a].target] ||
        g.composition[inv][a] != g.identities[g.morphisms[a].source])
      bad("inverse is not two-sided");
  }
}

GroupoidSpec group_groupoid(std::string name, const std::vector<std::vector<int>>& table,
                            std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  GroupoidSpec g;
  g.name = std::move(name);
  g.objects = {"*"};
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  for (int i = 0; i < n; ++i) g.morphisms.push_back({0, 0, labels[i]});
  g.composition = table;
  g.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table[a][b] == 0) g.inverse[a] = b;
  g.identities = {0};
  validate_groupoid(g);
  return g;
}

GroupoidSpec cyclic_group(int n) {
  if (n < 1) bad("cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return group_groupoid("Z" + std::to_string(n), t);
}

GroupoidSpec symmetric_group_s3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back(std::to_string(perms[a][0]) + std::to_string(perms[a][1]) + std::to_string(perms[a][2]));
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return group_groupoid("S3", t, labels);
}

GroupoidSpec pair_groupoid(int n) {
  if (n < 1) bad("pair groupoid needs at least one object");
  GroupoidSpec g;
  g.name = "pair" + std::to_string(n);
  for (int i = 0; i < n; ++i) g.objects.push_back("x" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.morphisms.push_back({j, i, "(" + std::to_string(i) + "," + std::to_string(j) + ")"});
  const int m = n * n;
  g.composition.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) g.composition[i * n + j][j * n + k] = i * n + k;
  for (int i = 0; i < n; ++i) {
    g.identities.push_back(i * n + i);
    for (int j = 0; j < n; ++j) g.inverse.push_back(j * n + i);
  }
  validate_groupoid(g);
  return g;
}

GroupoidSpec disjoint_union(const GroupoidSpec& a, const GroupoidSpec& b) {
  GroupoidSpec g;
  g.name = a.name + "+" + b.name;
  const int oa = static_cast<int>(a.objects.size());
  const int ma = static_cast<int>(a.morphisms.size());
  const int m = ma + static_cast<int>(b.morphisms.size());
  g.objects = a.objects;
  for (const auto& x : b.objects) g.objects.push_back(x + "'");
  g.morphisms = a.morphisms;
  for (Morphism f : b.morphisms) {
    f.source += oa;
    f.target += oa;
    f.label += "'";
    g.morphisms.push_back(f);
  }
  g.composition.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < ma; ++i)
    for (int j = 0; j < ma; ++j) g.composition[i][j] = a.composition[i][j];
  for (int i = ma; i < m; ++i)
    for (int j = ma; j < m; ++j) {
      const int c = b.composition[i - ma][j - ma];
      g.composition[i][j] = c < 0 ? -1 : c + ma;
    }
  g.inverse = a.inverse;
  for (int v : b.inverse) g.inverse.push_back(v + ma);
  g.identities = a.identities;
  for (int v : b.identities) g.identities.push_back(v + ma);
  validate_groupoid(g);
  return g;
}

WeakHopfAlgebra groupoid_wha(const GroupoidSpec& g, const Tolerance& tol) {
  validate_groupoid(g);
  const int n = static_cast<int>(g.morphisms.size());
  std::vector<Mat> left(n, Mat::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.composition[a][b] >= 0) left[a](g.composition[a][b], b) = 1.0;
  Vec unit = Vec::Zero(n);
  for (int id : g.identities) unit(id) = 1.0;
  Mat inv = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a) inv(g.inverse[a], a) = 1.0;
  std::vector<std::string> labels;
  for (const Morphism& f : g.morphisms) labels.push_back(f.label);
  Mat delta = Mat::Zero(static_cast<Eigen::Index>(n) * n, n);
  for (int a = 0; a < n; ++a) delta(static_cast<Eigen::Index>(a) * n + a, a) = 1.0;
  WeakBialgebra w(FinDimAlgebra(labels, left, unit, inv), delta, Vec::Ones(n));
  WeakHopfAlgebra h = make_wha(w, tol, inv);
  if (!validate_star(h, tol).ok) throw Error(ErrorCode::ValidationError, "groupoid star structure fails");
  return h;
}

WeakHopfAlgebra function_wha(const GroupoidSpec& g, const Tolerance& tol) {
  WeakHopfAlgebra h = dual_wha(groupoid_wha(g, tol), tol);
  h = make_wha(h.wba, tol, h.antipode);
  if (!validate_star(h, tol).ok) throw Error(ErrorCode::ValidationError, "function algebra star structure fails");
  return h;
}

WeakHopfAlgebra sweedler_h4(const Tolerance& tol) {
  // Basis g^a x^b with index a + 2b: 1, g, x, gx.
  FinDimAlgebra alg = FinDimAlgebra::from_products({"1", "g", "x", "gx"}, [](int i, int j) {
    const int a1 = i & 1, b1 = i >> 1, a2 = j & 1, b2 = j >> 1;
    Vec out = Vec::Zero(4);
    if (b1 + b2 > 1) return out;
    const double sign = (b1 == 1 && a2 == 1) ? -1.0 : 1.0;
    out(((a1 + a2) % 2) | ((b1 + b2) << 1)) = sign;
    return out;
  }, Vec::Unit(4, 0));
  Mat delta = Mat::Zero(16, 4);
  auto put = [&](int i, int j, int k, double v) { delta(i * 4 + j, k) += v; };
  put(0, 0, 0, 1);  // 1 -> 1 (x) 1
  put(1, 1, 1, 1);  // g -> g (x) g
  put(2, 0, 2, 1);  // x -> x (x) 1 + g (x) x
  put(1, 2, 2, 1);
  put(3, 1, 3, 1);  // gx -> gx (x) g + 1 (x) gx
  put(0, 3, 3, 1);
  Vec eps(4);
  eps << 1, 1, 0, 0;
  return make_wha(WeakBialgebra(alg, delta, eps), tol);
}

std::vector<std::string> fixture_kinds() {
  return {"cyclic", "s3", "pair-groupoid", "groupoid-union", "function-cyclic", "function-pair-groupoid",
          "sweedler-h4"};
}

WeakHopfAlgebra make_fixture(const std::string& kind, int param, const Tolerance& tol) {
  if (kind == "cyclic") return groupoid_wha(cyclic_group(param), tol);
  if (kind == "s3") return groupoid_wha(symmetric_group_s3(), tol);
  if (kind == "pair-groupoid") return groupoid_wha(pair_groupoid(param), tol);
  if (kind == "groupoid-union") return groupoid_wha(disjoint_union(pair_groupoid(param), cyclic_group(2)), tol);
  if (kind == "function-cyclic") return function_wha(cyclic_group(param), tol);
  if (kind == "function-pair-groupoid") return function_wha(pair_groupoid(param), tol);
  if (kind == "sweedler-h4") return sweedler_h4(tol);
  throw Error(ErrorCode::SchemaError, "unknown fixture kind '" + kind + "'");
}

}  // namespace whakit
