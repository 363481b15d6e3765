#pragma once

#include <string>
#include <vector>

#include "whakit/wha.hpp"

namespace whakit {

struct Morphism {
  int source = 0;
  int target = 0;
  std::string label;
};

/// Finite groupoid. composition[g][h] is the index of g o h (h first), or -1
/// when source(g) != target(h).
struct GroupoidSpec {
  std::string name;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<std::vector<int>> composition;
  std::vector<int> inverse;
  std::vector<int> identities;  // identity morphism of each object
};

/// Throws InvalidGroupoid describing the first violated condition.
void validate_groupoid(const GroupoidSpec& g);

/// One-object groupoid from a group multiplication table (table[a][b] = a b, element 0 the identity).
GroupoidSpec group_groupoid(std::string name, const std::vector<std::vector<int>>& table,
                            std::vector<std::string> labels = {});
GroupoidSpec cyclic_group(int n);
GroupoidSpec symmetric_group_s3();
/// All ordered pairs (i, j) of n objects, read as arrows j -> i.
GroupoidSpec pair_groupoid(int n);
GroupoidSpec disjoint_union(const GroupoidSpec& a, const GroupoidSpec& b);

/// Groupoid algebra: product = composition or 0, Delta(g) = g (x) g, eps(g) = 1,
/// S(g) = g^-1 = g*. Validated before it is returned.
WeakHopfAlgebra groupoid_wha(const GroupoidSpec& g, const Tolerance& tol = {});
/// Functions on the morphisms of g, the dual of groupoid_wha(g).
WeakHopfAlgebra function_wha(const GroupoidSpec& g, const Tolerance& tol = {});
/// Sweedler's Hopf algebra <1, g, x, gx>: g^2 = 1, x^2 = 0, xg = -gx,
/// Delta(g) = g (x) g, Delta(x) = x (x) 1 + g (x) x. Not semisimple; no involution.
WeakHopfAlgebra sweedler_h4(const Tolerance& tol = {});

/// Names accepted by make_fixture: "cyclic", "s3", "pair-groupoid", "groupoid-union",
/// "function-cyclic", "function-pair-groupoid", "sweedler-h4".
std::vector<std::string> fixture_kinds();
WeakHopfAlgebra make_fixture(const std::string& kind, int param = 2, const Tolerance& tol = {});

}  // namespace whakit
