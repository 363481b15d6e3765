#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <doctest.h>

#include "whakit/algebra.hpp"

// Independent builders used as oracles; they do not go through the fixtures module.
namespace testing_support {

using whakit::FinDimAlgebra;
using whakit::Mat;
using whakit::Scalar;
using whakit::Vec;

inline FinDimAlgebra matrix_algebra(int n) {
  const int d = n * n;
  std::vector<Mat> left(d, Mat::Zero(d, d));
  Mat inv = Mat::Zero(d, d);
  Vec unit = Vec::Zero(d);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      labels.push_back("E" + std::to_string(i) + std::to_string(j));
      inv(j * n + i, i * n + j) = 1.0;
      for (int l = 0; l < n; ++l) left[i * n + j](i * n + l, j * n + l) = 1.0;
    }
  for (int i = 0; i < n; ++i) unit(i * n + i) = 1.0;
  return FinDimAlgebra(labels, left, unit, inv);
}

inline FinDimAlgebra direct_sum(const FinDimAlgebra& a, const FinDimAlgebra& b) {
  const int n = a.dim(), m = b.dim(), d = n + m;
  std::vector<Mat> left(d, Mat::Zero(d, d));
  for (int i = 0; i < n; ++i) left[i].topLeftCorner(n, n) = a.left(i);
  for (int i = 0; i < m; ++i) left[n + i].bottomRightCorner(m, m) = b.left(i);
  Vec unit(d);
  unit << a.unit(), b.unit();
  Mat inv = Mat::Zero(d, d);
  inv.topLeftCorner(n, n) = a.involution();
  inv.bottomRightCorner(m, m) = b.involution();
  std::vector<std::string> labels = a.labels();
  for (const auto& l : b.labels()) labels.push_back(l + "'");
  return FinDimAlgebra(labels, left, unit, inv);
}

inline FinDimAlgebra cyclic_group_algebra(int n) {
  std::vector<Mat> left(n, Mat::Zero(n, n));
  Mat inv = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    inv((n - i) % n, i) = 1.0;
    for (int j = 0; j < n; ++j) left[i]((i + j) % n, j) = 1.0;
  }
  return FinDimAlgebra({}, left, Vec::Unit(n, 0), inv);
}

// Sweedler's four-dimensional algebra: basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx.
inline FinDimAlgebra sweedler_algebra() {
  auto word = [](int i) { return std::pair<int, int>{i & 1, i >> 1}; };  // g^a x^b
  return FinDimAlgebra::from_products({"1", "g", "x", "gx"}, [&](int i, int j) {
    auto [a1, b1] = word(i);
    auto [a2, b2] = word(j);
    Vec out = Vec::Zero(4);
    if (b1 + b2 > 1) return out;
    const double sign = (b1 == 1 && a2 == 1) ? -1.0 : 1.0;  // x g = -g x
    out(((a1 + a2) % 2) | ((b1 + b2) << 1)) = sign;
    return out;
  }, Vec::Unit(4, 0));
}

// Same algebra in the basis given by the columns of p.
inline FinDimAlgebra change_basis(const FinDimAlgebra& a, const Mat& p) {
  const int n = a.dim();
  const Mat pinv = p.inverse();
  std::vector<Mat> left(n);
  for (int k = 0; k < n; ++k) left[k] = pinv * a.left_matrix(p.col(k)) * p;
  std::optional<Mat> inv;
  if (a.has_involution()) inv = Mat(pinv * a.involution() * p.conjugate());
  return FinDimAlgebra({}, left, pinv * a.unit(), inv);
}

inline Mat random_invertible(int n, whakit::Rng& rng) {
  Mat p = Mat::Identity(n, n);
  for (int i = 0; i < n; ++i) p.col(i) += 0.4 * rng.complex_vector(n);
  return p;
}

inline double approx(const Vec& a, const Vec& b) { return whakit::max_abs(a - b); }

}  // namespace testing_support
