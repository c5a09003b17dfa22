#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace chernforge {

using Coord = std::vector<double>;
using Mat = Eigen::MatrixXcd;

/// Increasing multi-indices of length p drawn from {0..dim-1}, in
/// lexicographic order. Cached per (dim, p).
const std::vector<std::vector<int>>& multi_indices(int dim, int p);
long binomial(int n, int k);
/// Position of a sorted multi-index in the lexicographic list.
int multi_index_rank(int dim, const std::vector<int>& idx);

/// Value of a matrix-valued p-form at a point: one r x c complex matrix per
/// increasing multi-index. A default-constructed value (degree -1, empty) is
/// the universal additive zero, absorbed by add and wedge.
struct FormValue {
  int dim = 0;
  int degree = -1;  // -1 marks the universal zero
  std::vector<Mat> coeff;

  bool is_universal_zero() const { return degree < 0; }
  long rows() const { return coeff.empty() ? 0 : coeff.front().rows(); }
  long cols() const { return coeff.empty() ? 0 : coeff.front().cols(); }

  static FormValue zero(int dim, int degree, long rows = 1, long cols = 1);
  /// Degree-0 value holding a single matrix.
  static FormValue scalar(int dim, const Mat& m);
  static FormValue scalar(int dim, std::complex<double> z);
};

/// Wedge with matrix multiplication on values; degrees exceeding dim give the
/// structurally empty form (no coefficients).
FormValue wedge(const FormValue& a, const FormValue& b);
FormValue add(const FormValue& a, const FormValue& b);
FormValue scale(std::complex<double> s, const FormValue& a);
FormValue trace(const FormValue& a);
/// Wedge power a^{∧n}; n = 0 gives the scalar identity of a's shape.
FormValue wedge_pow(const FormValue& a, int n);
double sup_norm(const FormValue& a);

/// Sign of the shuffle merging sorted I and J (no common entries): (-1)^inv
/// with inv = #{(i,j) in I x J : i > j}. Returns 0 if I and J intersect.
int shuffle_sign(const std::vector<int>& I, const std::vector<int>& J);

}  // namespace chernforge
