#include "chernforge/formvalue.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace chernforge {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

const std::vector<std::vector<int>>& multi_indices(int dim, int p) {
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dim, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<std::vector<int>> out;
  if (p == 0) {
    out.push_back({});
  } else if (p <= dim) {
    std::vector<int> idx(p);
    for (int i = 0; i < p; ++i) idx[i] = i;
    while (true) {
      out.push_back(idx);
      int i = p - 1;
      while (i >= 0 && idx[i] == dim - p + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

int multi_index_rank(int dim, const std::vector<int>& idx) {
  // Lexicographic rank via counting combinations that precede idx.
  const int p = static_cast<int>(idx.size());
  long rank = 0;
  int prev = -1;
  for (int i = 0; i < p; ++i) {
    for (int v = prev + 1; v < idx[i]; ++v)
      rank += binomial(dim - 1 - v, p - 1 - i);
    prev = idx[i];
  }
  return static_cast<int>(rank);
}

FormValue FormValue::zero(int dim, int degree, long rows, long cols) {
  FormValue v;
  v.dim = dim;
  v.degree = degree;
  const long n = binomial(dim, degree);
  v.coeff.assign(static_cast<std::size_t>(n), Mat::Zero(rows, cols));
  return v;
}

FormValue FormValue::scalar(int dim, const Mat& m) {
  FormValue v;
  v.dim = dim;
  v.degree = 0;
  v.coeff = {m};
  return v;
}

FormValue FormValue::scalar(int dim, std::complex<double> z) {
  Mat m(1, 1);
  m(0, 0) = z;
  return scalar(dim, m);
}

int shuffle_sign(const std::vector<int>& I, const std::vector<int>& J) {
  int inv = 0;
  for (int a : I)
    for (int b : J) {
      if (a == b) return 0;
      if (a > b) ++inv;
    }
  return (inv % 2 == 0) ? 1 : -1;
}

namespace {

// Split table: for each K (rank in C(dim,pa+pb)) the list of (rankI, rankJ,
// sign) over subsets I of K with |I| = pa. Cached; this is the hot path of
// every wedge.
struct SplitEntry {
  int k, i, j, sign;
};

const std::vector<SplitEntry>& split_table(int dim, int pa, int pb) {
  static std::map<std::tuple<int, int, int>, std::vector<SplitEntry>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(dim, pa, pb);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<SplitEntry> out;
  const auto& ks = multi_indices(dim, pa + pb);
  for (std::size_t kr = 0; kr < ks.size(); ++kr) {
    const auto& K = ks[kr];
    const int p = pa + pb;
    // enumerate subsets of positions of size pa
    std::vector<int> pos(pa);
    for (int i = 0; i < pa; ++i) pos[i] = i;
    if (pa == 0) {
      out.push_back({static_cast<int>(kr), 0, static_cast<int>(kr), 1});
      continue;
    }
    while (true) {
      std::vector<int> I, J;
      I.reserve(pa);
      J.reserve(pb);
      std::size_t pi = 0;
      for (int i = 0; i < p; ++i) {
        if (pi < pos.size() && pos[pi] == i) {
          I.push_back(K[i]);
          ++pi;
        } else {
          J.push_back(K[i]);
        }
      }
      out.push_back({static_cast<int>(kr), multi_index_rank(dim, I),
                     multi_index_rank(dim, J), shuffle_sign(I, J)});
      int i = pa - 1;
      while (i >= 0 && pos[i] == p - pa + i) --i;
      if (i < 0) break;
      ++pos[i];
      for (int j = i + 1; j < pa; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

FormValue wedge(const FormValue& a, const FormValue& b) {
  if (a.is_universal_zero() || b.is_universal_zero()) return FormValue{};
  if (a.dim != b.dim)
    throw std::invalid_argument("wedge: domain dimension mismatch");
  const int p = a.degree + b.degree;
  if (a.coeff.empty() || b.coeff.empty() || p > a.dim) {
    FormValue v;
    v.dim = a.dim;
    v.degree = p;
    return v;  // structurally empty: zero of overflowing degree
  }
  const long rows = a.rows(), cols = b.cols();
  if (a.cols() != b.rows())
    throw std::invalid_argument("wedge: matrix shapes not composable");
  FormValue out = FormValue::zero(a.dim, p, rows, cols);
  for (const auto& e : split_table(a.dim, a.degree, b.degree)) {
    if (e.sign == 1)
      out.coeff[e.k].noalias() += a.coeff[e.i] * b.coeff[e.j];
    else
      out.coeff[e.k].noalias() -= a.coeff[e.i] * b.coeff[e.j];
  }
  return out;
}

FormValue add(const FormValue& a, const FormValue& b) {
  if (a.is_universal_zero()) return b;
  if (b.is_universal_zero()) return a;
  if (a.dim != b.dim || a.degree != b.degree)
    throw std::invalid_argument("add: degree or dimension mismatch");
  if (a.coeff.empty()) return a;
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("add: shape mismatch");
  FormValue out = a;
  for (std::size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] += b.coeff[i];
  return out;
}

FormValue scale(std::complex<double> s, const FormValue& a) {
  if (a.is_universal_zero()) return a;
  FormValue out = a;
  for (auto& m : out.coeff) m *= s;
  return out;
}

FormValue trace(const FormValue& a) {
  if (a.is_universal_zero()) return a;
  FormValue out;
  out.dim = a.dim;
  out.degree = a.degree;
  out.coeff.reserve(a.coeff.size());
  for (const auto& m : a.coeff) {
    Mat t(1, 1);
    t(0, 0) = m.trace();
    out.coeff.push_back(t);
  }
  return out;
}

FormValue wedge_pow(const FormValue& a, int n) {
  if (n == 0) {
    if (a.is_universal_zero() || a.coeff.empty())
      throw std::invalid_argument("wedge_pow: shape of identity unknown");
    return FormValue::scalar(a.dim, Mat::Identity(a.rows(), a.rows()));
  }
  FormValue out = a;
  for (int i = 1; i < n; ++i) out = wedge(out, a);
  return out;
}

double sup_norm(const FormValue& a) {
  double s = 0;
  for (const auto& m : a.coeff) s = std::max(s, m.cwiseAbs().maxCoeff());
  return a.coeff.empty() ? 0.0 : s;
}

}  // namespace chernforge
