#include "chernforge/charforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chernforge {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

const std::complex<double> kCurvatureScale =
    1.0 / (2.0 * std::numbers::pi * kI);  // 1/(2 pi i)

}  // namespace

FormValue normalized_curvature(const FormValue& omega) {
  return scale(kCurvatureScale, omega);
}

FormValue power_sum_value(const FormValue& omega, int j) {
  return trace(wedge_pow(normalized_curvature(omega), j));
}

FormValue chern_value(const FormValue& omega, int k) {
  if (k == 0) return FormValue::scalar(omega.dim, 1.0);
  const FormValue x = normalized_curvature(omega);
  std::vector<FormValue> p;
  p.reserve(k);
  FormValue xp = x;
  for (int j = 1; j <= k; ++j) {
    p.push_back(trace(xp));
    if (j < k) xp = wedge(xp, x);
  }
  return symfunc::elementary_from_power_ring(p, k, FormValueOps{omega.dim});
}

namespace {

FormValue entry(const FormValue& a, long i, long j) {
  FormValue out;
  out.dim = a.dim;
  out.degree = a.degree;
  out.coeff.reserve(a.coeff.size());
  for (const auto& m : a.coeff) {
    Mat e(1, 1);
    e(0, 0) = m(i, j);
    out.coeff.push_back(e);
  }
  return out;
}

void enumerate_subsets(long r, int k, std::vector<long>& cur, long start,
                       const std::function<void(const std::vector<long>&)>& f) {
  if (static_cast<int>(cur.size()) == k) {
    f(cur);
    return;
  }
  for (long v = start; v < r; ++v) {
    cur.push_back(v);
    enumerate_subsets(r, k, cur, v + 1, f);
    cur.pop_back();
  }
}

int permutation_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

FormValue det_wedge(const std::vector<std::vector<FormValue>>& m, int dim) {
  const int k = static_cast<int>(m.size());
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  FormValue acc;  // universal zero
  do {
    FormValue term = FormValue::scalar(dim, 1.0);
    for (int i = 0; i < k; ++i) term = wedge(term, m[i][perm[i]]);
    acc = add(acc, scale(permutation_sign(perm), term));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace

FormValue chern_value_det_oracle(const FormValue& omega, int k) {
  if (k == 0) return FormValue::scalar(omega.dim, 1.0);
  const FormValue x = normalized_curvature(omega);
  const long r = x.rows();
  FormValue acc;  // universal zero
  std::vector<long> cur;
  enumerate_subsets(r, k, cur, 0, [&](const std::vector<long>& s) {
    std::vector<std::vector<FormValue>> sub(k, std::vector<FormValue>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[i][j] = entry(x, s[i], s[j]);
    acc = add(acc, det_wedge(sub, x.dim));
  });
  if (acc.is_universal_zero()) return FormValue::zero(omega.dim, 2 * k);
  return acc;
}

namespace {

// Perfect matchings of {0..2n-1} with the sign of (i1 j1 i2 j2 ...).
struct Matching {
  std::vector<std::pair<int, int>> pairs;
  int sign = 1;
};

void enumerate_matchings(std::vector<int>& left, std::vector<int>& seq,
                         std::vector<std::pair<int, int>>& cur,
                         std::vector<Matching>& out) {
  if (left.empty()) {
    std::vector<int> flat;
    for (auto& [a, b] : cur) {
      flat.push_back(a);
      flat.push_back(b);
    }
    out.push_back({cur, permutation_sign(flat)});
    return;
  }
  const int a = left.front();
  for (std::size_t t = 1; t < left.size(); ++t) {
    const int b = left[t];
    std::vector<int> rest;
    for (std::size_t u = 1; u < left.size(); ++u)
      if (u != t) rest.push_back(left[u]);
    cur.emplace_back(a, b);
    enumerate_matchings(rest, seq, cur, out);
    cur.pop_back();
  }
}

const std::vector<Matching>& matchings(int n2) {
  static std::map<int, std::vector<Matching>> cache;
  auto it = cache.find(n2);
  if (it != cache.end()) return it->second;
  std::vector<int> all(n2);
  for (int i = 0; i < n2; ++i) all[i] = i;
  std::vector<int> seq;
  std::vector<std::pair<int, int>> cur;
  std::vector<Matching> out;
  enumerate_matchings(all, seq, cur, out);
  return cache.emplace(n2, std::move(out)).first->second;
}

}  // namespace

FormValue pfaffian_value(const std::vector<std::vector<FormValue>>& a) {
  const int n2 = static_cast<int>(a.size());
  if (n2 % 2 != 0) throw std::invalid_argument("pfaffian: odd rank");
  FormValue acc;
  for (const auto& m : matchings(n2)) {
    FormValue term;
    bool first = true;
    for (const auto& [i, j] : m.pairs) {
      term = first ? a[i][j] : wedge(term, a[i][j]);
      first = false;
    }
    acc = add(acc, scale(m.sign, term));
  }
  return acc;
}

FormValue euler_value(const FormValue& omega) {
  const long r = omega.rows();
  const FormValue x = scale(1.0 / (2.0 * std::numbers::pi), omega);
  std::vector<std::vector<FormValue>> e(r, std::vector<FormValue>(r));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) e[i][j] = entry(x, i, j);
  FormValue v = pfaffian_value(e);
  if (v.is_universal_zero()) return FormValue::zero(omega.dim, omega.degree);
  return v;
}

CharacteristicForm power_sum_form(const BundleWithConnection& b, int j,
                                  int gauge) {
  const FormField theta = b.gauge(gauge).theta;
  FormField f;
  f.domain = b.base;
  f.degree = 2 * j;
  f.eval = [theta, j](const Coord& x) {
    return power_sum_value(curvature_value(theta, x), j);
  };
  return {FormKind::PowerSum, j, std::move(f)};
}

CharacteristicForm chern_form(const BundleWithConnection& b, int k,
                              int gauge) {
  const FormField theta = b.gauge(gauge).theta;
  FormField f;
  f.domain = b.base;
  f.degree = 2 * k;
  f.eval = [theta, k](const Coord& x) {
    return chern_value(curvature_value(theta, x), k);
  };
  return {FormKind::Chern, k, std::move(f)};
}

symfunc::EvenAggregate<FormField> chern_character_form(
    const BundleWithConnection& b, int gauge) {
  symfunc::EvenAggregate<FormField> agg;
  const int jmax = b.base.dim() / 2;
  agg.components.push_back(
      constant_form(b.base, static_cast<double>(b.rank)));
  const FormField theta = b.gauge(gauge).theta;
  double fact = 1.0;
  for (int j = 1; j <= jmax; ++j) {
    fact *= j;
    FormField f;
    f.domain = b.base;
    f.degree = 2 * j;
    f.eval = [theta, j, fact](const Coord& x) {
      return scale(1.0 / fact, power_sum_value(curvature_value(theta, x), j));
    };
    agg.components.push_back(std::move(f));
  }
  return agg;
}

FormField sk_of_aggregate_form(const symfunc::EvenAggregate<FormField>& agg,
                               int k) {
  if (k <= 0 || agg.components.size() <= static_cast<std::size_t>(k))
    throw std::invalid_argument("sk_of_aggregate: insufficient components");
  FormField f;
  f.domain = agg.components.front().domain;
  f.degree = 2 * k;
  const int dim = f.domain.dim();
  std::vector<FormField> comps(agg.components.begin() + 1,
                               agg.components.begin() + 1 + k);
  f.eval = [comps, k, dim](const Coord& x) {
    std::vector<FormValue> p;
    p.reserve(k);
    double fact = 1.0;
    for (int j = 1; j <= k; ++j) {
      fact *= j;
      p.push_back(scale(fact, comps[j - 1].eval(x)));
    }
    return symfunc::elementary_from_power_ring(p, k, FormValueOps{dim});
  };
  return f;
}

CharacteristicForm pontryagin_form(const BundleWithConnection& b, int k,
                                   int gauge) {
  if (b.structure != StructureGroup::SpecialOrthogonal)
    throw std::invalid_argument("pontryagin_form: special-orthogonal bundles only");
  const FormField theta = b.gauge(gauge).theta;
  FormField f;
  f.domain = b.base;
  f.degree = 4 * k;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  f.eval = [theta, k, sign](const Coord& x) {
    return scale(sign, chern_value(curvature_value(theta, x), 2 * k));
  };
  return {FormKind::Pontryagin, k, std::move(f)};
}

CharacteristicForm euler_form(const BundleWithConnection& b, int gauge) {
  if (b.structure != StructureGroup::SpecialOrthogonal)
    throw std::invalid_argument("euler_form: special-orthogonal bundles only");
  if (b.rank % 2 != 0)
    throw std::invalid_argument("euler_form: odd rank has no Euler form");
  const FormField theta = b.gauge(gauge).theta;
  FormField f;
  f.domain = b.base;
  f.degree = static_cast<int>(b.rank);
  f.eval = [theta](const Coord& x) {
    return euler_value(curvature_value(theta, x));
  };
  return {FormKind::Euler, 0, std::move(f)};
}

namespace {

struct GL8 {
  std::vector<double> x, w;
  GL8() { gauss_legendre(8, 0.0, 1.0, x, w); }
};

const GL8& gl8() {
  static GL8 g;
  return g;
}

}  // namespace

FormField transgression_chern_forms(const FormField& theta0,
                                    const FormField& theta1, int k) {
  if (theta0.rows != theta1.rows || theta0.domain.dim() != theta1.domain.dim())
    throw std::invalid_argument("transgression: rank or base mismatch");
  FormField f;
  f.domain = theta0.domain;
  f.degree = 2 * k - 1;
  const int dim = f.domain.dim();
  std::vector<symfunc::SymPolynomial> dpolys;  // d e_k / d p_j, j = 1..k
  for (int j = 1; j <= k; ++j)
    dpolys.push_back(symfunc::elementary_in_power_sums(k).derivative(j));
  f.eval = [theta0, theta1, k, dim, dpolys](const Coord& x) -> FormValue {
    const FormValue t0 = theta0.eval(x), t1 = theta1.eval(x);
    const FormValue dt0 = exterior_derivative_value(theta0, x);
    const FormValue dt1 = exterior_derivative_value(theta1, x);
    const FormValue eta = add(t1, scale(-1.0, t0));
    const FormValue deta = add(dt1, scale(-1.0, dt0));
    const FormValue eta_hat = scale(kCurvatureScale, eta);
    const FormValueOps ops{dim};
    FormValue acc;  // universal zero
    for (int node = 0; node < 8; ++node) {
      const double t = gl8().x[node], wt = gl8().w[node];
      const FormValue theta_t = add(t0, scale(t, eta));
      const FormValue omega_t =
          add(add(dt0, scale(t, deta)), wedge(theta_t, theta_t));
      const FormValue xt = normalized_curvature(omega_t);
      std::vector<FormValue> p;
      p.reserve(k);
      FormValue xp = FormValue::scalar(dim, Mat::Identity(theta0.rows, theta0.rows));
      std::vector<FormValue> xpow{xp};  // X^0 .. X^{k-1}
      for (int j = 1; j < k; ++j) xpow.push_back(wedge(xpow.back(), xt));
      for (int j = 1; j <= k; ++j) p.push_back(trace(wedge(xpow[j - 1], xt)));
      FormValue inner;  // universal zero
      for (int j = 1; j <= k; ++j) {
        const auto& dpoly = dpolys[j - 1];
        if (dpoly.is_zero()) continue;
        const FormValue coeff = dpoly.evaluate_ring(p, ops);
        const FormValue tr_part =
            scale(static_cast<double>(j), trace(wedge(eta_hat, xpow[j - 1])));
        inner = add(inner, wedge(coeff, tr_part));
      }
      acc = add(acc, scale(wt, inner));
    }
    if (acc.is_universal_zero())
      return FormValue::zero(dim, 2 * k - 1);
    return acc;
  };
  return f;
}

FormField transgression_euler_forms(const FormField& theta0,
                                    const FormField& theta1) {
  if (theta0.rows != theta1.rows || theta0.domain.dim() != theta1.domain.dim())
    throw std::invalid_argument("transgression: rank or base mismatch");
  const long r = theta0.rows;
  if (r % 2 != 0) throw std::invalid_argument("transgression: odd rank");
  FormField f;
  f.domain = theta0.domain;
  f.degree = static_cast<int>(r) - 1;
  const int dim = f.domain.dim();
  const double norm = std::pow(2.0 * std::numbers::pi, -static_cast<double>(r) / 2.0);
  f.eval = [theta0, theta1, dim, r, norm](const Coord& x) -> FormValue {
    const FormValue t0 = theta0.eval(x), t1 = theta1.eval(x);
    const FormValue dt0 = exterior_derivative_value(theta0, x);
    const FormValue dt1 = exterior_derivative_value(theta1, x);
    const FormValue eta = add(t1, scale(-1.0, t0));
    const FormValue deta = add(dt1, scale(-1.0, dt0));
    FormValue acc;
    for (int node = 0; node < 8; ++node) {
      const double t = gl8().x[node], wt = gl8().w[node];
      const FormValue theta_t = add(t0, scale(t, eta));
      const FormValue omega_t =
          add(add(dt0, scale(t, deta)), wedge(theta_t, theta_t));
      // sum over matchings, eta in one slot, Omega_t in the others
      FormValue inner;
      for (const auto& m : matchings(static_cast<int>(r))) {
        for (std::size_t slot = 0; slot < m.pairs.size(); ++slot) {
          FormValue term;
          bool first = true;
          for (std::size_t q = 0; q < m.pairs.size(); ++q) {
            const auto& [i, j] = m.pairs[q];
            const FormValue& src = (q == slot) ? eta : omega_t;
            FormValue e = entry(src, i, j);
            term = first ? e : wedge(term, e);
            first = false;
          }
          inner = add(inner, scale(m.sign, term));
        }
      }
      acc = add(acc, scale(wt, inner));
    }
    if (acc.is_universal_zero())
      return FormValue::zero(dim, static_cast<int>(r) - 1);
    return scale(norm, acc);
  };
  return f;
}

TransgressionForm transgression_chern(const BundleWithConnection& b0,
                                      const BundleWithConnection& b1, int k,
                                      int gauge) {
  if (b0.rank != b1.rank || b0.base.dim() != b1.base.dim())
    throw std::invalid_argument("transgression: rank or base mismatch");
  return {k, transgression_chern_forms(b0.gauge(gauge).theta,
                                       b1.gauge(gauge).theta, k)};
}

}  // namespace chernforge
