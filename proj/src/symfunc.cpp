#include "chernforge/symfunc.hpp"

namespace chernforge::symfunc {

namespace {

void trim(SymPolynomial::Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

void SymPolynomial::insert(Monomial m, const Rational& c) {
  if (c == 0) return;
  trim(m);
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SymPolynomial SymPolynomial::constant(const Rational& c) {
  SymPolynomial p;
  p.insert({}, c);
  return p;
}

SymPolynomial SymPolynomial::variable(int j) {
  if (j < 1) throw std::invalid_argument("variable: j must be >= 1");
  SymPolynomial p;
  Monomial m(j, 0);
  m[j - 1] = 1;
  p.insert(std::move(m), Rational(1));
  return p;
}

SymPolynomial SymPolynomial::operator+(const SymPolynomial& o) const {
  SymPolynomial p = *this;
  for (const auto& [m, c] : o.terms_) p.insert(m, c);
  return p;
}

SymPolynomial SymPolynomial::operator-(const SymPolynomial& o) const {
  SymPolynomial p = *this;
  for (const auto& [m, c] : o.terms_) p.insert(m, -c);
  return p;
}

SymPolynomial SymPolynomial::operator*(const SymPolynomial& o) const {
  SymPolynomial p;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      p.insert(std::move(m), ca * cb);
    }
  return p;
}

SymPolynomial SymPolynomial::scaled(const Rational& c) const {
  SymPolynomial p;
  for (const auto& [m, q] : terms_) p.insert(m, q * c);
  return p;
}

SymPolynomial SymPolynomial::derivative(int j) const {
  if (j < 1) throw std::invalid_argument("derivative: j must be >= 1");
  SymPolynomial p;
  for (const auto& [m, c] : terms_) {
    if (m.size() < static_cast<std::size_t>(j) || m[j - 1] == 0) continue;
    Monomial d = m;
    int e = d[j - 1];
    d[j - 1] -= 1;
    p.insert(std::move(d), c * e);
  }
  return p;
}

int SymPolynomial::weight() const {
  int w = 0;
  for (const auto& [m, c] : terms_) {
    int mw = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      mw += static_cast<int>(i + 1) * m[i];
    w = std::max(w, mw);
  }
  return w;
}

Rational SymPolynomial::evaluate(std::span<const Rational> u) const {
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      if (j >= u.size())
        throw std::invalid_argument("evaluate: not enough values");
      for (int e = 0; e < m[j]; ++e) t *= u[j];
    }
    acc += t;
  }
  return acc;
}

double SymPolynomial::evaluate(std::span<const double> u) const {
  double acc = 0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      if (j >= u.size())
        throw std::invalid_argument("evaluate: not enough values");
      for (int e = 0; e < m[j]; ++e) t *= u[j];
    }
    acc += t;
  }
  return acc;
}

namespace {

std::vector<SymPolynomial> build_elementary_table(int upto) {
  // k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
  std::vector<SymPolynomial> e;
  e.push_back(SymPolynomial::constant(Rational(1)));
  for (int k = 1; k <= upto; ++k) {
    SymPolynomial acc;
    for (int i = 1; i <= k; ++i) {
      SymPolynomial term = e[k - i] * SymPolynomial::variable(i);
      acc = acc + term.scaled(Rational(i % 2 == 1 ? 1 : -1));
    }
    e.push_back(acc.scaled(Rational(1, k)));
  }
  return e;
}

std::vector<SymPolynomial> build_power_table(int upto) {
  // p_k = (-1)^{k-1} k e_k + sum_{i=1..k-1} (-1)^{i-1} e_i p_{k-i}
  std::vector<SymPolynomial> p;
  p.push_back(SymPolynomial::constant(Rational(0)));  // unused p_0 slot
  for (int k = 1; k <= upto; ++k) {
    SymPolynomial acc =
        SymPolynomial::variable(k).scaled(Rational(k % 2 == 1 ? k : -k));
    for (int i = 1; i <= k - 1; ++i) {
      SymPolynomial term = SymPolynomial::variable(i) * p[k - i];
      acc = acc + term.scaled(Rational(i % 2 == 1 ? 1 : -1));
    }
    p.push_back(acc);
  }
  return p;
}

constexpr int kMaxOrder = 16;

}  // namespace

const SymPolynomial& elementary_in_power_sums(int k) {
  static std::vector<SymPolynomial> table = build_elementary_table(kMaxOrder);
  if (k < 0 || k > kMaxOrder)
    throw std::invalid_argument("elementary_in_power_sums: k out of range");
  return table[k];
}

const SymPolynomial& power_in_elementaries(int k) {
  static std::vector<SymPolynomial> table = build_power_table(kMaxOrder);
  if (k < 1 || k > kMaxOrder)
    throw std::invalid_argument("power_in_elementaries: k out of range");
  return table[k];
}

SymPolynomial sk_partial_derivative(int k, int j, int J) {
  if (j < 1 || k < j || J < k)
    throw std::invalid_argument("sk_partial_derivative: need 1 <= j <= k <= J");
  return elementary_in_power_sums(k).derivative(j);
}

Rational elementary_from_power(std::span<const Rational> powers, int k) {
  std::vector<Rational> u(powers.begin(), powers.end());
  return elementary_from_power_ring(u, k, RationalOps{});
}

Rational power_from_elementary(std::span<const Rational> elementaries, int k) {
  if (k <= 0 || static_cast<std::size_t>(k) > elementaries.size())
    throw std::invalid_argument("power_from_elementary: k out of range");
  std::vector<Rational> u(elementaries.begin(), elementaries.end());
  return power_in_elementaries(k).evaluate(u);
}

Rational sk_of_aggregate(const EvenAggregate<Rational>& agg, int k) {
  if (k <= 0 || agg.components.size() <= static_cast<std::size_t>(k))
    throw std::invalid_argument("sk_of_aggregate: insufficient components");
  std::vector<Rational> powers(k);
  Rational fact(1);
  for (int j = 1; j <= k; ++j) {
    fact *= j;
    powers[j - 1] = fact * agg.components[j];
  }
  return elementary_from_power_ring(powers, k, RationalOps{});
}

}  // namespace chernforge::symfunc
