#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "chernforge/rational.hpp"

namespace chernforge::symfunc {

/// Sparse exact-rational polynomial in indeterminates u_1..u_J, where u_j
/// stands for the j-th power sum and carries weight j.
class SymPolynomial {
 public:
  /// Exponent vector, index j-1 holds the exponent of u_j; trailing zeros are
  /// trimmed so the representation is canonical.
  using Monomial = std::vector<int>;

  SymPolynomial() = default;
  static SymPolynomial constant(const Rational& c);
  static SymPolynomial variable(int j);  // u_j, j >= 1

  SymPolynomial operator+(const SymPolynomial& o) const;
  SymPolynomial operator-(const SymPolynomial& o) const;
  SymPolynomial operator*(const SymPolynomial& o) const;
  SymPolynomial scaled(const Rational& c) const;

  /// Partial derivative with respect to u_j.
  SymPolynomial derivative(int j) const;

  bool is_zero() const { return terms_.empty(); }
  /// Weight of a weighted-homogeneous polynomial (sum j * exponent_j); 0 for
  /// the zero polynomial.
  int weight() const;

  Rational evaluate(std::span<const Rational> u) const;
  double evaluate(std::span<const double> u) const;

  /// Evaluation in a commutative ring presented by callbacks. Ops must
  /// provide: T add(T,T), T mul(T,T), T scale(Rational,T), T zero(), T one().
  template <class T, class Ops>
  T evaluate_ring(const std::vector<T>& u, const Ops& ops) const {
    T acc = ops.zero();
    for (const auto& [mono, c] : terms_) {
      T term = ops.one();
      for (std::size_t j = 0; j < mono.size(); ++j)
        for (int e = 0; e < mono[j]; ++e) {
          if (j >= u.size())
            throw std::invalid_argument("evaluate_ring: not enough values");
          term = ops.mul(term, u[j]);
        }
      acc = ops.add(acc, ops.scale(c, term));
    }
    return acc;
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }

 private:
  std::map<Monomial, Rational> terms_;
  void insert(Monomial m, const Rational& c);
};

/// e_k expressed in power sums p_1..p_k via the Newton recurrence
/// k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i.
const SymPolynomial& elementary_in_power_sums(int k);
/// p_k expressed in elementary symmetric functions e_1..e_k.
const SymPolynomial& power_in_elementaries(int k);

/// d e_k / d p_j as a polynomial in p_1..p_{k-j}. J bounds the variable count
/// of the ambient ring; requires 1 <= j <= k <= J.
SymPolynomial sk_partial_derivative(int k, int j, int J);

/// Newton recurrence on concrete rational data.
Rational elementary_from_power(std::span<const Rational> powers, int k);
Rational power_from_elementary(std::span<const Rational> elementaries, int k);

/// Graded even-degree element; component j is the degree-2j part carrying
/// Chern-character normalization (component_j = P_j / j!).
template <class T>
struct EvenAggregate {
  std::vector<T> components;  // index 0..J
};

/// Recovers P_j = j! * component_j and returns e_k of those, exactly.
Rational sk_of_aggregate(const EvenAggregate<Rational>& agg, int k);

/// Ring ops for exact rationals (for evaluate_ring and the generic Newton
/// recurrence below).
struct RationalOps {
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational scale(const Rational& c, const Rational& a) const { return c * a; }
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
};

/// Newton recurrence in an arbitrary commutative ring: returns e_k given
/// powers p_1..p_k (u[0..k-1]).
template <class T, class Ops>
T elementary_from_power_ring(const std::vector<T>& powers, int k,
                             const Ops& ops) {
  if (k <= 0 || static_cast<std::size_t>(k) > powers.size())
    throw std::invalid_argument("elementary_from_power: k out of range");
  std::vector<T> e;
  e.reserve(k + 1);
  e.push_back(ops.one());
  for (int m = 1; m <= k; ++m) {
    T acc = ops.zero();
    for (int i = 1; i <= m; ++i) {
      T term = ops.mul(e[m - i], powers[i - 1]);
      acc = ops.add(acc, ops.scale(Rational(i % 2 == 1 ? 1 : -1, 1), term));
    }
    e.push_back(ops.scale(Rational(1, m), acc));
  }
  return e[k];
}

}  // namespace chernforge::symfunc
