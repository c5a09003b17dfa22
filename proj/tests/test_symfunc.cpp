#include <functional>
#include <random>

#include "chernforge/symfunc.hpp"
#include "doctest.h"

using namespace chernforge;
using namespace chernforge::symfunc;

namespace {

// brute-force elementary symmetric polynomial of explicit roots
Rational elementary_direct(const std::vector<Rational>& roots, int k) {
  Rational acc(0);
  const int n = static_cast<int>(roots.size());
  std::vector<int> pick(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      Rational t(1);
      for (int i = 0; i < k; ++i) t *= roots[pick[i]];
      acc += t;
      return;
    }
    for (int v = start; v < n; ++v) {
      pick[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(0, 0);
  return acc;
}

std::vector<Rational> power_sums(const std::vector<Rational>& roots, int upto) {
  std::vector<Rational> p(upto);
  for (int k = 1; k <= upto; ++k) {
    Rational s(0);
    for (const auto& x : roots) {
      Rational t(1);
      for (int e = 0; e < k; ++e) t *= x;
      s += t;
    }
    p[k - 1] = s;
  }
  return p;
}

}  // namespace

TEST_CASE("Newton recurrence on explicit power sums") {
  // roots (1, 2): p1 = 3, p2 = 5
  std::vector<Rational> p{Rational(3), Rational(5)};
  CHECK(elementary_from_power(p, 2) == Rational(2));
  CHECK(elementary_from_power(p, 1) == Rational(3));

  // roots (2, 3): p = (5, 13)
  std::vector<Rational> q{Rational(5), Rational(13)};
  CHECK(elementary_from_power(q, 2) == Rational(6));

  std::vector<Rational> zeros{Rational(0), Rational(0), Rational(0)};
  for (int k = 1; k <= 3; ++k)
    CHECK(elementary_from_power(zeros, k) == Rational(0));

  CHECK_THROWS_AS(elementary_from_power(p, 0), std::invalid_argument);
  CHECK_THROWS_AS(elementary_from_power(p, 3), std::invalid_argument);
}

TEST_CASE("inverse direction recovers power sums") {
  std::vector<Rational> e{Rational(3), Rational(2)};  // roots (1, 2)
  CHECK(power_from_elementary(e, 2) == Rational(5));
  std::vector<Rational> e2{Rational(5), Rational(6)};  // roots (2, 3)
  CHECK(power_from_elementary(e2, 2) == Rational(13));
  std::vector<Rational> zeros{Rational(0), Rational(0)};
  CHECK(power_from_elementary(zeros, 1) == Rational(0));
  CHECK(power_from_elementary(zeros, 2) == Rational(0));
  CHECK_THROWS_AS(power_from_elementary(e, 5), std::invalid_argument);
}

TEST_CASE("round trip power -> elementary -> power is exact") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> num(-8, 8), den(1, 7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<Rational> p(n);
    for (auto& x : p) x = Rational(num(rng), den(rng));
    std::vector<Rational> e(n);
    for (int k = 1; k <= n; ++k) e[k - 1] = elementary_from_power(p, k);
    for (int k = 1; k <= n; ++k)
      CHECK(power_from_elementary(e, k) == p[k - 1]);
  }
}

TEST_CASE("recurrence agrees with direct expansion on random roots") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<Rational> roots(n);
    for (auto& x : roots) x = Rational(num(rng), den(rng));
    const auto p = power_sums(roots, n);
    for (int k = 1; k <= n; ++k)
      CHECK(elementary_from_power(p, k) == elementary_direct(roots, k));
  }
}

TEST_CASE("s_k of a Chern-character-normalized aggregate") {
  // rank-1 data (1, x, x^2/2): c_2 of a line bundle vanishes identically
  const Rational x(3, 7);
  EvenAggregate<Rational> line{{Rational(1), x, x * x / 2}};
  CHECK(sk_of_aggregate(line, 2) == Rational(0));
  CHECK(sk_of_aggregate(line, 1) == x);

  // ch_1 = 5, ch_2 = 13/2 comes from diagonal roots (2, 3): c_2 = 6
  EvenAggregate<Rational> agg{{Rational(2), Rational(5), Rational(13, 2)}};
  CHECK(sk_of_aggregate(agg, 2) == Rational(6));
  CHECK(sk_of_aggregate(agg, 1) == Rational(5));

  CHECK_THROWS_AS(sk_of_aggregate(agg, 3), std::invalid_argument);
}

TEST_CASE("aggregate of diagonal roots reproduces elementary functions") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<Rational> roots(n);
    for (auto& x : roots) x = Rational(num(rng), den(rng));
    const auto p = power_sums(roots, n);
    EvenAggregate<Rational> agg;
    agg.components.push_back(Rational(n));
    Rational fact(1);
    for (int j = 1; j <= n; ++j) {
      fact *= j;
      agg.components.push_back(p[j - 1] / fact);
    }
    for (int k = 1; k <= n; ++k)
      CHECK(sk_of_aggregate(agg, k) == elementary_direct(roots, k));
  }
}

TEST_CASE("partial derivatives of s_k in the power sums") {
  // s_1 = p_1
  std::vector<Rational> none;
  CHECK(sk_partial_derivative(1, 1, 4).evaluate(none) == Rational(1));
  // s_2 = (p_1^2 - p_2)/2
  CHECK(sk_partial_derivative(2, 2, 4).evaluate(none) == Rational(-1, 2));
  std::vector<Rational> at{Rational(5)};
  CHECK(sk_partial_derivative(2, 1, 4).evaluate(at) == Rational(5));
  CHECK_THROWS_AS(sk_partial_derivative(2, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(sk_partial_derivative(3, 1, 2), std::invalid_argument);
}

TEST_CASE("symbolic derivative matches central finite differences") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 1; k <= 5; ++k) {
    const auto& ek = elementary_in_power_sums(k);
    CHECK(ek.weight() == k);
    for (int j = 1; j <= k; ++j) {
      const auto dk = sk_partial_derivative(k, j, 6);
      for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> pt(k);
        for (auto& v : pt) v = u(rng);
        const double h = 1e-5;
        std::vector<double> hi = pt, lo = pt;
        hi[j - 1] += h;
        lo[j - 1] -= h;
        const double fd = (ek.evaluate(hi) - ek.evaluate(lo)) / (2 * h);
        CHECK(std::abs(dk.evaluate(std::vector<double>(pt)) - fd) < 1e-9);
      }
    }
  }
}

TEST_CASE("polynomial algebra bookkeeping") {
  const auto& e3 = elementary_in_power_sums(3);
  // e_3 = (p_1^3 - 3 p_1 p_2 + 2 p_3)/6
  std::vector<Rational> at{Rational(1), Rational(2), Rational(3)};
  CHECK(e3.evaluate(at) == Rational(1, 6));
  const auto& p3 = power_in_elementaries(3);
  // p_3 = e_1^3 - 3 e_1 e_2 + 3 e_3
  CHECK(p3.evaluate(at) == Rational(4));
}
