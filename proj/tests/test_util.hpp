#pragma once

#include "homflow/lie_algebra.hpp"
#include "homflow/linalg.hpp"
#include "homflow/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace testutil {

using namespace homflow;

struct Rel {
  int a, b, c;  // one-based
  long num, den;
};

inline LieAlgebra exact_algebra(std::size_t n, std::initializer_list<Rel> rels, std::string name = {}) {
  std::vector<BracketEntry> e;
  for (const auto& r : rels)
    e.push_back({static_cast<std::size_t>(r.a - 1), static_cast<std::size_t>(r.b - 1), static_cast<std::size_t>(r.c - 1),
                 Scalar::exact(r.num, r.den)});
  return LieAlgebra(n, ScalarMode::exact, e, std::move(name));
}

inline ScalarVector exact_vec(std::initializer_list<long> xs) {
  ScalarVector v;
  for (long x : xs) v.push_back(Scalar::exact(x));
  return v;
}

inline ScalarVector float_vec(std::initializer_list<double> xs) {
  ScalarVector v;
  for (double x : xs) v.push_back(Scalar::floating(x));
  return v;
}

inline std::vector<double> random_point(std::size_t n, std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// B_AB = sum_C C_AB^C l_C expanded straight from the structure constants
inline std::vector<double> pairing_oracle(const LieAlgebra& g, const std::vector<double>& l) {
  const std::size_t n = g.dim();
  std::vector<double> b(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t bb = 0; bb < n; ++bb)
      for (std::size_t c = 0; c < n; ++c) b[a * n + bb] += g.constant(a, bb, c).to_double() * l[c];
  return b;
}

// invertible rational matrix: unit lower triangular times unit upper triangular
inline ScalarMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-5, 5), den(1, 4);
  std::vector<std::vector<Rational>> lo(n, std::vector<Rational>(n, 0)), up(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    lo[i][i] = 1;
    up[i][i] = Rational(d(rng) == 0 ? 1 : 2, den(rng));
    for (std::size_t j = 0; j < i; ++j) lo[i][j] = Rational(d(rng), den(rng));
    for (std::size_t j = i + 1; j < n; ++j) up[i][j] = Rational(d(rng), den(rng));
  }
  ScalarMatrix t(n, n, ScalarMode::exact);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += lo[i][k] * up[k][j];
      s.canonicalize();
      t(i, j) = Scalar(s);
    }
  return t;
}

}  // namespace testutil
