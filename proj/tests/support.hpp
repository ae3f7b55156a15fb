#pragma once

#include <random>

#include <catch_amalgamated.hpp>

#include "frontalforge/frontalforge.hpp"

namespace ff = frontalforge;

inline ff::Vector vec(std::initializer_list<double> v) { return ff::make_vector(v); }

inline ff::Vector random_vector(std::mt19937_64& rng, ff::Index n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  ff::Vector v(n);
  for (ff::Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

inline ff::Matrix random_matrix(std::mt19937_64& rng, ff::Index r, ff::Index c) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  ff::Matrix m(r, c);
  for (ff::Index i = 0; i < r; ++i) {
    for (ff::Index j = 0; j < c; ++j) m(i, j) = d(rng);
  }
  return m;
}

inline ff::Vector random_unit(std::mt19937_64& rng, ff::Index n) {
  ff::Vector v;
  do {
    v = random_vector(rng, n);
  } while (v.norm() < 1e-3);
  return v / v.norm();
}

inline ff::Param at(double t) { return vec({t}); }

template <class Fn>
ff::ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const ff::Error& e) {
    return e.code();
  }
  FAIL("expected frontalforge::Error");
  return ff::ErrorCode::InvalidArgument;
}
