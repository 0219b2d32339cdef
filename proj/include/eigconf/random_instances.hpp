#pragma once

// Exact random symmetric matrices with prescribed rational eigenvalues:
// Q^T D Q with Q a product of Givens rotations whose (cos, sin) come from
// Pythagorean triples, so Q is exactly orthogonal over the rationals.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "eigconf/charpoly.hpp"
#include "eigconf/ec_engine.hpp"
#include "eigconf/rational.hpp"

namespace eigconf {

using Rng = std::mt19937_64;
using RationalMatrix = std::vector<std::vector<Rational>>;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// (cos, sin) = ((p^2 - q^2) / (p^2 + q^2), 2pq / (p^2 + q^2)).
inline std::pair<Rational, Rational> pythagorean_angle(Rng& rng) {
  long p = uniform(rng, 1, 6), q = uniform(rng, 1, 6);
  if (uniform(rng, 0, 1)) p = -p;
  BigInt den = BigInt(p * p + q * q);
  return {Rational(BigInt(p * p - q * q), den), Rational(BigInt(2 * p * q), den)};
}

inline RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix I(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

/// Product of `rotations` random plane rotations; exactly orthogonal.
inline RationalMatrix random_orthogonal(std::size_t n, Rng& rng, int rotations) {
  RationalMatrix Q = identity_matrix(n);
  if (n < 2) return Q;
  for (int k = 0; k < rotations; ++k) {
    std::size_t i = std::size_t(uniform(rng, 0, long(n) - 2));
    std::size_t j = std::size_t(uniform(rng, long(i) + 1, long(n) - 1));
    auto [c, s] = pythagorean_angle(rng);
    for (std::size_t row = 0; row < n; ++row) {
      Rational qi = Q[row][i], qj = Q[row][j];
      Q[row][i] = c * qi - s * qj;
      Q[row][j] = s * qi + c * qj;
    }
  }
  return Q;
}

/// Q^T diag(eigs) Q.
inline SymMatrix conjugated_diagonal(const std::vector<Rational>& eigs, const RationalMatrix& Q) {
  const std::size_t n = eigs.size();
  RationalMatrix M(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational acc;
      for (std::size_t k = 0; k < n; ++k) acc += Q[k][i] * eigs[k] * Q[k][j];
      M[i][j] = acc;
      M[j][i] = acc;
    }
  return SymMatrix::numeric(M);
}

inline SymMatrix random_symmetric_with_eigenvalues(const std::vector<Rational>& eigs, Rng& rng) {
  int rotations = eigs.size() < 2 ? 0 : int(eigs.size() * (eigs.size() - 1) / 2) + 1;
  return conjugated_diagonal(eigs, random_orthogonal(eigs.size(), rng, rotations));
}

/// Small rationals k/2 with |k| <= 12. Values may repeat within one matrix.
inline std::vector<Rational> random_eigenvalues(std::size_t n, Rng& rng) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Rational(BigInt(uniform(rng, -12, 12)), BigInt(2)));
  return out;
}

struct FuzzCase {
  std::uint64_t seed = 0;
  std::vector<Rational> alpha, beta;  // the prescribed eigenvalues
  SymMatrix F, G;
  int redraws = 0;  // non-generic draws that were skipped
};

/// A generic case with m in [1, m_max], n in [1, n_max], fully determined
/// by `seed`. Draws whose eigenvalues collide are skipped and redrawn.
inline FuzzCase sample_case(std::uint64_t seed, int m_max, int n_max) {
  Rng rng(seed);
  FuzzCase fc;
  fc.seed = seed;
  const std::size_t m = std::size_t(uniform(rng, 1, m_max)), n = std::size_t(uniform(rng, 1, n_max));
  while (true) {
    fc.alpha = random_eigenvalues(m, rng);
    fc.beta = random_eigenvalues(n, rng);
    bool shared = false;
    for (const auto& a : fc.alpha)
      for (const auto& b : fc.beta) shared = shared || a == b;
    if (!shared) break;
    ++fc.redraws;
  }
  fc.F = random_symmetric_with_eigenvalues(fc.alpha, rng);
  fc.G = random_symmetric_with_eigenvalues(fc.beta, rng);
  return fc;
}

/// Seed of trial `index` in a run seeded with `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index), std::uint32_t(index >> 32)};
  std::uint32_t parts[2];
  seq.generate(parts, parts + 2);
  return (std::uint64_t(parts[0]) << 32) | parts[1];
}

}  // namespace eigconf
