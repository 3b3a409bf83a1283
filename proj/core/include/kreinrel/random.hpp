#pragma once

#include "kreinrel/types.hpp"

#include <cstdint>
#include <random>

namespace kreinrel {

// Seeded generator whose output depends only on the seed, not on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  // Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Index integer(Index lo, Index hi);  // inclusive bounds
  double normal();
  cplx complex_normal();

  Matrix gaussian(Index rows, Index cols);
  // Haar-distributed unitary via QR with phase correction.
  Matrix unitary(Index n);
  Matrix hermitian(Index n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Counter-mode child seed: trial k of a run seeded with master.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace kreinrel
