#pragma once

#include <cstdint>
#include <string_view>

#include "opnormlab/matrix.hpp"

namespace opnormlab {

/// FNV-1a 64-bit hash; stable across platforms and runs.
std::uint64_t stable_hash64(std::string_view s);

/// Deterministic stream built on splitmix64 with explicit double extraction.
/// The same seed yields the same sequence on every platform; child streams
/// are derived from the root seed and a name, independent of draws made so far.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  /// Standard complex normal: E|z|^2 = 1.
  cplx cnormal();
  std::uint64_t seed() const { return seed_; }

  /// Independent stream keyed by the root seed and a label.
  Rng child(std::string_view name) const;

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Matrix with iid standard complex normal entries.
ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// Haar-ish random unitary: Gram-Schmidt of a complex Gaussian matrix.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

/// Random density matrix: normalized G G* for Gaussian G.
ComplexMatrix random_density(Rng& rng, std::size_t n);

}  // namespace opnormlab
