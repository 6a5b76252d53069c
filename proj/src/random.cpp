#include "opnormlab/random.hpp"

#include <cmath>
#include <numbers>

namespace opnormlab {

std::uint64_t stable_hash64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  // Box-Muller; u1 shifted away from zero so the log is finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(a);
  have_cached_ = true;
  return r * std::cos(a);
}

cplx Rng::cnormal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) * std::sqrt(0.5);
}

Rng Rng::child(std::string_view name) const {
  std::uint64_t h = stable_hash64(name);
  // Mix the root seed through splitmix64 once so seed 0 still separates streams.
  std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return Rng(h ^ z);
}

ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.cnormal();
  return m;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  ComplexMatrix g = random_matrix(rng, n, n);
  ComplexMatrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g(i, j);
    // Two-pass modified Gram-Schmidt for orthogonality at machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q(i, k);
      }
    }
    double nrm = 0.0;
    for (const cplx& z : v) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) {
      // Degenerate draw; replace with a fresh column and redo.
      for (std::size_t i = 0; i < n; ++i) g(i, j) = rng.cnormal();
      --j;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / nrm;
  }
  return q;
}

ComplexMatrix random_density(Rng& rng, std::size_t n) {
  ComplexMatrix g = random_matrix(rng, n, n);
  ComplexMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho *= cplx(1.0 / tr, 0.0);
  return rho.hermitized();
}

}  // namespace opnormlab
