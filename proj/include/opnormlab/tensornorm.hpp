#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "opnormlab/linalg.hpp"
#include "opnormlab/random.hpp"

namespace opnormlab::tensornorm {

/// Element of M(n1 x n2) (x) M(m1 x m2), stored as a nonempty list of
/// elementary pairs a_i (x) b_i with uniform shapes per leg.
class TensorElement {
 public:
  using Pair = std::pair<ComplexMatrix, ComplexMatrix>;

  explicit TensorElement(std::vector<Pair> pairs);

  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t pair_count() const { return pairs_.size(); }
  std::size_t left_rows() const { return pairs_.front().first.rows(); }
  std::size_t left_cols() const { return pairs_.front().first.cols(); }
  std::size_t right_rows() const { return pairs_.front().second.rows(); }
  std::size_t right_cols() const { return pairs_.front().second.cols(); }

  /// The represented element as the kron sum; cap-checked.
  ComplexMatrix kron_sum() const;

 private:
  std::vector<Pair> pairs_;
};

/// Minimal (spatial) tensor norm: spectral norm of the kron sum.
double min_norm(const TensorElement& u);

/// Transpose one leg, zero-padding it square first. Involutive on square legs.
TensorElement opposite(const TensorElement& u, linalg::Leg leg);

/// Haagerup-type upper bound from the stored representation, computed after
/// balancing each pair so that |a_i| = |b_i| in spectral norm (zero pairs are
/// skipped). Dominates the true Haagerup norm and never exceeds
/// projective_upper.
double haagerup_upper(const TensorElement& u);

/// Sum of |a_i| * |b_i|; an upper bound for the projective norm of u.
double projective_upper(const TensorElement& u);

/// Re-express u through an invertible k x k gauge acting on the pair list:
/// a'_i = sum_j m_{ji} a_j, b'_i = sum_j inv(m)_{ij} b_j. Value-preserving.
TensorElement gauge_transform(const TensorElement& u, const ComplexMatrix& m);

struct HaagerupOptimizeOptions {
  std::size_t restarts = 8;
  std::size_t iterations = 300;
  std::uint64_t seed = 1;
};

struct HaagerupOptimizeResult {
  double value = 0.0;
  ComplexMatrix gauge;          // k x k, always invertible (a matrix exponential)
  std::size_t restarts_used = 0;
  std::size_t rejected_evals = 0;  // objective overflows recovered by jitter
};

/// Gauge descent on log(haagerup objective) over M = exp(G). The first
/// restart starts at the per-pair balancing gauge, so the result is always
/// inside [min_norm(u), haagerup_upper(u)] up to solver noise.
HaagerupOptimizeResult haagerup_optimize(const TensorElement& u,
                                         const HaagerupOptimizeOptions& options = {});

struct Theorem1Report {
  double lower = 0.0;      // min_norm(u): certified lower bound for the
                           // projective norm of the leg-transposed element
  double upper = 0.0;      // projective_upper of that element
  bool consistent = false; // lower <= upper + 1e-9
};

Theorem1Report theorem1_certificate(const TensorElement& u);

}  // namespace opnormlab::tensornorm
