#pragma once

#include <cstddef>
#include <vector>

#include "opnormlab/matrix.hpp"
#include "opnormlab/tensornorm.hpp"

namespace opnormlab::counterexample {

/// Family of n partial isometries s_j: C^d -> C^(nd) with pairwise
/// orthogonal ranges summing to the identity. Entries are exactly 0/1.
struct IsometryFamily {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<ComplexMatrix> s;

  /// max |s_j^* s_k - delta_jk I| over all pairs.
  double isometry_residual() const;
  /// max |sum_j s_j s_j^* - I|.
  double completeness_residual() const;
};

/// Block-column realization s_j = e_j (x) I_d.
IsometryFamily shift_family(std::size_t n, std::size_t d);

/// x_n = sum_j s_j (x) s_j^T, legs zero-padded to (nd) x (nd).
tensornorm::TensorElement build_xn(const IsometryFamily& fam);
/// y_n = sum_j s_j (x) s_j = opposite(x_n, second leg).
tensornorm::TensorElement build_yn(const IsometryFamily& fam);

struct GapRow {
  std::size_t n = 0;
  double h_upper = 0.0;      // haagerup_upper(x_n), exactly 1
  double min_flipped = 0.0;  // min_norm(y_n), sqrt(n)
  double ratio = 0.0;
  tensornorm::Theorem1Report certificate;  // theorem1_certificate(y_n)
};

/// Gap table for n = 2..n_max at fixed fiber dimension d.
std::vector<GapRow> gap_experiment(std::size_t n_max, std::size_t d);

}  // namespace opnormlab::counterexample
