#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "opnormlab/linalg.hpp"
#include "opnormlab/sdp.hpp"
#include "opnormlab/tensornorm.hpp"

namespace opnormlab::superop {

/// Two-sided multiplication superoperator Phi(c) = sum_i a_i c b_i, mapping
/// M(in_rows x in_cols) to M(out_rows x out_cols); a_i is out_rows x in_rows
/// and b_i is in_cols x out_cols.
class Superoperator {
 public:
  using Pair = std::pair<ComplexMatrix, ComplexMatrix>;

  explicit Superoperator(std::vector<Pair> pairs);

  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t in_rows() const { return pairs_.front().first.cols(); }
  std::size_t in_cols() const { return pairs_.front().second.rows(); }
  std::size_t out_rows() const { return pairs_.front().first.rows(); }
  std::size_t out_cols() const { return pairs_.front().second.cols(); }
  bool square_legs() const { return in_rows() == in_cols() && out_rows() == out_cols(); }

  ComplexMatrix apply(const ComplexMatrix& c) const;
  /// Matrix of vec -> vec action (row-major vec): sum_i kron(a_i, b_i^T).
  ComplexMatrix matrix_rep() const;

 private:
  std::vector<Pair> pairs_;
};

/// Schatten-2 induced norm; equals spectral_norm(matrix_rep) by construction.
double s2_norm(const Superoperator& phi);

/// Trace-pairing adjoint: pairs (a_i^*, b_i^*).
Superoperator adjoint(const Superoperator& phi);

/// The multiplication map carried by a tensor element: pairs (a_i, b_i^T),
/// so that s2_norm(from_element(u)) == min_norm(u) along the same code path.
Superoperator from_element(const tensornorm::TensorElement& u);

Superoperator identity_map(std::size_t d);
Superoperator transpose_map(std::size_t d);
/// c -> u c u^*.
Superoperator conjugation_map(const ComplexMatrix& u);
/// Phi (x) id_d, via pairs (a_i (x) I_d, b_i (x) I_d).
Superoperator tensor_with_identity(const Superoperator& phi, std::size_t d);
/// Theta Phi Theta with Theta the transpose map; pairs become (b_i^T, a_i^T).
Superoperator transpose_sandwich(const Superoperator& phi);

/// Choi matrix J[(i,k),(j,l)] = Phi(E_ij)[k, l]; requires square legs.
ComplexMatrix choi(const Superoperator& phi);
/// Operator-Schmidt Kraus recovery from a Choi matrix (works for non-CP maps).
Superoperator kraus_from_choi(const ComplexMatrix& j, std::size_t d_in, std::size_t d_out);

struct SeesawOptions {
  std::size_t restarts = 16;
  std::size_t iterations = 100;
  std::uint64_t seed = 1;
};

/// Alternating-maximization lower bound for the Schatten-p induced norm.
/// The reported value is always the p-norm of an explicit feasible witness.
double schatten_induced_lower(const Superoperator& phi, linalg::Schatten p,
                              const SeesawOptions& options = {});

inline constexpr std::size_t kInterpolationRestartCap = 256;

enum class InterpolationVerdict { holds, inconclusive, failed };

struct InterpolationReport {
  double s2 = 0.0;
  double lower1 = 0.0;
  double lower_inf = 0.0;
  bool rt_bound_holds = false;
  InterpolationVerdict verdict = InterpolationVerdict::inconclusive;
  std::size_t restarts = 0;
};

/// Riesz-Thorin midpoint check: s2^2 <= lower1 * lower_inf + 1e-6. A
/// violation below the restart cap is inconclusive, at the cap it is failed.
InterpolationReport interpolation_check(const Superoperator& phi,
                                        const SeesawOptions& options = {});

struct DiamondResult {
  double value = 0.0;
  double sdp_gap = 0.0;
  std::size_t iterations = 0;
  sdp::SdpStatus status = sdp::SdpStatus::max_iterations;
};

/// Watrous SDP for the diamond norm; requires square legs.
sdp::SdpProblem make_diamond_problem(const ComplexMatrix& choi_matrix, std::size_t d_in,
                                     std::size_t d_out);
DiamondResult diamond_norm_certified(const Superoperator& phi);
/// Value only; throws NumericalError if the SDP did not reach optimal.
double diamond_norm(const Superoperator& phi);

/// Completely bounded operator norm, via the diamond norm of the adjoint.
double cb_operator_norm(const Superoperator& phi);

/// |diamond(Phi) - diamond(Theta Phi Theta)| <= tol.
bool cb_invariance_check(const Superoperator& phi, double tol = 1e-5);

}  // namespace opnormlab::superop
