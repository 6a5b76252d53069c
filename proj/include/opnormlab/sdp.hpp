#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "opnormlab/matrix.hpp"

namespace opnormlab::sdp {

/// Standard-form semidefinite program over block-diagonal Hermitian matrices:
///   minimize    sum_k <C_k, X_k>
///   subject to  sum_k <A_{i,k}, X_k> = b_i,   X_k >= 0,
/// with <P, Q> = Re tr(P* Q). Objective and constraint blocks must be
/// Hermitian within 1e-12; they are hermitized on construction.
class SdpProblem {
 public:
  struct Constraint {
    std::vector<ComplexMatrix> blocks;
    double rhs = 0.0;
  };

  explicit SdpProblem(std::vector<std::size_t> block_dims);

  void set_objective(std::vector<ComplexMatrix> blocks);
  void add_constraint(std::vector<ComplexMatrix> blocks, double rhs);

  const std::vector<std::size_t>& block_dims() const { return dims_; }
  const std::vector<ComplexMatrix>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t total_dim() const;

 private:
  std::vector<ComplexMatrix> check_blocks(std::vector<ComplexMatrix> blocks,
                                          const char* what) const;

  std::vector<std::size_t> dims_;
  std::vector<ComplexMatrix> objective_;
  std::vector<Constraint> constraints_;
};

enum class SdpStatus { optimal, max_iterations, infeasible_suspected };

struct SdpSolution {
  SdpStatus status = SdpStatus::max_iterations;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double relative_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::size_t iterations = 0;
  bool constraints_dependent = false;
  std::vector<ComplexMatrix> primal_blocks;
  std::vector<double> dual_vector;
};

struct SdpOptions {
  double gap_target = 1e-8;
  double gap_accept = 1e-7;
  std::size_t max_iterations = 200;
  double boundary_fraction = 0.98;
};

/// Primal-dual predictor-corrector interior-point method with NT scaling.
SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});

std::string status_name(SdpStatus s);

/// SDP whose optimal value is -spectral_norm(a):
///   minimize <C, X>, tr X = 1, with C = -[[0, a], [a*, 0]] / 1.
SdpProblem make_spectral_norm_problem(const ComplexMatrix& a);
/// Convenience: spectral norm of a computed through the SDP route.
struct SdpNormResult {
  double value = 0.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  SdpStatus status = SdpStatus::max_iterations;
};
SdpNormResult spectral_norm_via_sdp(const ComplexMatrix& a);

/// Tiny known-answer instance: maximize tr X on density matrices (value 1).
SdpProblem make_trace_problem(std::size_t dim);

}  // namespace opnormlab::sdp
