#include <doctest.h>

#include <cmath>
#include <vector>

#include "opnormlab/json_io.hpp"
#include "opnormlab/linalg.hpp"
#include "opnormlab/matrix.hpp"
#include "opnormlab/random.hpp"
#include "opnormlab/sdp.hpp"

using namespace opnormlab;

namespace {

void check_certificate(const sdp::SdpSolution& sol) {
  REQUIRE(sol.status == sdp::SdpStatus::optimal);
  CHECK(sol.relative_gap <= 1e-7);
  CHECK(sol.primal_residual <= 1e-7);
  // weak duality for the minimization form
  CHECK(sol.dual_value <= sol.primal_value + 1e-6);
  CHECK(std::abs(sol.primal_value - sol.dual_value) / (1.0 + std::abs(sol.primal_value)) <= 1e-7);
  for (const ComplexMatrix& x : sol.primal_blocks) {
    const auto eig = linalg::hermitian_eig(x);
    CHECK(eig.eigenvalues.front() >= -1e-9);
  }
}

sdp::SdpProblem scaled_objective(const sdp::SdpProblem& p, double s) {
  sdp::SdpProblem q(p.block_dims());
  std::vector<ComplexMatrix> obj = p.objective();
  for (ComplexMatrix& c : obj) c *= cplx(s);
  q.set_objective(std::move(obj));
  for (const auto& con : p.constraints()) q.add_constraint(con.blocks, con.rhs);
  return q;
}

}  // namespace

TEST_CASE("trace problem pins the objective to one") {
  // maximize tr X on 2x2 density matrices, posed as minimize <-I, X>
  const auto sol = sdp::solve(sdp::make_trace_problem(2));
  check_certificate(sol);
  CHECK(sol.primal_value == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("spectral norm SDP reproduces the diag(3,4) epigraph value") {
  // the epigraph program min t s.t. [[tI, A], [A*, tI]] >= 0 has value 4 for
  // A = diag(3,4); the solved trace-normalized problem is its exact dual pair
  const ComplexMatrix a = ComplexMatrix::diag({cplx(3.0), cplx(4.0)});
  const auto r = sdp::spectral_norm_via_sdp(a);
  REQUIRE(r.status == sdp::SdpStatus::optimal);
  CHECK(r.value == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(r.gap <= 1e-7);

  const auto sol = sdp::solve(sdp::make_spectral_norm_problem(a));
  check_certificate(sol);
  CHECK(-sol.primal_value == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(-sol.dual_value == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("spectral norm SDP matches the SVD on seeded matrices") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const ComplexMatrix a = random_matrix(rng, 4, 4);
    const auto r = sdp::spectral_norm_via_sdp(a);
    REQUIRE(r.status == sdp::SdpStatus::optimal);
    CHECK(r.value == doctest::Approx(linalg::spectral_norm(a)).epsilon(1e-6));
  }
  // rectangular blocks go through the same bordered matrix
  const ComplexMatrix b = random_matrix(rng, 3, 5);
  CHECK(sdp::spectral_norm_via_sdp(b).value ==
        doctest::Approx(linalg::spectral_norm(b)).epsilon(1e-6));
}

TEST_CASE("objective scaling scales the optimal value") {
  Rng rng(32);
  const ComplexMatrix a = random_matrix(rng, 3, 3);
  const auto base = sdp::solve(sdp::make_spectral_norm_problem(a));
  check_certificate(base);
  for (double s : {2.0, 10.0}) {
    const auto scaled = sdp::solve(scaled_objective(sdp::make_spectral_norm_problem(a), s));
    check_certificate(scaled);
    CHECK(scaled.primal_value ==
          doctest::Approx(s * base.primal_value).epsilon(1e-7));
  }
}

TEST_CASE("contradictory constraints are reported, not solved") {
  // X00 = 2 cannot hold alongside tr X = 1 on a PSD 2x2 block
  sdp::SdpProblem p({2});
  p.set_objective({ComplexMatrix::identity(2)});
  ComplexMatrix e00(2, 2);
  e00(0, 0) = 1.0;
  p.add_constraint({e00}, 2.0);
  p.add_constraint({ComplexMatrix::identity(2)}, 1.0);
  const auto sol = sdp::solve(p);
  CHECK(sol.status != sdp::SdpStatus::optimal);
  CHECK(sol.status == sdp::SdpStatus::infeasible_suspected);
}

TEST_CASE("dependent constraints are flagged and still solved") {
  sdp::SdpProblem p({2});
  ComplexMatrix c(2, 2);
  c(0, 0) = -1.0;
  c(1, 1) = -1.0;
  p.set_objective({c});
  p.add_constraint({ComplexMatrix::identity(2)}, 1.0);
  p.add_constraint({ComplexMatrix::identity(2)}, 1.0);  // duplicate row
  const auto sol = sdp::solve(p);
  REQUIRE(sol.status == sdp::SdpStatus::optimal);
  CHECK(sol.constraints_dependent);
  CHECK(sol.primal_value == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("problem validation") {
  sdp::SdpProblem p({2});
  p.set_objective({ComplexMatrix::identity(2)});
  CHECK_THROWS_AS(sdp::solve(p), ShapeError);  // no constraints

  // grossly non-Hermitian block is rejected
  ComplexMatrix skew(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(p.set_objective({skew}), ShapeError);

  // a tiny Hermiticity violation is symmetrized away
  ComplexMatrix nearly = ComplexMatrix::identity(2);
  nearly(0, 1) = cplx(0.0, 1e-14);
  CHECK_NOTHROW(p.set_objective({nearly}));
  CHECK(p.objective()[0].is_hermitian(0.0));

  CHECK_THROWS_AS(p.add_constraint({ComplexMatrix::identity(3)}, 1.0), ShapeError);
  CHECK_THROWS_AS(sdp::SdpProblem({0}), ShapeError);
}

TEST_CASE("multi-block problems couple through shared constraints") {
  // minimize tr X1 subject to tr X0 + tr X1 = 2, tr X0 = 1; forces tr X1 = 1
  sdp::SdpProblem p({2, 3});
  ComplexMatrix zero2(2, 2);
  p.set_objective({zero2, ComplexMatrix::identity(3)});
  p.add_constraint({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}, 2.0);
  p.add_constraint({ComplexMatrix::identity(2), ComplexMatrix(3, 3)}, 1.0);
  const auto sol = sdp::solve(p);
  check_certificate(sol);
  CHECK(sol.primal_value == doctest::Approx(1.0).epsilon(1e-7));
  REQUIRE(sol.primal_blocks.size() == 2);
  CHECK(std::abs(sol.primal_blocks[0].trace() - cplx(1.0)) <= 1e-6);
  CHECK(std::abs(sol.primal_blocks[1].trace() - cplx(1.0)) <= 1e-6);
}

TEST_CASE("deterministic across repeated solves") {
  Rng rng(33);
  const ComplexMatrix a = random_matrix(rng, 3, 3);
  const auto s1 = sdp::solve(sdp::make_spectral_norm_problem(a));
  const auto s2 = sdp::solve(sdp::make_spectral_norm_problem(a));
  CHECK(s1.primal_value == s2.primal_value);
  CHECK(s1.dual_value == s2.dual_value);
  CHECK(s1.iterations == s2.iterations);
}

TEST_CASE("problem and solution JSON round trips") {
  Rng rng(34);
  const ComplexMatrix a = random_matrix(rng, 3, 3);
  const sdp::SdpProblem p = sdp::make_spectral_norm_problem(a);
  const sdp::SdpProblem q = json_io::problem_from_json(json_io::problem_to_json(p));
  REQUIRE(q.block_dims() == p.block_dims());
  REQUIRE(q.constraints().size() == p.constraints().size());
  for (std::size_t k = 0; k < p.objective().size(); ++k)
    CHECK(q.objective()[k].approx_equal(p.objective()[k], 0.0));

  const auto sol_p = sdp::solve(p);
  const auto sol_q = sdp::solve(q);
  CHECK(sol_p.primal_value == sol_q.primal_value);

  const sdp::SdpSolution back = json_io::solution_from_json(json_io::solution_to_json(sol_p));
  CHECK(back.status == sol_p.status);
  CHECK(back.primal_value == sol_p.primal_value);
  CHECK(back.dual_value == sol_p.dual_value);
  CHECK(back.iterations == sol_p.iterations);
  CHECK(back.constraints_dependent == sol_p.constraints_dependent);
  REQUIRE(back.primal_blocks.size() == sol_p.primal_blocks.size());
  for (std::size_t k = 0; k < back.primal_blocks.size(); ++k)
    CHECK(back.primal_blocks[k].approx_equal(sol_p.primal_blocks[k], 0.0));
  CHECK(back.dual_vector == sol_p.dual_vector);
}

TEST_CASE("status names are stable identifiers") {
  CHECK(sdp::status_name(sdp::SdpStatus::optimal) == "optimal");
  CHECK(sdp::status_name(sdp::SdpStatus::max_iterations) == "max_iterations");
  CHECK(sdp::status_name(sdp::SdpStatus::infeasible_suspected) == "infeasible_suspected");
}
