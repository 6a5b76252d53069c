#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opnormlab/matrix.hpp"
#include "opnormlab/random.hpp"

namespace opnormlab::cocycle {

using Coords = std::vector<cplx>;

/// Finite-dimensional commutative associative algebra over C in a fixed
/// basis: e_i e_j = sum_k mu[(i*dim + j)*dim + k] e_k. A sparse triple list
/// is kept alongside the dense tensor so products stay fast on monomial
/// algebras.
class FinAlgebra {
 public:
  FinAlgebra(std::size_t dim, std::vector<cplx> mu, std::optional<Coords> unit,
             std::string label);

  std::size_t dim() const { return dim_; }
  const std::string& label() const { return label_; }
  const std::optional<Coords>& unit() const { return unit_; }
  cplx mu_at(std::size_t i, std::size_t j, std::size_t k) const {
    return mu_[(i * dim_ + j) * dim_ + k];
  }
  /// Nonzero products of basis pairs: list of (k, coeff) for e_i e_j.
  const std::vector<std::pair<std::uint32_t, cplx>>& basis_product(std::size_t i,
                                                                   std::size_t j) const {
    return sparse_[i * dim_ + j];
  }

  Coords multiply(const Coords& x, const Coords& y) const;
  Coords power(const Coords& x, unsigned n) const;

  double commutativity_residual() const;
  double associativity_residual() const;

 private:
  std::size_t dim_;
  std::vector<cplx> mu_;
  std::vector<std::vector<std::pair<std::uint32_t, cplx>>> sparse_;
  std::optional<Coords> unit_;
  std::string label_;
};

/// Module over a FinAlgebra with symmetric action (left = right):
/// e_i . f_x = sum_y action[(i*mdim + x)*mdim + y] f_y.
class FinModule {
 public:
  FinModule(std::size_t algebra_dim, std::size_t dim, std::vector<cplx> action);

  std::size_t algebra_dim() const { return adim_; }
  std::size_t dim() const { return mdim_; }
  const std::vector<std::pair<std::uint32_t, cplx>>& basis_action(std::size_t i,
                                                                  std::size_t x) const {
    return sparse_[i * mdim_ + x];
  }

  /// Action of the basis element e_i on a module vector.
  Coords act_basis(std::size_t i, const Coords& v) const;
  /// Action of a general algebra element on a module vector.
  Coords act(const Coords& a, const Coords& v) const;

 private:
  std::size_t adim_;
  std::size_t mdim_;
  std::vector<std::vector<std::pair<std::uint32_t, cplx>>> sparse_;
};

/// Linear map D: A -> X, column i = D(e_i).
struct Derivation {
  ComplexMatrix matrix;  // module_dim x algebra_dim
  Coords apply(const Coords& a) const;
};

/// Max residual of D(e_i e_j) = e_i.D(e_j) + D(e_i).e_j over basis pairs.
double leibniz_residual(const FinAlgebra& a, const FinModule& x, const Derivation& d);

/// 2-cochain F: A x A -> X stored densely on basis pairs.
class Cochain2 {
 public:
  Cochain2(std::size_t algebra_dim, std::size_t module_dim);

  std::size_t algebra_dim() const { return adim_; }
  std::size_t module_dim() const { return mdim_; }
  cplx& at(std::size_t i, std::size_t j, std::size_t x) {
    return values_[(i * adim_ + j) * mdim_ + x];
  }
  const cplx& at(std::size_t i, std::size_t j, std::size_t x) const {
    return values_[(i * adim_ + j) * mdim_ + x];
  }

  /// Value on basis pair (i, j) as a module vector.
  Coords basis_value(std::size_t i, std::size_t j) const;
  /// Bilinear evaluation on general algebra elements.
  Coords eval(const Coords& u, const Coords& v) const;

 private:
  std::size_t adim_;
  std::size_t mdim_;
  std::vector<cplx> values_;
};

/// Hochschild differential residual: max over basis triples (u,v,w) of
/// |u.F(v,w) - F(uv,w) + F(u,vw) - F(u,v).w|.
double cocycle_residual(const Cochain2& f, const FinAlgebra& a, const FinModule& x);
bool cocycle_check(const Cochain2& f, const FinAlgebra& a, const FinModule& x,
                   double tol = 1e-10);

double antisymmetry_residual(const Cochain2& f);
bool antisymmetry_check(const Cochain2& f, double tol = 1e-12);

/// Hochschild coboundary of a 1-cochain psi (module_dim x algebra_dim):
/// (delta psi)(u, v) = u.psi(v) - psi(uv) + psi(u).v.
Cochain2 coboundary(const ComplexMatrix& psi, const FinAlgebra& a, const FinModule& x);

/// Coboundaries of 1-cochains are symmetric when the algebra is commutative
/// and the module action is symmetric; psi is module_dim x algebra_dim.
double coboundary_symmetry_residual(const ComplexMatrix& psi, const FinAlgebra& a,
                                    const FinModule& x);
bool coboundary_symmetry_check(const ComplexMatrix& psi, const FinAlgebra& a,
                               const FinModule& x, double tol = 1e-12);

/// Truncated polynomial system: A = C[z]/(z^N), quotient module
/// X = C[z]/(z^(N-1)), derivation d/dz. Requires N >= 2.
struct TruncatedPoly {
  FinAlgebra algebra;
  FinModule module;
  Derivation derivation;
};
TruncatedPoly truncated_poly(std::size_t n);

FinAlgebra tensor_algebra(const FinAlgebra& a, const FinAlgebra& b);
FinModule tensor_module(const FinModule& x, const FinModule& y);

/// Antisymmetric wedge cocycle on A (x) B with values in X (x) Y:
/// F(a1 (x) b1, a2 (x) b2) = (Da(a1).a2) (x) (b1.Db(b2))
///                         - (a1.Da(a2)) (x) (Db(b1).b2).
Cochain2 wedge_cocycle(const FinAlgebra& a, const FinAlgebra& b, const FinModule& x,
                       const FinModule& y, const Derivation& da, const Derivation& db);

struct Witness {
  Coords a;               // element of A
  Coords b;               // element of B
  Coords value;           // F(a^3 (x) b, a (x) b) in X (x) Y
  double value_norm = 0.0;
  double identity_residual = 0.0;  // against (1/4) Da(a^4) (x) Db(b^2)
};

/// Search basis-sum candidates (unit + t z style grids, then seeded random
/// combinations, at most 1000 pairs) for F(a^3 (x) b, a (x) b) != 0 and
/// cross-check the quarter identity on the hit.
std::optional<Witness> nonvanishing_witness(const FinAlgebra& a, const FinAlgebra& b,
                                            const Derivation& da, const Derivation& db,
                                            const Cochain2& f, std::uint64_t seed = 1);

struct PolarizationReport {
  double max_pair_residual = 0.0;     // ab vs quarter difference of squares
  double max_quartic_residual = 0.0;  // x^2 y^2 vs 1/24 fourth-power sum
  std::size_t samples = 0;
  bool ok = false;
};
PolarizationReport polarization_check(const FinAlgebra& a, std::uint64_t seed,
                                      std::size_t samples = 1000, double tol = 1e-10);

struct SpanReport {
  std::size_t dim = 0;
  std::size_t rank_pair_products = 0;   // span of e_i e_j
  std::size_t rank_squares = 0;         // span of u^2, u in the degree-2 sample
  std::size_t rank_quad_products = 0;   // span of e_i e_j e_k e_l
  std::size_t rank_square_pairs = 0;    // span of u^2 v^2
  std::size_t rank_fourth_powers = 0;   // span of w^4, w in the degree-4 sample
  bool pair_equal = false;
  bool quartic_equal = false;
};
/// Exact span comparisons through polarization-closed sample families.
SpanReport power_span_check(const FinAlgebra& a);

}  // namespace opnormlab::cocycle
