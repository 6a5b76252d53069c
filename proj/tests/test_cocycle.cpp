#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "opnormlab/cocycle.hpp"
#include "opnormlab/linalg.hpp"
#include "opnormlab/matrix.hpp"
#include "opnormlab/random.hpp"

using namespace opnormlab;
using cocycle::Cochain2;
using cocycle::Coords;
using cocycle::FinAlgebra;
using cocycle::FinModule;

namespace {

double coords_norm(const Coords& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double cochain_frobenius(const Cochain2& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.algebra_dim(); ++i)
    for (std::size_t j = 0; j < f.algebra_dim(); ++j)
      for (std::size_t x = 0; x < f.module_dim(); ++x) s += std::norm(f.at(i, j, x));
  return std::sqrt(s);
}

Cochain2 cochain_difference(const Cochain2& f, const Cochain2& g) {
  Cochain2 d(f.algebra_dim(), f.module_dim());
  for (std::size_t i = 0; i < f.algebra_dim(); ++i)
    for (std::size_t j = 0; j < f.algebra_dim(); ++j)
      for (std::size_t x = 0; x < f.module_dim(); ++x)
        d.at(i, j, x) = f.at(i, j, x) - g.at(i, j, x);
  return d;
}

// The augmentation ideal z C[z]/z^N: non-unital, basis z..z^(N-1), used to
// exercise the span ranks away from full dimension.
FinAlgebra augmentation_ideal(std::size_t n) {
  const std::size_t dim = n - 1;  // degrees 1..n-1
  std::vector<cplx> mu(dim * dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t deg = i + j + 2;
      if (deg <= dim) mu[(i * dim + j) * dim + (deg - 1)] = 1.0;
    }
  return FinAlgebra(dim, std::move(mu), std::nullopt, "aug-ideal");
}

}  // namespace

TEST_CASE("truncated polynomial system ships exact structure") {
  for (std::size_t n : {2u, 3u, 4u, 6u, 8u}) {
    const auto sys = cocycle::truncated_poly(n);
    CHECK(sys.algebra.dim() == n);
    CHECK(sys.module.dim() == n - 1);
    CHECK(sys.algebra.commutativity_residual() == 0.0);
    CHECK(sys.algebra.associativity_residual() == 0.0);
    CHECK(cocycle::leibniz_residual(sys.algebra, sys.module, sys.derivation) == 0.0);
    REQUIRE(sys.algebra.unit().has_value());
    CHECK((*sys.algebra.unit())[0] == cplx(1.0));
  }
  CHECK_THROWS_AS(cocycle::truncated_poly(1), ShapeError);
  CHECK_THROWS_AS(cocycle::truncated_poly(0), ShapeError);
}

TEST_CASE("derivative and products on pinned small degrees") {
  const auto sys = cocycle::truncated_poly(3);

  // D(z^2) = 2z, and the Leibniz route z.D(z) + D(z).z gives the same vector
  Coords z2(3, 0.0);
  z2[2] = 1.0;
  const Coords dz2 = sys.derivation.apply(z2);
  CHECK(dz2[0] == cplx(0.0));
  CHECK(dz2[1] == cplx(2.0));

  Coords z(3, 0.0);
  z[1] = 1.0;
  const Coords dz = sys.derivation.apply(z);
  Coords leibniz = sys.module.act(z, dz);
  const Coords other = sys.module.act(z, dz);
  for (std::size_t k = 0; k < leibniz.size(); ++k) leibniz[k] += other[k];
  for (std::size_t k = 0; k < leibniz.size(); ++k) CHECK(leibniz[k] == dz2[k]);

  CHECK(dz[0] == cplx(1.0));  // D(z) = 1, the derivation is nonzero

  // N = 4: z^2 * z^2 = 0 in A and D kills it too
  const auto sys4 = cocycle::truncated_poly(4);
  Coords w2(4, 0.0);
  w2[2] = 1.0;
  const Coords sq = sys4.algebra.multiply(w2, w2);
  CHECK(coords_norm(sq) == 0.0);
  CHECK(coords_norm(sys4.derivation.apply(sq)) == 0.0);

  // powers through the unit: (1 + z)^2 = 1 + 2z + z^2
  Coords one_z(4, 0.0);
  one_z[0] = 1.0;
  one_z[1] = 1.0;
  const Coords p2 = sys4.algebra.power(one_z, 2);
  CHECK(p2[0] == cplx(1.0));
  CHECK(p2[1] == cplx(2.0));
  CHECK(p2[2] == cplx(1.0));
  CHECK(p2[3] == cplx(0.0));
}

TEST_CASE("algebra validation rejects a false unit") {
  std::vector<cplx> mu(8, 0.0);  // 2-dim: e0 e0 = e0, everything else 0
  mu[(0 * 2 + 0) * 2 + 0] = 1.0;
  Coords not_unit = {cplx(1.0), cplx(0.0)};  // e0 does not fix e1
  CHECK_THROWS_AS(FinAlgebra(2, mu, not_unit, "bad"), ShapeError);
  CHECK_NOTHROW(FinAlgebra(2, mu, std::nullopt, "fine"));
}

TEST_CASE("wedge cocycle reproduces the two-variable example") {
  // A = C[w]/w^4, B = C[z]/z^3; on f1 = w (x) 1 and f2 = 1 (x) z the wedge
  // evaluates to dw/dw . dz/dz = 1 (x) 1
  const auto pa = cocycle::truncated_poly(4);
  const auto pb = cocycle::truncated_poly(3);
  const Cochain2 f = cocycle::wedge_cocycle(pa.algebra, pb.algebra, pa.module, pb.module,
                                            pa.derivation, pb.derivation);

  const std::size_t db = pb.algebra.dim();
  const std::size_t my = pb.module.dim();
  const std::size_t iw = 1 * db + 0;  // w (x) 1
  const std::size_t jz = 0 * db + 1;  // 1 (x) z
  const Coords val = f.basis_value(iw, jz);
  for (std::size_t r = 0; r < pa.module.dim(); ++r)
    for (std::size_t s = 0; s < my; ++s)
      CHECK(val[r * my + s] == (r == 0 && s == 0 ? cplx(1.0) : cplx(0.0)));

  // and the mirrored arguments flip the sign
  const Coords mirrored = f.basis_value(jz, iw);
  CHECK(mirrored[0] == cplx(-1.0));
}

TEST_CASE("wedge output is an antisymmetric cocycle across degrees") {
  for (std::size_t n : {3u, 4u, 5u}) {
    const auto sys = cocycle::truncated_poly(n);
    const FinAlgebra ab = cocycle::tensor_algebra(sys.algebra, sys.algebra);
    const FinModule xy = cocycle::tensor_module(sys.module, sys.module);
    const Cochain2 f = cocycle::wedge_cocycle(sys.algebra, sys.algebra, sys.module,
                                              sys.module, sys.derivation, sys.derivation);
    CHECK(cocycle::cocycle_residual(f, ab, xy) == 0.0);
    CHECK(cocycle::antisymmetry_residual(f) == 0.0);
    CHECK(cocycle::cocycle_check(f, ab, xy));
    CHECK(cocycle::antisymmetry_check(f));
  }

  // mixed degrees exercise the rectangular tensor bookkeeping
  const auto pa = cocycle::truncated_poly(4);
  const auto pb = cocycle::truncated_poly(3);
  const FinAlgebra ab = cocycle::tensor_algebra(pa.algebra, pb.algebra);
  const FinModule xy = cocycle::tensor_module(pa.module, pb.module);
  const Cochain2 f = cocycle::wedge_cocycle(pa.algebra, pb.algebra, pa.module, pb.module,
                                            pa.derivation, pb.derivation);
  CHECK(cocycle::cocycle_check(f, ab, xy));
  CHECK(cocycle::antisymmetry_check(f));
}

TEST_CASE("wedge vanishes on the diagonal and for zero derivations") {
  const auto sys = cocycle::truncated_poly(4);
  const Cochain2 f = cocycle::wedge_cocycle(sys.algebra, sys.algebra, sys.module,
                                            sys.module, sys.derivation, sys.derivation);
  Rng rng(81);
  const std::size_t dim = sys.algebra.dim() * sys.algebra.dim();
  for (int trial = 0; trial < 10; ++trial) {
    Coords u(dim);
    for (cplx& z : u) z = rng.cnormal();
    CHECK(coords_norm(f.eval(u, u)) <= 1e-12 * (1.0 + coords_norm(u)));
  }

  cocycle::Derivation zero;
  zero.matrix = ComplexMatrix(sys.module.dim(), sys.algebra.dim());
  const Cochain2 f0 = cocycle::wedge_cocycle(sys.algebra, sys.algebra, sys.module,
                                             sys.module, zero, sys.derivation);
  CHECK(cochain_frobenius(f0) == 0.0);
  CHECK(!cocycle::nonvanishing_witness(sys.algebra, sys.algebra, zero, sys.derivation, f0)
             .has_value());
}

TEST_CASE("coboundaries are symmetric cocycles") {
  const auto sys = cocycle::truncated_poly(4);
  const FinAlgebra ab = cocycle::tensor_algebra(sys.algebra, sys.algebra);
  const FinModule xy = cocycle::tensor_module(sys.module, sys.module);
  Rng rng(82);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix psi = random_matrix(rng, xy.dim(), ab.dim());
    CHECK(cocycle::coboundary_symmetry_residual(psi, ab, xy) <= 1e-12);
    CHECK(cocycle::coboundary_symmetry_check(psi, ab, xy));
    const Cochain2 dpsi = cocycle::coboundary(psi, ab, xy);
    CHECK(cocycle::cocycle_check(dpsi, ab, xy, 1e-9));
  }
}

TEST_CASE("an antisymmetric nonzero cocycle stays away from every coboundary") {
  const auto sys = cocycle::truncated_poly(4);
  const FinAlgebra ab = cocycle::tensor_algebra(sys.algebra, sys.algebra);
  const FinModule xy = cocycle::tensor_module(sys.module, sys.module);
  const Cochain2 f = cocycle::wedge_cocycle(sys.algebra, sys.algebra, sys.module,
                                            sys.module, sys.derivation, sys.derivation);
  const double fnorm = cochain_frobenius(f);
  REQUIRE(fnorm > 0.0);

  // the antisymmetric part of any coboundary vanishes, so |F - dpsi| >= |F|
  Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix psi = random_matrix(rng, xy.dim(), ab.dim());
    psi *= cplx(double(trial));  // include psi = 0 and growing magnitudes
    const Cochain2 dpsi = cocycle::coboundary(psi, ab, xy);
    CHECK(cochain_frobenius(cochain_difference(f, dpsi)) >= fnorm * (1.0 - 1e-9));
  }
}

TEST_CASE("nonvanishing witness and the quarter identity") {
  for (std::size_t n : {3u, 4u, 6u}) {
    const auto sys = cocycle::truncated_poly(n);
    const Cochain2 f = cocycle::wedge_cocycle(sys.algebra, sys.algebra, sys.module,
                                              sys.module, sys.derivation, sys.derivation);
    const auto w = cocycle::nonvanishing_witness(sys.algebra, sys.algebra, sys.derivation,
                                                 sys.derivation, f);
    REQUIRE(w.has_value());
    CHECK(w->value_norm > 1e-8);
    CHECK(w->identity_residual <= 1e-10);
    // value_norm reports the sup norm of the value coordinates
    double sup = 0.0;
    for (const cplx& z : w->value) sup = std::max(sup, std::abs(z));
    CHECK(sup == w->value_norm);

    // the grid search hits the unital witness a = b = 1 + z first
    REQUIRE(w->a.size() == n);
    CHECK(w->a[0] == cplx(1.0));
    CHECK(w->a[1] == cplx(1.0));
    for (std::size_t k = 2; k < n; ++k) CHECK(w->a[k] == cplx(0.0));
    CHECK(w->b == w->a);
  }
}

TEST_CASE("mixed-degree witness matches the partial derivative formula") {
  // A = C[w]/w^5, B = C[z]/z^4, a = 1 + w, b = 1 + z. With F the wedge of
  // d/dw and d/dz, F(a^3 (x) b, a (x) b) = (1/4) D(a^4) (x) D(b^2); both are
  // computed on independent code paths and must agree to 1e-10.
  const auto pa = cocycle::truncated_poly(5);
  const auto pb = cocycle::truncated_poly(4);
  const Cochain2 f = cocycle::wedge_cocycle(pa.algebra, pb.algebra, pa.module, pb.module,
                                            pa.derivation, pb.derivation);
  const auto w = cocycle::nonvanishing_witness(pa.algebra, pb.algebra, pa.derivation,
                                               pb.derivation, f);
  REQUIRE(w.has_value());
  CHECK(w->identity_residual <= 1e-10);

  // independent check of the right side: D(a^4) = 4(1+w)^3 truncated, D(b^2) =
  // 2(1+z); the witness value must equal their outer product over 4
  const Coords da4 = pa.derivation.apply(pa.algebra.power(w->a, 4));
  const Coords db2 = pb.derivation.apply(pb.algebra.power(w->b, 2));
  const std::size_t my = pb.module.dim();
  double residual = 0.0;
  for (std::size_t r = 0; r < pa.module.dim(); ++r)
    for (std::size_t s = 0; s < my; ++s)
      residual = std::max(residual,
                          std::abs(w->value[r * my + s] - 0.25 * da4[r] * db2[s]));
  CHECK(residual <= 1e-10);
}

TEST_CASE("polarization identities hold on shipped algebras") {
  for (std::size_t n : {2u, 4u, 6u}) {
    const auto sys = cocycle::truncated_poly(n);
    const auto rep = cocycle::polarization_check(sys.algebra, 19 + n, 400);
    CHECK(rep.ok);
    CHECK(rep.samples == 400);
    CHECK(rep.max_pair_residual <= 1e-10);
    CHECK(rep.max_quartic_residual <= 1e-10);
  }

  const auto sys = cocycle::truncated_poly(3);
  const FinAlgebra ab = cocycle::tensor_algebra(sys.algebra, sys.algebra);
  CHECK(cocycle::polarization_check(ab, 7, 200).ok);
  CHECK(cocycle::polarization_check(augmentation_ideal(5), 11, 200).ok);
}

TEST_CASE("power span ranks on unital truncations are full") {
  for (std::size_t n : {3u, 5u, 7u}) {
    const auto sys = cocycle::truncated_poly(n);
    const auto rep = cocycle::power_span_check(sys.algebra);
    CHECK(rep.dim == n);
    // squares of 1 + t z sums reach every monomial degree
    CHECK(rep.rank_pair_products == n);
    CHECK(rep.rank_squares == n);
    CHECK(rep.rank_quad_products == n);
    CHECK(rep.rank_square_pairs == n);
    CHECK(rep.rank_fourth_powers == n);
    CHECK(rep.pair_equal);
    CHECK(rep.quartic_equal);
  }
}

TEST_CASE("power span ranks follow the grading on the augmentation ideal") {
  // in z C[z]/z^6 (basis z..z^5): products span z^2..z^5, fourth powers z^4..z^5
  const auto rep = cocycle::power_span_check(augmentation_ideal(6));
  CHECK(rep.dim == 5);
  CHECK(rep.rank_pair_products == 4);
  CHECK(rep.rank_squares == 4);
  CHECK(rep.rank_quad_products == 2);
  CHECK(rep.rank_square_pairs == 2);
  CHECK(rep.rank_fourth_powers == 2);
  CHECK(rep.pair_equal);
  CHECK(rep.quartic_equal);
}

TEST_CASE("span rank agrees with an SVD rank oracle on a small case") {
  // rebuild the squares sample for N = 4 exactly as the span check samples it
  // and rank it through the SVD instead of Gram-Schmidt
  const auto sys = cocycle::truncated_poly(4);
  const std::size_t dim = sys.algebra.dim();
  std::vector<Coords> sample;
  std::vector<Coords> seeds;
  for (std::size_t i = 0; i < dim; ++i) {
    Coords e(dim, 0.0);
    e[i] = 1.0;
    seeds.push_back(e);
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      for (const cplx s : {cplx(1.0), cplx(-1.0), cplx(0.0, 1.0), cplx(0.0, -1.0)}) {
        Coords e(dim, 0.0);
        e[i] = 1.0;
        e[j] = s;
        seeds.push_back(e);
      }
  for (const Coords& u : seeds) sample.push_back(sys.algebra.multiply(u, u));

  ComplexMatrix m(dim, sample.size());
  for (std::size_t c = 0; c < sample.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = sample[c][r];
  const auto f = linalg::svd(m);
  std::size_t svd_rank = 0;
  for (double s : f.singular_values)
    if (s > 1e-9 * (1.0 + f.singular_values.front())) ++svd_rank;

  CHECK(cocycle::power_span_check(sys.algebra).rank_squares == svd_rank);
}

TEST_CASE("tensor constructions validate and label") {
  const auto a = cocycle::truncated_poly(3);
  const auto b = cocycle::truncated_poly(4);
  const FinAlgebra ab = cocycle::tensor_algebra(a.algebra, b.algebra);
  CHECK(ab.dim() == 12);
  CHECK(ab.label() == "trunc-poly-3 (x) trunc-poly-4");
  CHECK(ab.commutativity_residual() == 0.0);
  CHECK(ab.associativity_residual() == 0.0);
  REQUIRE(ab.unit().has_value());

  const auto big = cocycle::truncated_poly(9);
  CHECK_THROWS_AS(cocycle::tensor_algebra(big.algebra, big.algebra), SizeError);

  const auto guard = cocycle::power_span_check(ab);  // 12 <= 16, inside the guard
  CHECK(guard.dim == 12);
  const auto big2 = cocycle::tensor_algebra(a.algebra, cocycle::truncated_poly(6).algebra);
  CHECK_THROWS_AS(cocycle::power_span_check(big2), SizeError);
}

TEST_CASE("cochain eval is bilinear") {
  const auto sys = cocycle::truncated_poly(3);
  const FinAlgebra ab = cocycle::tensor_algebra(sys.algebra, sys.algebra);
  const Cochain2 f = cocycle::wedge_cocycle(sys.algebra, sys.algebra, sys.module,
                                            sys.module, sys.derivation, sys.derivation);
  Rng rng(84);
  const std::size_t dim = ab.dim();
  Coords u(dim), v(dim), w(dim);
  for (cplx& z : u) z = rng.cnormal();
  for (cplx& z : v) z = rng.cnormal();
  for (cplx& z : w) z = rng.cnormal();
  const cplx alpha(0.7, -0.3);

  Coords uav(dim);
  for (std::size_t k = 0; k < dim; ++k) uav[k] = u[k] + alpha * v[k];
  const Coords lhs = f.eval(uav, w);
  const Coords fu = f.eval(u, w);
  const Coords fv = f.eval(v, w);
  double residual = 0.0;
  for (std::size_t k = 0; k < lhs.size(); ++k)
    residual = std::max(residual, std::abs(lhs[k] - fu[k] - alpha * fv[k]));
  CHECK(residual <= 1e-12 * (1.0 + coords_norm(lhs)));
}
