#include "opnormlab/superop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opnormlab/random.hpp"

namespace opnormlab::superop {

namespace {

using linalg::kron;
using linalg::Schatten;
using linalg::schatten_norm;
using linalg::spectral_norm;
using linalg::svd;
using linalg::SvdResult;

/// Partial isometry U V* from the economy SVD; the Schatten-inf dual sign.
ComplexMatrix polar_sign(const ComplexMatrix& m) {
  const SvdResult d = svd(m);
  return d.u * d.v.adjoint();
}

/// Top singular dyad u1 v1*; the Schatten-1 unit witness.
ComplexMatrix top_dyad(const ComplexMatrix& m) {
  const SvdResult d = svd(m);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = d.u(i, 0) * std::conj(d.v(j, 0));
  return out;
}

}  // namespace

Superoperator::Superoperator(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw ShapeError("superoperator needs at least one kraus pair");
  const auto& first = pairs_.front();
  if (first.first.empty() || first.second.empty())
    throw ShapeError("kraus factors must be nonempty");
  for (const auto& [a, b] : pairs_) {
    if (a.rows() != first.first.rows() || a.cols() != first.first.cols() ||
        b.rows() != first.second.rows() || b.cols() != first.second.cols())
      throw ShapeError("kraus pairs must have uniform shapes");
  }
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& c) const {
  if (c.rows() != in_rows() || c.cols() != in_cols())
    throw ShapeError("superoperator input shape mismatch");
  ComplexMatrix out(out_rows(), out_cols());
  for (const auto& [a, b] : pairs_) out += a * c * b;
  return out;
}

ComplexMatrix Superoperator::matrix_rep() const {
  ComplexMatrix rep = kron(pairs_.front().first, pairs_.front().second.transpose());
  for (std::size_t i = 1; i < pairs_.size(); ++i)
    rep += kron(pairs_[i].first, pairs_[i].second.transpose());
  return rep;
}

double s2_norm(const Superoperator& phi) { return spectral_norm(phi.matrix_rep()); }

Superoperator adjoint(const Superoperator& phi) {
  std::vector<Superoperator::Pair> out;
  out.reserve(phi.pairs().size());
  for (const auto& [a, b] : phi.pairs()) out.emplace_back(a.adjoint(), b.adjoint());
  return Superoperator(std::move(out));
}

Superoperator from_element(const tensornorm::TensorElement& u) {
  std::vector<Superoperator::Pair> out;
  out.reserve(u.pair_count());
  for (const auto& [a, b] : u.pairs()) out.emplace_back(a, b.transpose());
  return Superoperator(std::move(out));
}

Superoperator identity_map(std::size_t d) {
  if (d == 0) throw ShapeError("identity_map needs positive dimension");
  return Superoperator({{ComplexMatrix::identity(d), ComplexMatrix::identity(d)}});
}

Superoperator transpose_map(std::size_t d) {
  if (d == 0) throw ShapeError("transpose_map needs positive dimension");
  std::vector<Superoperator::Pair> pairs;
  pairs.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ComplexMatrix e(d, d);
      e(i, j) = 1.0;
      pairs.emplace_back(e, e);
    }
  return Superoperator(std::move(pairs));
}

Superoperator conjugation_map(const ComplexMatrix& u) {
  if (u.empty()) throw ShapeError("conjugation_map needs a nonempty matrix");
  return Superoperator({{u, u.adjoint()}});
}

Superoperator tensor_with_identity(const Superoperator& phi, std::size_t d) {
  if (d == 0) throw ShapeError("tensor_with_identity needs positive dimension");
  const ComplexMatrix eye = ComplexMatrix::identity(d);
  std::vector<Superoperator::Pair> out;
  out.reserve(phi.pairs().size());
  for (const auto& [a, b] : phi.pairs()) out.emplace_back(kron(a, eye), kron(b, eye));
  return Superoperator(std::move(out));
}

Superoperator transpose_sandwich(const Superoperator& phi) {
  if (!phi.square_legs())
    throw ShapeError("transpose_sandwich requires square input and output legs");
  std::vector<Superoperator::Pair> out;
  out.reserve(phi.pairs().size());
  for (const auto& [a, b] : phi.pairs()) out.emplace_back(b.transpose(), a.transpose());
  return Superoperator(std::move(out));
}

ComplexMatrix choi(const Superoperator& phi) {
  if (!phi.square_legs()) throw ShapeError("choi requires square input and output legs");
  const std::size_t din = phi.in_rows();
  const std::size_t dout = phi.out_rows();
  linalg::check_cap(din * dout, din * dout, "choi");
  ComplexMatrix j(din * dout, din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t jcol = 0; jcol < din; ++jcol) {
      ComplexMatrix e(din, din);
      e(i, jcol) = 1.0;
      const ComplexMatrix img = phi.apply(e);
      for (std::size_t k = 0; k < dout; ++k)
        for (std::size_t l = 0; l < dout; ++l) j(i * dout + k, jcol * dout + l) = img(k, l);
    }
  return j;
}

Superoperator kraus_from_choi(const ComplexMatrix& j, std::size_t d_in, std::size_t d_out) {
  if (j.rows() != d_in * d_out || j.cols() != d_in * d_out)
    throw ShapeError("choi matrix has wrong dimensions");
  // Reshuffle to R[(k,i),(l,j)] = J[(i,k),(j,l)]; rank-one terms of R are
  // exactly the vec(a) vec(b^T)^T dyads of a kraus pair.
  const std::size_t dd = d_in * d_out;
  ComplexMatrix r(dd, dd);
  for (std::size_t i = 0; i < d_in; ++i)
    for (std::size_t k = 0; k < d_out; ++k)
      for (std::size_t jj = 0; jj < d_in; ++jj)
        for (std::size_t l = 0; l < d_out; ++l)
          r(k * d_in + i, l * d_in + jj) = j(i * d_out + k, jj * d_out + l);

  const SvdResult dec = svd(r);
  const double cutoff = dec.singular_values.front() * 1e-14;
  std::vector<Superoperator::Pair> pairs;
  for (std::size_t t = 0; t < dec.singular_values.size(); ++t) {
    const double s = dec.singular_values[t];
    if (s <= cutoff || s == 0.0) break;
    ComplexMatrix a(d_out, d_in);
    ComplexMatrix bt(d_out, d_in);
    for (std::size_t k = 0; k < d_out; ++k)
      for (std::size_t i = 0; i < d_in; ++i) {
        a(k, i) = s * dec.u(k * d_in + i, t);
        bt(k, i) = std::conj(dec.v(k * d_in + i, t));
      }
    pairs.emplace_back(std::move(a), bt.transpose());
  }
  if (pairs.empty())
    pairs.emplace_back(ComplexMatrix(d_out, d_in), ComplexMatrix(d_in, d_out));
  return Superoperator(std::move(pairs));
}

double schatten_induced_lower(const Superoperator& phi, Schatten p,
                              const SeesawOptions& options) {
  const Superoperator phi_adj = adjoint(phi);
  Rng root(options.seed);
  double best = 0.0;
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng = root.child("seesaw-restart-" + std::to_string(r));
    ComplexMatrix c = random_matrix(rng, phi.in_rows(), phi.in_cols());
    const double cn = schatten_norm(c, p);
    if (cn == 0.0) continue;
    c *= cplx(1.0 / cn, 0.0);

    double value = schatten_norm(phi.apply(c), p);
    for (std::size_t it = 0; it < options.iterations; ++it) {
      const ComplexMatrix img = phi.apply(c);
      if (img.frobenius_norm() == 0.0) break;
      ComplexMatrix d;
      switch (p) {
        case Schatten::one:
          d = polar_sign(img);
          break;
        case Schatten::inf:
          d = top_dyad(img);
          break;
        case Schatten::two:
          d = img * cplx(1.0 / img.frobenius_norm(), 0.0);
          break;
      }
      const ComplexMatrix back = phi_adj.apply(d);
      if (back.frobenius_norm() == 0.0) break;
      switch (p) {
        case Schatten::one:
          c = top_dyad(back);
          break;
        case Schatten::inf:
          c = polar_sign(back);
          break;
        case Schatten::two:
          c = back * cplx(1.0 / back.frobenius_norm(), 0.0);
          break;
      }
      const double next = schatten_norm(phi.apply(c), p);
      if (next <= value * (1.0 + 1e-13)) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }
    best = std::max(best, value);
  }
  return best;
}

InterpolationReport interpolation_check(const Superoperator& phi, const SeesawOptions& options) {
  InterpolationReport rep;
  rep.restarts = std::max<std::size_t>(1, options.restarts);
  rep.s2 = s2_norm(phi);
  rep.lower1 = schatten_induced_lower(phi, Schatten::one, options);
  rep.lower_inf = schatten_induced_lower(phi, Schatten::inf, options);
  rep.rt_bound_holds = rep.s2 * rep.s2 <= rep.lower1 * rep.lower_inf + 1e-6;
  if (rep.rt_bound_holds)
    rep.verdict = InterpolationVerdict::holds;
  else if (rep.restarts < kInterpolationRestartCap)
    rep.verdict = InterpolationVerdict::inconclusive;
  else
    rep.verdict = InterpolationVerdict::failed;
  return rep;
}

sdp::SdpProblem make_diamond_problem(const ComplexMatrix& choi_matrix, std::size_t d_in,
                                     std::size_t d_out) {
  const std::size_t dd = d_in * d_out;
  if (choi_matrix.rows() != dd || choi_matrix.cols() != dd)
    throw ShapeError("choi matrix has wrong dimensions");
  const std::size_t n = 2 * dd;
  linalg::check_cap(n, n, "diamond sdp block");

  sdp::SdpProblem prob({n});

  // C = -(1/2) [[0, J], [J*, 0]]: the objective <C, Z> equals -Re tr(J* X).
  ComplexMatrix obj(n, n);
  for (std::size_t r = 0; r < dd; ++r)
    for (std::size_t c = 0; c < dd; ++c) {
      obj(r, dd + c) = -0.5 * choi_matrix(r, c);
      obj(dd + c, r) = -0.5 * std::conj(choi_matrix(r, c));
    }
  prob.set_objective({obj});

  // Force each diagonal corner into the form rho (x) I_out.
  const auto corner = [&](std::size_t base) {
    const auto idx = [&](std::size_t i, std::size_t k) { return base + i * d_out + k; };
    // Entries coupling different output indices vanish.
    for (std::size_t k = 0; k < d_out; ++k)
      for (std::size_t l = k + 1; l < d_out; ++l)
        for (std::size_t i = 0; i < d_in; ++i)
          for (std::size_t jj = 0; jj < d_in; ++jj) {
            const std::size_t rr = idx(i, k);
            const std::size_t cc = idx(jj, l);
            ComplexMatrix re(n, n);
            re(rr, cc) = 0.5;
            re(cc, rr) = 0.5;
            prob.add_constraint({re}, 0.0);
            ComplexMatrix im(n, n);
            im(rr, cc) = cplx(0.0, -0.5);
            im(cc, rr) = cplx(0.0, 0.5);
            prob.add_constraint({im}, 0.0);
          }
    // Each output index repeats the same rho block.
    for (std::size_t k = 1; k < d_out; ++k) {
      for (std::size_t i = 0; i < d_in; ++i)
        for (std::size_t jj = i; jj < d_in; ++jj) {
          const std::size_t rk = idx(i, k);
          const std::size_t ck = idx(jj, k);
          const std::size_t r0 = idx(i, 0);
          const std::size_t c0 = idx(jj, 0);
          if (i == jj) {
            ComplexMatrix a(n, n);
            a(rk, ck) = 1.0;
            a(r0, c0) = -1.0;
            prob.add_constraint({a}, 0.0);
          } else {
            ComplexMatrix re(n, n);
            re(rk, ck) = 0.5;
            re(ck, rk) = 0.5;
            re(r0, c0) = -0.5;
            re(c0, r0) = -0.5;
            prob.add_constraint({re}, 0.0);
            ComplexMatrix im(n, n);
            im(rk, ck) = cplx(0.0, -0.5);
            im(ck, rk) = cplx(0.0, 0.5);
            im(r0, c0) = cplx(0.0, 0.5);
            im(c0, r0) = cplx(0.0, -0.5);
            prob.add_constraint({im}, 0.0);
          }
        }
    }
    // Unit trace of rho, read off the k = 0 representatives.
    ComplexMatrix tr(n, n);
    for (std::size_t i = 0; i < d_in; ++i) tr(idx(i, 0), idx(i, 0)) = 1.0;
    prob.add_constraint({tr}, 1.0);
  };
  corner(0);
  corner(dd);
  return prob;
}

DiamondResult diamond_norm_certified(const Superoperator& phi) {
  if (!phi.square_legs())
    throw ShapeError("diamond norm requires square input and output legs");
  const ComplexMatrix j = choi(phi);
  const sdp::SdpProblem prob = make_diamond_problem(j, phi.in_rows(), phi.out_rows());
  const sdp::SdpSolution sol = sdp::solve(prob);
  DiamondResult out;
  out.value = -sol.primal_value;
  out.sdp_gap = sol.relative_gap;
  out.iterations = sol.iterations;
  out.status = sol.status;
  return out;
}

double diamond_norm(const Superoperator& phi) {
  const DiamondResult r = diamond_norm_certified(phi);
  if (r.status != sdp::SdpStatus::optimal)
    throw NumericalError("diamond norm sdp ended with status " + sdp::status_name(r.status) +
                             " (relative gap " + std::to_string(r.sdp_gap) + ")",
                         r.iterations);
  return r.value;
}

double cb_operator_norm(const Superoperator& phi) { return diamond_norm(adjoint(phi)); }

bool cb_invariance_check(const Superoperator& phi, double tol) {
  const double direct = diamond_norm(phi);
  const double sandwiched = diamond_norm(transpose_sandwich(phi));
  return std::abs(direct - sandwiched) <= tol;
}

}  // namespace opnormlab::superop
