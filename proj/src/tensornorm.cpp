#include "opnormlab/tensornorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opnormlab::tensornorm {

namespace {

using linalg::expm;
using linalg::kron;
using linalg::Leg;
using linalg::spectral_norm;

}  // namespace

TensorElement::TensorElement(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw ShapeError("tensor element needs at least one pair");
  const auto& first = pairs_.front();
  if (first.first.empty() || first.second.empty())
    throw ShapeError("tensor element factors must be nonempty");
  for (const auto& [a, b] : pairs_) {
    if (a.rows() != first.first.rows() || a.cols() != first.first.cols() ||
        b.rows() != first.second.rows() || b.cols() != first.second.cols())
      throw ShapeError("tensor element pairs must have uniform shapes");
  }
}

ComplexMatrix TensorElement::kron_sum() const {
  ComplexMatrix sum = kron(pairs_.front().first, pairs_.front().second);
  for (std::size_t i = 1; i < pairs_.size(); ++i)
    sum += kron(pairs_[i].first, pairs_[i].second);
  return sum;
}

double min_norm(const TensorElement& u) { return spectral_norm(u.kron_sum()); }

TensorElement opposite(const TensorElement& u, Leg leg) {
  std::vector<TensorElement::Pair> out;
  out.reserve(u.pair_count());
  for (const auto& [a, b] : u.pairs()) {
    if (leg == Leg::first)
      out.emplace_back(a.padded_square().transpose(), b);
    else
      out.emplace_back(a, b.padded_square().transpose());
  }
  return TensorElement(std::move(out));
}

double haagerup_upper(const TensorElement& u) {
  ComplexMatrix left;
  ComplexMatrix right;
  bool any = false;
  for (const auto& [a, b] : u.pairs()) {
    const double na = spectral_norm(a);
    const double nb = spectral_norm(b);
    if (na == 0.0 || nb == 0.0) continue;
    const double t2 = nb / na;  // squared balancing factor
    ComplexMatrix aa = a * a.adjoint();
    ComplexMatrix bb = b.adjoint() * b;
    aa *= cplx(t2, 0.0);
    bb *= cplx(1.0 / t2, 0.0);
    if (!any) {
      left = std::move(aa);
      right = std::move(bb);
      any = true;
    } else {
      left += aa;
      right += bb;
    }
  }
  if (!any) return 0.0;
  return std::sqrt(spectral_norm(left)) * std::sqrt(spectral_norm(right));
}

double projective_upper(const TensorElement& u) {
  double sum = 0.0;
  for (const auto& [a, b] : u.pairs()) sum += spectral_norm(a) * spectral_norm(b);
  return sum;
}

TensorElement gauge_transform(const TensorElement& u, const ComplexMatrix& m) {
  const std::size_t k = u.pair_count();
  if (m.rows() != k || m.cols() != k)
    throw ShapeError("gauge must be k x k for a k-pair element");
  const ComplexMatrix minv = linalg::inverse(m);
  std::vector<TensorElement::Pair> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    ComplexMatrix a(u.left_rows(), u.left_cols());
    ComplexMatrix b(u.right_rows(), u.right_cols());
    for (std::size_t j = 0; j < k; ++j) {
      if (m(j, i) != cplx(0.0, 0.0)) a += u.pairs()[j].first * m(j, i);
      if (minv(i, j) != cplx(0.0, 0.0)) b += u.pairs()[j].second * minv(i, j);
    }
    out.emplace_back(std::move(a), std::move(b));
  }
  return TensorElement(std::move(out));
}

namespace {

/// log of the raw representation bound after applying the gauge exp(g).
/// Returns +inf on overflow so the caller can reject the step.
double gauge_objective(const TensorElement& u, const ComplexMatrix& g,
                       std::size_t* rejected) {
  const std::size_t k = u.pair_count();
  const ComplexMatrix m = expm(g);
  const ComplexMatrix minv = expm(g * cplx(-1.0, 0.0));
  ComplexMatrix left(u.left_rows(), u.left_rows());
  ComplexMatrix right(u.right_cols(), u.right_cols());
  for (std::size_t i = 0; i < k; ++i) {
    ComplexMatrix a(u.left_rows(), u.left_cols());
    ComplexMatrix b(u.right_rows(), u.right_cols());
    for (std::size_t j = 0; j < k; ++j) {
      if (m(j, i) != cplx(0.0, 0.0)) a += u.pairs()[j].first * m(j, i);
      if (minv(i, j) != cplx(0.0, 0.0)) b += u.pairs()[j].second * minv(i, j);
    }
    left += a * a.adjoint();
    right += b.adjoint() * b;
  }
  const double nl = left.frobenius_norm();
  const double nr = right.frobenius_norm();
  if (!std::isfinite(nl) || !std::isfinite(nr)) {
    if (rejected) ++(*rejected);
    return std::numeric_limits<double>::infinity();
  }
  const double sl = spectral_norm(left);
  const double sr = spectral_norm(right);
  if (sl <= 0.0 || sr <= 0.0) return -std::numeric_limits<double>::infinity();
  return 0.5 * (std::log(sl) + std::log(sr));
}

}  // namespace

HaagerupOptimizeResult haagerup_optimize(const TensorElement& u,
                                         const HaagerupOptimizeOptions& options) {
  HaagerupOptimizeResult out;
  const std::size_t k = u.pair_count();

  std::vector<double> na(k), nb(k);
  bool any = false;
  for (std::size_t i = 0; i < k; ++i) {
    na[i] = spectral_norm(u.pairs()[i].first);
    nb[i] = spectral_norm(u.pairs()[i].second);
    any = any || (na[i] > 0.0 && nb[i] > 0.0);
  }
  if (!any) {
    out.value = 0.0;
    out.gauge = ComplexMatrix::identity(k);
    return out;
  }
  if (k == 1) {
    out.value = na[0] * nb[0];
    out.gauge = ComplexMatrix(1, 1, {cplx(std::sqrt(nb[0] / na[0]), 0.0)});
    out.restarts_used = 0;
    return out;
  }

  // Log-scale balancing gauge; the shared seed for jittered restarts.
  ComplexMatrix g0(k, k);
  for (std::size_t i = 0; i < k; ++i)
    if (na[i] > 0.0 && nb[i] > 0.0) g0(i, i) = 0.5 * std::log(nb[i] / na[i]);
  Rng rng(options.seed);

  double best_f = std::numeric_limits<double>::infinity();
  ComplexMatrix best_g = g0;
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    ComplexMatrix g = g0;
    if (r > 0) {
      const double scale = 0.3 * (1.0 + static_cast<double>(r) / restarts);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) g(i, j) += scale * rng.cnormal();
    }
    double f = gauge_objective(u, g, &out.rejected_evals);
    if (!std::isfinite(f)) continue;

    double step0 = 1.0;
    for (std::size_t it = 0; it < options.iterations; ++it) {
      // Central finite differences over all 2k^2 real coordinates.
      const double h = 1e-5;
      ComplexMatrix grad(k, k);
      double gnorm2 = 0.0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          for (int part = 0; part < 2; ++part) {
            const cplx e = (part == 0) ? cplx(h, 0.0) : cplx(0.0, h);
            ComplexMatrix gp = g;
            gp(i, j) += e;
            ComplexMatrix gm = g;
            gm(i, j) -= e;
            const double fp = gauge_objective(u, gp, &out.rejected_evals);
            const double fm = gauge_objective(u, gm, &out.rejected_evals);
            if (!std::isfinite(fp) || !std::isfinite(fm)) continue;
            const double d = (fp - fm) / (2.0 * h);
            if (part == 0)
              grad(i, j) += cplx(d, 0.0);
            else
              grad(i, j) += cplx(0.0, d);
            gnorm2 += d * d;
          }
        }
      if (gnorm2 <= 1e-16) break;

      double t = step0;
      bool moved = false;
      for (int back = 0; back < 30; ++back) {
        ComplexMatrix cand = g - grad * cplx(t, 0.0);
        // Keep the gauge generator in a range where exp stays well scaled.
        const double cn = cand.frobenius_norm();
        if (cn > 30.0) cand *= cplx(30.0 / cn, 0.0);
        const double fc = gauge_objective(u, cand, &out.rejected_evals);
        if (std::isfinite(fc) && fc <= f - 1e-4 * t * gnorm2) {
          g = std::move(cand);
          f = fc;
          moved = true;
          step0 = std::min(1.0, t * 2.0);
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
    }
    ++out.restarts_used;
    if (f < best_f) {
      best_f = f;
      best_g = g;
    }
  }

  out.value = std::exp(best_f);
  out.gauge = expm(best_g);
  return out;
}

Theorem1Report theorem1_certificate(const TensorElement& u) {
  Theorem1Report rep;
  rep.lower = min_norm(u);
  rep.upper = projective_upper(opposite(u, Leg::second));
  rep.consistent = rep.lower <= rep.upper + 1e-9;
  return rep;
}

}  // namespace opnormlab::tensornorm
