#include "opnormlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace opnormlab::linalg {

namespace {

constexpr double kJacobiTol = 1e-14;
constexpr std::size_t kMaxSweeps = 100;

int sign_of(double x) { return x < 0.0 ? -1 : 1; }

/// Append orthonormal columns to u (already orthonormal in columns < filled)
/// for the slots marked missing, drawing candidates from the standard basis.
void complete_columns(ComplexMatrix& u, const std::vector<bool>& missing) {
  const std::size_t m = u.rows();
  const std::size_t n = u.cols();
  std::size_t candidate = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!missing[j]) continue;
    while (candidate < m) {
      std::vector<cplx> v(m, cplx(0.0, 0.0));
      v[candidate] = 1.0;
      ++candidate;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < n; ++k) {
          if (missing[k] && k >= j) continue;
          cplx dot = 0.0;
          for (std::size_t i = 0; i < m; ++i) dot += std::conj(u(i, k)) * v[i];
          for (std::size_t i = 0; i < m; ++i) v[i] -= dot * u(i, k);
        }
      }
      double nrm = 0.0;
      for (const cplx& z : v) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
      if (nrm > 0.5) {
        for (std::size_t i = 0; i < m; ++i) u(i, j) = v[i] / nrm;
        break;
      }
    }
  }
}

}  // namespace

SvdResult svd(const ComplexMatrix& a) {
  if (a.empty()) throw ShapeError("svd requires a nonempty matrix");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) {
    SvdResult r = svd(a.adjoint());
    return SvdResult{std::move(r.v), std::move(r.singular_values), std::move(r.u)};
  }

  ComplexMatrix b = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double fnorm2 = a.frobenius_norm() * a.frobenius_norm();

  if (fnorm2 > 0.0) {
    bool converged = false;
    std::size_t sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
      double worst = 0.0;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          double alpha = 0.0, beta = 0.0;
          cplx gamma = 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            alpha += std::norm(b(i, p));
            beta += std::norm(b(i, q));
            gamma += std::conj(b(i, p)) * b(i, q);
          }
          const double g = std::abs(gamma);
          worst = std::max(worst, g);
          if (g <= kJacobiTol * fnorm2 || alpha == 0.0 || beta == 0.0) continue;

          // Dephase column q so the 2x2 Gram block is real, then rotate.
          const cplx phase = gamma / g;
          const double tau = (beta - alpha) / (2.0 * g);
          const double t = sign_of(tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = c * t;
          const cplx ph = std::conj(phase);
          for (std::size_t i = 0; i < m; ++i) {
            const cplx bp = b(i, p);
            const cplx bq = ph * b(i, q);
            b(i, p) = c * bp - s * bq;
            b(i, q) = s * bp + c * bq;
          }
          for (std::size_t i = 0; i < n; ++i) {
            const cplx vp = v(i, p);
            const cplx vq = ph * v(i, q);
            v(i, p) = c * vp - s * vq;
            v(i, q) = s * vp + c * vq;
          }
        }
      }
      if (worst <= kJacobiTol * fnorm2) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalError(
          "svd failed to converge after " + std::to_string(kMaxSweeps) + " sweeps", kMaxSweeps);
  }

  std::vector<double> sigma(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) s2 += std::norm(b(i, j));
    sigma[j] = std::sqrt(s2);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult out;
  out.singular_values.resize(n);
  out.u = ComplexMatrix(m, n);
  out.v = ComplexMatrix(n, n);
  const double sigma_max = sigma[order[0]];
  const double rank_tol = sigma_max * static_cast<double>(std::max(m, n)) * 2.22e-16;
  std::vector<bool> missing(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = sigma[src];
    for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    if (sigma[src] > rank_tol && sigma[src] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, j) = b(i, src) / sigma[src];
    } else {
      missing[j] = true;
    }
  }
  complete_columns(out.u, missing);
  return out;
}

double spectral_norm(const ComplexMatrix& a) { return svd(a).singular_values.front(); }

double schatten_norm(const ComplexMatrix& a, Schatten p) {
  const std::vector<double> s = svd(a).singular_values;
  switch (p) {
    case Schatten::one:
      return std::accumulate(s.begin(), s.end(), 0.0);
    case Schatten::two: {
      double q = 0.0;
      for (double x : s) q += x * x;
      return std::sqrt(q);
    }
    case Schatten::inf:
      return s.front();
  }
  throw ShapeError("unknown schatten index");
}

EigResult hermitian_eig(const ComplexMatrix& h) {
  if (h.empty() || !h.is_square()) throw ShapeError("hermitian_eig requires a square matrix");
  if (!h.is_hermitian(1e-8 * (1.0 + h.max_abs())))
    throw ShapeError("hermitian_eig input is not Hermitian");
  ComplexMatrix a = h.hermitized();
  const std::size_t n = a.rows();
  ComplexMatrix q = ComplexMatrix::identity(n);
  const double fnorm = a.frobenius_norm();

  if (fnorm > 0.0) {
    bool converged = false;
    for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
      double worst = 0.0;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t r = p + 1; r < n; ++r) {
          const cplx apr = a(p, r);
          const double g = std::abs(apr);
          worst = std::max(worst, g);
          if (g <= kJacobiTol * fnorm) continue;
          const cplx phase = apr / g;
          const double app = a(p, p).real();
          const double arr = a(r, r).real();
          const double tau = (arr - app) / (2.0 * g);
          const double t = sign_of(tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = c * t;
          const cplx ph = std::conj(phase);
          // Column update (right multiply by J), then row update (left by J*).
          for (std::size_t i = 0; i < n; ++i) {
            const cplx xp = a(i, p);
            const cplx xq = ph * a(i, r);
            a(i, p) = c * xp - s * xq;
            a(i, r) = s * xp + c * xq;
          }
          for (std::size_t i = 0; i < n; ++i) {
            const cplx xp = a(p, i);
            const cplx xq = phase * a(r, i);
            a(p, i) = c * xp - s * xq;
            a(r, i) = s * xp + c * xq;
          }
          for (std::size_t i = 0; i < n; ++i) {
            const cplx xp = q(i, p);
            const cplx xq = ph * q(i, r);
            q(i, p) = c * xp - s * xq;
            q(i, r) = s * xp + c * xq;
          }
        }
      }
      if (worst <= kJacobiTol * fnorm) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalError("hermitian_eig failed to converge after " +
                               std::to_string(kMaxSweeps) + " sweeps",
                           kMaxSweeps);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  EigResult out;
  out.eigenvalues.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = q(i, order[j]);
  }
  return out;
}

std::optional<ComplexMatrix> cholesky(const ComplexMatrix& h) {
  if (h.empty() || !h.is_square()) throw ShapeError("cholesky requires a square matrix");
  const ComplexMatrix a = h.hermitized();
  const std::size_t n = a.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

ComplexMatrix lower_solve(const ComplexMatrix& l, const ComplexMatrix& b) {
  if (l.rows() != l.cols() || l.rows() != b.rows()) throw ShapeError("lower_solve shape mismatch");
  const std::size_t n = l.rows();
  ComplexMatrix x = b;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = x(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, j);
      x(i, j) = s / l(i, i);
    }
  }
  return x;
}

ComplexMatrix lower_adjoint_solve(const ComplexMatrix& l, const ComplexMatrix& b) {
  if (l.rows() != l.cols() || l.rows() != b.rows())
    throw ShapeError("lower_adjoint_solve shape mismatch");
  const std::size_t n = l.rows();
  ComplexMatrix x = b;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t ii = n; ii > 0; --ii) {
      const std::size_t i = ii - 1;
      cplx s = x(i, j);
      for (std::size_t k = i + 1; k < n; ++k) s -= std::conj(l(k, i)) * x(k, j);
      x(i, j) = s / std::conj(l(i, i));
    }
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  if (m.empty() || !m.is_square()) throw ShapeError("inverse requires a square matrix");
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::abs(a(i, col)) > best) {
        best = std::abs(a(i, col));
        pivot = i;
      }
    }
    if (best < 1e-300) throw NumericalError("inverse of a singular matrix", col);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    }
    const cplx d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const cplx f = a(i, col);
      if (f == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

ComplexMatrix expm(const ComplexMatrix& g) {
  if (g.empty() || !g.is_square()) throw ShapeError("expm requires a square matrix");
  const std::size_t n = g.rows();
  const double nrm = g.frobenius_norm();
  int squarings = 0;
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  ComplexMatrix a = g;
  a *= cplx(std::ldexp(1.0, -squarings), 0.0);

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = term * a;
    term *= cplx(1.0 / k, 0.0);
    result += term;
    if (term.frobenius_norm() < 1e-18) break;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.empty() || b.empty()) throw ShapeError("kron requires nonempty matrices");
  check_cap(a.rows(), a.cols(), "kron left leg");
  check_cap(b.rows(), b.cols(), "kron right leg");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix vec(const ComplexMatrix& m) {
  if (m.empty()) throw ShapeError("vec requires a nonempty matrix");
  ComplexMatrix v(m.size(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i * m.cols() + j, 0) = m(i, j);
  return v;
}

ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols) {
  if (v.cols() != 1 || v.rows() != rows * cols) throw ShapeError("unvec shape mismatch");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v(i * cols + j, 0);
  return m;
}

ComplexMatrix partial_transpose(const ComplexMatrix& x, std::size_t n, std::size_t m, Leg leg) {
  if (x.rows() != n * m || x.cols() != n * m)
    throw ShapeError("partial_transpose requires an (n*m) x (n*m) matrix");
  ComplexMatrix out(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < m; ++l) {
          const cplx val = x(i * m + k, j * m + l);
          if (leg == Leg::first)
            out(j * m + k, i * m + l) = val;
          else
            out(i * m + l, j * m + k) = val;
        }
  return out;
}

std::size_t dimension_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("OPNORMLAB_CAP")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(4096);
  }();
  return cap;
}

void check_cap(std::size_t rows, std::size_t cols, const char* where) {
  const std::size_t cap = dimension_cap();
  if (rows * cols > cap)
    throw SizeError(std::string(where) + ": " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " exceeds the cap of " + std::to_string(cap) +
                    " entries (set OPNORMLAB_CAP to raise)");
}

}  // namespace opnormlab::linalg
