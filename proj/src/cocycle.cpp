#include "opnormlab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opnormlab/linalg.hpp"

namespace opnormlab::cocycle {

namespace {

double max_abs(const Coords& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

void axpy(Coords& out, cplx c, const Coords& v) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * v[i];
}

Coords tensor_coords(const Coords& x, const Coords& y) {
  Coords out(x.size() * y.size(), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == cplx(0.0, 0.0)) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i * y.size() + j] = x[i] * y[j];
  }
  return out;
}

void check_finite(const std::vector<cplx>& v, const char* what) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ShapeError(std::string(what) + " must be finite");
}

}  // namespace

FinAlgebra::FinAlgebra(std::size_t dim, std::vector<cplx> mu, std::optional<Coords> unit,
                       std::string label)
    : dim_(dim), mu_(std::move(mu)), unit_(std::move(unit)), label_(std::move(label)) {
  if (dim_ == 0) throw ShapeError("algebra dimension must be positive");
  if (mu_.size() != dim_ * dim_ * dim_)
    throw ShapeError("structure tensor has wrong size");
  check_finite(mu_, "structure constants");
  sparse_.resize(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      auto& list = sparse_[i * dim_ + j];
      for (std::size_t k = 0; k < dim_; ++k) {
        const cplx c = mu_[(i * dim_ + j) * dim_ + k];
        if (c != cplx(0.0, 0.0)) list.emplace_back(static_cast<std::uint32_t>(k), c);
      }
    }
  if (unit_) {
    if (unit_->size() != dim_) throw ShapeError("unit vector has wrong size");
    for (std::size_t i = 0; i < dim_; ++i) {
      Coords e(dim_, cplx(0.0, 0.0));
      e[i] = 1.0;
      Coords p = multiply(*unit_, e);
      p[i] -= 1.0;
      if (max_abs(p) > 1e-12) throw ShapeError("claimed unit does not act as identity");
    }
  }
}

Coords FinAlgebra::multiply(const Coords& x, const Coords& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw ShapeError("algebra element has wrong size");
  Coords out(dim_, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == cplx(0.0, 0.0)) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      const cplx xy = x[i] * y[j];
      if (xy == cplx(0.0, 0.0)) continue;
      for (const auto& [k, c] : sparse_[i * dim_ + j]) out[k] += xy * c;
    }
  }
  return out;
}

Coords FinAlgebra::power(const Coords& x, unsigned n) const {
  if (n == 0) {
    if (!unit_) throw ShapeError("zeroth power needs a unital algebra");
    return *unit_;
  }
  Coords out = x;
  for (unsigned t = 1; t < n; ++t) out = multiply(out, x);
  return out;
}

double FinAlgebra::commutativity_residual() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        m = std::max(m, std::abs(mu_at(i, j, k) - mu_at(j, i, k)));
  return m;
}

double FinAlgebra::associativity_residual() const {
  double m = 0.0;
  Coords lhs(dim_), rhs(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        std::fill(lhs.begin(), lhs.end(), cplx(0.0, 0.0));
        std::fill(rhs.begin(), rhs.end(), cplx(0.0, 0.0));
        for (const auto& [l, c] : sparse_[i * dim_ + j])
          for (const auto& [t, c2] : sparse_[l * dim_ + k]) lhs[t] += c * c2;
        for (const auto& [l, c] : sparse_[j * dim_ + k])
          for (const auto& [t, c2] : sparse_[i * dim_ + l]) rhs[t] += c * c2;
        for (std::size_t t = 0; t < dim_; ++t) m = std::max(m, std::abs(lhs[t] - rhs[t]));
      }
  return m;
}

FinModule::FinModule(std::size_t algebra_dim, std::size_t dim, std::vector<cplx> action)
    : adim_(algebra_dim), mdim_(dim) {
  if (adim_ == 0 || mdim_ == 0) throw ShapeError("module dimensions must be positive");
  if (action.size() != adim_ * mdim_ * mdim_) throw ShapeError("action tensor has wrong size");
  check_finite(action, "module action");
  sparse_.resize(adim_ * mdim_);
  for (std::size_t i = 0; i < adim_; ++i)
    for (std::size_t x = 0; x < mdim_; ++x) {
      auto& list = sparse_[i * mdim_ + x];
      for (std::size_t y = 0; y < mdim_; ++y) {
        const cplx c = action[(i * mdim_ + x) * mdim_ + y];
        if (c != cplx(0.0, 0.0)) list.emplace_back(static_cast<std::uint32_t>(y), c);
      }
    }
}

Coords FinModule::act_basis(std::size_t i, const Coords& v) const {
  Coords out(mdim_, cplx(0.0, 0.0));
  for (std::size_t x = 0; x < mdim_; ++x) {
    if (v[x] == cplx(0.0, 0.0)) continue;
    for (const auto& [y, c] : sparse_[i * mdim_ + x]) out[y] += v[x] * c;
  }
  return out;
}

Coords FinModule::act(const Coords& a, const Coords& v) const {
  if (a.size() != adim_ || v.size() != mdim_) throw ShapeError("module action size mismatch");
  Coords out(mdim_, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < adim_; ++i) {
    if (a[i] == cplx(0.0, 0.0)) continue;
    const Coords w = act_basis(i, v);
    axpy(out, a[i], w);
  }
  return out;
}

Coords Derivation::apply(const Coords& a) const {
  if (a.size() != matrix.cols()) throw ShapeError("derivation input size mismatch");
  Coords out(matrix.rows(), cplx(0.0, 0.0));
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    if (a[j] == cplx(0.0, 0.0)) continue;
    for (std::size_t i = 0; i < matrix.rows(); ++i) out[i] += matrix(i, j) * a[j];
  }
  return out;
}

double leibniz_residual(const FinAlgebra& a, const FinModule& x, const Derivation& d) {
  if (d.matrix.cols() != a.dim() || d.matrix.rows() != x.dim())
    throw ShapeError("derivation shape mismatch");
  const std::size_t n = a.dim();
  std::vector<Coords> dcol(n);
  for (std::size_t i = 0; i < n; ++i) {
    dcol[i].resize(x.dim());
    for (std::size_t r = 0; r < x.dim(); ++r) dcol[i][r] = d.matrix(r, i);
  }
  double m = 0.0;
  Coords lhs(x.dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(lhs.begin(), lhs.end(), cplx(0.0, 0.0));
      for (const auto& [l, c] : a.basis_product(i, j)) axpy(lhs, c, dcol[l]);
      const Coords t1 = x.act_basis(i, dcol[j]);
      const Coords t2 = x.act_basis(j, dcol[i]);
      for (std::size_t r = 0; r < x.dim(); ++r)
        m = std::max(m, std::abs(lhs[r] - t1[r] - t2[r]));
    }
  return m;
}

Cochain2::Cochain2(std::size_t algebra_dim, std::size_t module_dim)
    : adim_(algebra_dim), mdim_(module_dim) {
  if (adim_ == 0 || mdim_ == 0) throw ShapeError("cochain dimensions must be positive");
  values_.assign(adim_ * adim_ * mdim_, cplx(0.0, 0.0));
}

Coords Cochain2::basis_value(std::size_t i, std::size_t j) const {
  Coords out(mdim_);
  const cplx* src = &values_[(i * adim_ + j) * mdim_];
  std::copy(src, src + mdim_, out.begin());
  return out;
}

Coords Cochain2::eval(const Coords& u, const Coords& v) const {
  if (u.size() != adim_ || v.size() != adim_) throw ShapeError("cochain eval size mismatch");
  Coords out(mdim_, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < adim_; ++i) {
    if (u[i] == cplx(0.0, 0.0)) continue;
    for (std::size_t j = 0; j < adim_; ++j) {
      const cplx c = u[i] * v[j];
      if (c == cplx(0.0, 0.0)) continue;
      const cplx* src = &values_[(i * adim_ + j) * mdim_];
      for (std::size_t r = 0; r < mdim_; ++r) out[r] += c * src[r];
    }
  }
  return out;
}

double cocycle_residual(const Cochain2& f, const FinAlgebra& a, const FinModule& x) {
  if (f.algebra_dim() != a.dim() || f.module_dim() != x.dim())
    throw ShapeError("cochain does not match algebra/module");
  const std::size_t n = a.dim();
  const std::size_t md = x.dim();
  double worst = 0.0;
  Coords delta(md);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Coords fjk = f.basis_value(j, k);
        const Coords fij = f.basis_value(i, j);
        const Coords t1 = x.act_basis(i, fjk);
        const Coords t4 = x.act_basis(k, fij);
        delta.assign(md, cplx(0.0, 0.0));
        for (std::size_t r = 0; r < md; ++r) delta[r] = t1[r] - t4[r];
        for (const auto& [l, c] : a.basis_product(i, j)) {
          const cplx* src = &f.at(l, k, 0);
          for (std::size_t r = 0; r < md; ++r) delta[r] -= c * src[r];
        }
        for (const auto& [l, c] : a.basis_product(j, k)) {
          const cplx* src = &f.at(i, l, 0);
          for (std::size_t r = 0; r < md; ++r) delta[r] += c * src[r];
        }
        worst = std::max(worst, max_abs(delta));
      }
  return worst;
}

bool cocycle_check(const Cochain2& f, const FinAlgebra& a, const FinModule& x, double tol) {
  return cocycle_residual(f, a, x) <= tol;
}

double antisymmetry_residual(const Cochain2& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.algebra_dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t r = 0; r < f.module_dim(); ++r)
        m = std::max(m, std::abs(f.at(i, j, r) + f.at(j, i, r)));
  return m;
}

bool antisymmetry_check(const Cochain2& f, double tol) {
  return antisymmetry_residual(f) <= tol;
}

Cochain2 coboundary(const ComplexMatrix& psi, const FinAlgebra& a, const FinModule& x) {
  if (psi.cols() != a.dim() || psi.rows() != x.dim())
    throw ShapeError("1-cochain shape mismatch");
  const std::size_t n = a.dim();
  const std::size_t md = x.dim();
  std::vector<Coords> col(n);
  for (std::size_t i = 0; i < n; ++i) {
    col[i].resize(md);
    for (std::size_t r = 0; r < md; ++r) col[i][r] = psi(r, i);
  }
  Cochain2 f(n, md);
  Coords val(md);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Coords t1 = x.act_basis(i, col[j]);
      const Coords t3 = x.act_basis(j, col[i]);  // psi(e_i).e_j, symmetric action
      std::copy(t1.begin(), t1.end(), val.begin());
      for (std::size_t r = 0; r < md; ++r) val[r] += t3[r];
      for (const auto& [l, c] : a.basis_product(i, j)) axpy(val, -c, col[l]);
      for (std::size_t r = 0; r < md; ++r) f.at(i, j, r) = val[r];
    }
  return f;
}

double coboundary_symmetry_residual(const ComplexMatrix& psi, const FinAlgebra& a,
                                    const FinModule& x) {
  const Cochain2 f = coboundary(psi, a, x);
  double m = 0.0;
  for (std::size_t i = 0; i < f.algebra_dim(); ++i)
    for (std::size_t j = i + 1; j < f.algebra_dim(); ++j)
      for (std::size_t r = 0; r < f.module_dim(); ++r)
        m = std::max(m, std::abs(f.at(i, j, r) - f.at(j, i, r)));
  return m;
}

bool coboundary_symmetry_check(const ComplexMatrix& psi, const FinAlgebra& a,
                               const FinModule& x, double tol) {
  return coboundary_symmetry_residual(psi, a, x) <= tol;
}

TruncatedPoly truncated_poly(std::size_t n) {
  if (n < 2) throw ShapeError("truncated_poly requires N >= 2");
  std::vector<cplx> mu(n * n * n, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i + j < n) mu[(i * n + j) * n + (i + j)] = 1.0;
  Coords unit(n, cplx(0.0, 0.0));
  unit[0] = 1.0;
  FinAlgebra algebra(n, std::move(mu), unit, "trunc-poly-" + std::to_string(n));

  const std::size_t md = n - 1;
  std::vector<cplx> action(n * md * md, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < md; ++x)
      if (i + x < md) action[(i * md + x) * md + (i + x)] = 1.0;
  FinModule module(n, md, std::move(action));

  ComplexMatrix d(md, n);
  for (std::size_t i = 1; i < n; ++i) d(i - 1, i) = static_cast<double>(i);
  return TruncatedPoly{std::move(algebra), std::move(module), Derivation{std::move(d)}};
}

FinAlgebra tensor_algebra(const FinAlgebra& a, const FinAlgebra& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  const std::size_t n = da * db;
  linalg::check_cap(n, n, "tensor algebra");
  std::vector<cplx> mu(n * n * n, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (const auto& [k, ca] : a.basis_product(i, j))
        for (std::size_t p = 0; p < db; ++p)
          for (std::size_t q = 0; q < db; ++q)
            for (const auto& [r, cb] : b.basis_product(p, q)) {
              const std::size_t ii = i * db + p;
              const std::size_t jj = j * db + q;
              const std::size_t kk = static_cast<std::size_t>(k) * db + r;
              mu[(ii * n + jj) * n + kk] = ca * cb;
            }
  std::optional<Coords> unit;
  if (a.unit() && b.unit()) unit = tensor_coords(*a.unit(), *b.unit());
  return FinAlgebra(n, std::move(mu), std::move(unit),
                    a.label() + " (x) " + b.label());
}

FinModule tensor_module(const FinModule& x, const FinModule& y) {
  const std::size_t adim = x.algebra_dim() * y.algebra_dim();
  const std::size_t mdim = x.dim() * y.dim();
  std::vector<cplx> action(adim * mdim * mdim, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < x.algebra_dim(); ++i)
    for (std::size_t p = 0; p < y.algebra_dim(); ++p) {
      const std::size_t ai = i * y.algebra_dim() + p;
      for (std::size_t u = 0; u < x.dim(); ++u)
        for (const auto& [u2, cx] : x.basis_action(i, u))
          for (std::size_t v = 0; v < y.dim(); ++v)
            for (const auto& [v2, cy] : y.basis_action(p, v)) {
              const std::size_t from = u * y.dim() + v;
              const std::size_t to = static_cast<std::size_t>(u2) * y.dim() + v2;
              action[(ai * mdim + from) * mdim + to] = cx * cy;
            }
    }
  return FinModule(adim, mdim, std::move(action));
}

Cochain2 wedge_cocycle(const FinAlgebra& a, const FinAlgebra& b, const FinModule& x,
                       const FinModule& y, const Derivation& da, const Derivation& db) {
  if (x.algebra_dim() != a.dim() || y.algebra_dim() != b.dim())
    throw ShapeError("module does not match algebra");
  if (da.matrix.cols() != a.dim() || da.matrix.rows() != x.dim() ||
      db.matrix.cols() != b.dim() || db.matrix.rows() != y.dim())
    throw ShapeError("derivation shape mismatch");

  const std::size_t dA = a.dim(), dB = b.dim(), mX = x.dim(), mY = y.dim();
  std::vector<Coords> dacol(dA), dbcol(dB);
  for (std::size_t i = 0; i < dA; ++i) {
    dacol[i].resize(mX);
    for (std::size_t r = 0; r < mX; ++r) dacol[i][r] = da.matrix(r, i);
  }
  for (std::size_t p = 0; p < dB; ++p) {
    dbcol[p].resize(mY);
    for (std::size_t r = 0; r < mY; ++r) dbcol[p][r] = db.matrix(r, p);
  }

  Cochain2 f(dA * dB, mX * mY);
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t p = 0; p < dB; ++p)
      for (std::size_t j = 0; j < dA; ++j)
        for (std::size_t q = 0; q < dB; ++q) {
          const Coords x1 = x.act_basis(j, dacol[i]);  // Da(e_i) . e_j
          const Coords y1 = y.act_basis(p, dbcol[q]);  // f_p . Db(f_q)
          const Coords x2 = x.act_basis(i, dacol[j]);  // e_i . Da(e_j)
          const Coords y2 = y.act_basis(q, dbcol[p]);  // Db(f_p) . f_q
          const std::size_t ui = i * dB + p;
          const std::size_t vj = j * dB + q;
          for (std::size_t r = 0; r < mX; ++r)
            for (std::size_t s = 0; s < mY; ++s)
              f.at(ui, vj, r * mY + s) = x1[r] * y1[s] - x2[r] * y2[s];
        }
  return f;
}

std::optional<Witness> nonvanishing_witness(const FinAlgebra& a, const FinAlgebra& b,
                                            const Derivation& da, const Derivation& db,
                                            const Cochain2& f, std::uint64_t seed) {
  if (f.algebra_dim() != a.dim() * b.dim()) throw ShapeError("cochain does not match A (x) B");

  const auto candidates = [](const FinAlgebra& alg, Rng rng, std::size_t count) {
    std::vector<Coords> out;
    const std::size_t n = alg.dim();
    if (alg.unit()) {
      static const double grid[] = {1.0, -1.0, 0.5, 2.0, -0.5};
      for (std::size_t i = 0; i < n && out.size() < count; ++i) {
        for (double t : grid) {
          Coords c = *alg.unit();
          c[i] += t;
          out.push_back(std::move(c));
          if (out.size() >= count) break;
        }
      }
    }
    for (std::size_t i = 0; i < n && out.size() < count; ++i) {
      Coords c(n, cplx(0.0, 0.0));
      c[i] = 1.0;
      out.push_back(std::move(c));
    }
    while (out.size() < count) {
      Coords c(n);
      for (cplx& z : c) z = rng.cnormal();
      out.push_back(std::move(c));
    }
    return out;
  };

  Rng root(seed);
  const std::size_t per_side = 32;
  const std::vector<Coords> ca = candidates(a, root.child("witness-a"), per_side);
  const std::vector<Coords> cb = candidates(b, root.child("witness-b"), per_side);
  const std::size_t mdim = f.module_dim();
  std::size_t tested = 0;
  for (const Coords& av : ca) {
    for (const Coords& bv : cb) {
      if (++tested > 1000) return std::nullopt;
      const Coords a3 = a.power(av, 3);
      const Coords u = tensor_coords(a3, bv);
      const Coords v = tensor_coords(av, bv);
      const Coords val = f.eval(u, v);
      const double vnorm = max_abs(val);
      if (vnorm <= 1e-8) continue;
      const Coords a4 = a.power(av, 4);
      const Coords b2 = b.power(bv, 2);
      Coords rhs = tensor_coords(da.apply(a4), db.apply(b2));
      for (cplx& z : rhs) z *= 0.25;
      double res = 0.0;
      for (std::size_t r = 0; r < mdim; ++r) res = std::max(res, std::abs(val[r] - rhs[r]));
      Witness w;
      w.a = av;
      w.b = bv;
      w.value = val;
      w.value_norm = vnorm;
      w.identity_residual = res;
      return w;
    }
  }
  return std::nullopt;
}

PolarizationReport polarization_check(const FinAlgebra& a, std::uint64_t seed,
                                      std::size_t samples, double tol) {
  PolarizationReport rep;
  rep.samples = samples;
  Rng rng(seed);
  const std::size_t n = a.dim();
  const cplx iunit(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    Coords u(n), v(n);
    for (cplx& z : u) z = rng.cnormal();
    for (cplx& z : v) z = rng.cnormal();

    const Coords uv = a.multiply(u, v);
    Coords sum(n), dif(n);
    for (std::size_t i = 0; i < n; ++i) {
      sum[i] = u[i] + v[i];
      dif[i] = u[i] - v[i];
    }
    const Coords sq_sum = a.multiply(sum, sum);
    const Coords sq_dif = a.multiply(dif, dif);
    double scale = 1.0 + max_abs(uv);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      res = std::max(res, std::abs(uv[i] - 0.25 * (sq_sum[i] - sq_dif[i])));
    rep.max_pair_residual = std::max(rep.max_pair_residual, res / scale);

    const Coords u2 = a.multiply(u, u);
    const Coords v2 = a.multiply(v, v);
    const Coords u2v2 = a.multiply(u2, v2);
    Coords pi(n), mi(n);
    for (std::size_t i = 0; i < n; ++i) {
      pi[i] = u[i] + iunit * v[i];
      mi[i] = u[i] - iunit * v[i];
    }
    const Coords q1 = a.power(sum, 4);
    const Coords q2 = a.power(dif, 4);
    const Coords q3 = a.power(pi, 4);
    const Coords q4 = a.power(mi, 4);
    scale = 1.0 + max_abs(u2v2);
    res = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      res = std::max(res,
                     std::abs(u2v2[i] - (q1[i] + q2[i] - q3[i] - q4[i]) / 24.0));
    rep.max_quartic_residual = std::max(rep.max_quartic_residual, res / scale);
  }
  rep.ok = rep.max_pair_residual <= tol && rep.max_quartic_residual <= tol;
  return rep;
}

namespace {

/// Incremental rank of a vector family via two-pass Gram-Schmidt.
class RankTracker {
 public:
  explicit RankTracker(std::size_t dim) : dim_(dim) {}

  void add(Coords v) {
    if (basis_.size() == dim_) return;
    const double scale = std::sqrt(norm2(v));
    if (scale == 0.0) return;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Coords& b : basis_) {
        cplx dot(0.0, 0.0);
        for (std::size_t i = 0; i < dim_; ++i) dot += std::conj(b[i]) * v[i];
        for (std::size_t i = 0; i < dim_; ++i) v[i] -= dot * b[i];
      }
    }
    const double rem = std::sqrt(norm2(v));
    if (rem > 1e-9 * (1.0 + scale)) {
      for (cplx& z : v) z /= rem;
      basis_.push_back(std::move(v));
    }
  }

  std::size_t rank() const { return basis_.size(); }

 private:
  static double norm2(const Coords& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return s;
  }
  std::size_t dim_;
  std::vector<Coords> basis_;
};

}  // namespace

SpanReport power_span_check(const FinAlgebra& a) {
  const std::size_t n = a.dim();
  if (n > 16) throw SizeError("power_span_check is limited to algebras of dim <= 16");
  SpanReport rep;
  rep.dim = n;
  const cplx iunit(0.0, 1.0);

  // Degree-2 sample: basis vectors plus all e_i +- e_j and e_i +- i e_j.
  std::vector<Coords> s2;
  for (std::size_t i = 0; i < n; ++i) {
    Coords c(n, cplx(0.0, 0.0));
    c[i] = 1.0;
    s2.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const cplx w : {cplx(1.0, 0.0), cplx(-1.0, 0.0), iunit, -iunit}) {
        Coords c(n, cplx(0.0, 0.0));
        c[i] = 1.0;
        c[j] = w;
        s2.push_back(std::move(c));
      }

  RankTracker pair_products(n), squares(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Coords prod(n, cplx(0.0, 0.0));
      for (const auto& [k, c] : a.basis_product(i, j)) prod[k] += c;
      pair_products.add(std::move(prod));
    }
  for (const Coords& u : s2) squares.add(a.multiply(u, u));
  rep.rank_pair_products = pair_products.rank();
  rep.rank_squares = squares.rank();
  rep.pair_equal = rep.rank_pair_products == rep.rank_squares;

  RankTracker quad_products(n), square_pairs(n), fourth_powers(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) {
          Coords ei(n, cplx(0.0, 0.0)), ej(n, cplx(0.0, 0.0));
          Coords ek(n, cplx(0.0, 0.0)), el(n, cplx(0.0, 0.0));
          ei[i] = 1.0;
          ej[j] = 1.0;
          ek[k] = 1.0;
          el[l] = 1.0;
          quad_products.add(a.multiply(a.multiply(ei, ej), a.multiply(ek, el)));
        }
  std::vector<Coords> s2_squares;
  s2_squares.reserve(s2.size());
  for (const Coords& u : s2) s2_squares.push_back(a.multiply(u, u));
  for (std::size_t i = 0; i < s2.size(); ++i)
    for (std::size_t j = i; j < s2.size(); ++j)
      square_pairs.add(a.multiply(s2_squares[i], s2_squares[j]));
  for (std::size_t i = 0; i < s2.size(); ++i)
    fourth_powers.add(a.multiply(s2_squares[i], s2_squares[i]));
  for (std::size_t i = 0; i < s2.size(); ++i)
    for (std::size_t j = i + 1; j < s2.size(); ++j)
      for (const cplx w : {cplx(1.0, 0.0), cplx(-1.0, 0.0), iunit, -iunit}) {
        if (fourth_powers.rank() == n) break;
        Coords c(n);
        for (std::size_t t = 0; t < n; ++t) c[t] = s2[i][t] + w * s2[j][t];
        const Coords c2 = a.multiply(c, c);
        fourth_powers.add(a.multiply(c2, c2));
      }
  rep.rank_quad_products = quad_products.rank();
  rep.rank_square_pairs = square_pairs.rank();
  rep.rank_fourth_powers = fourth_powers.rank();
  rep.quartic_equal = rep.rank_quad_products == rep.rank_square_pairs &&
                      rep.rank_square_pairs == rep.rank_fourth_powers;
  return rep;
}

}  // namespace opnormlab::cocycle
