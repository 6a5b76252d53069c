#include "opnormlab/sdp.hpp"

#include <algorithm>
#include <cmath>

#include "opnormlab/linalg.hpp"

namespace opnormlab::sdp {

namespace {

using linalg::cholesky;
using linalg::hermitian_eig;
using linalg::lower_solve;
using linalg::svd;

using BlockVec = std::vector<ComplexMatrix>;

double inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  double s = 0.0;
  const auto& ae = a.entries();
  const auto& be = b.entries();
  for (std::size_t k = 0; k < ae.size(); ++k)
    s += ae[k].real() * be[k].real() + ae[k].imag() * be[k].imag();
  return s;
}

double inner(const BlockVec& a, const BlockVec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += inner(a[k], b[k]);
  return s;
}

double fnorm(const BlockVec& a) {
  double s = 0.0;
  for (const auto& m : a) {
    const double f = m.frobenius_norm();
    s += f * f;
  }
  return std::sqrt(s);
}

/// Dense real symmetric matrix in packed row-major form, n x n.
struct RealSym {
  std::size_t n = 0;
  std::vector<double> a;
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// In-place lower Cholesky; returns false on a nonpositive pivot.
bool real_cholesky(RealSym& m) {
  const std::size_t n = m.n;
  for (std::size_t j = 0; j < n; ++j) {
    double d = m.at(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= m.at(j, k) * m.at(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    m.at(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= m.at(i, k) * m.at(j, k);
      m.at(i, j) = s / ljj;
    }
  }
  return true;
}

std::vector<double> real_chol_solve(const RealSym& l, std::vector<double> b) {
  const std::size_t n = l.n;
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l.at(i, k) * b[k];
    b[i] = s / l.at(i, i);
  }
  for (std::size_t ii = n; ii > 0; --ii) {
    const std::size_t i = ii - 1;
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l.at(k, i) * b[k];
    b[i] = s / l.at(i, i);
  }
  return b;
}

/// Rank of a PSD Gram matrix by pivoted Cholesky; used only as a diagnostic.
std::size_t gram_rank(RealSym g) {
  const std::size_t n = g.n;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  double max0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) max0 = std::max(max0, g.at(i, i));
  if (max0 <= 0.0) return 0;
  std::vector<std::vector<double>> l;
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = g.at(i, i);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = step;
    for (std::size_t i = step + 1; i < n; ++i)
      if (diag[perm[i]] > diag[perm[best]]) best = i;
    std::swap(perm[step], perm[best]);
    const std::size_t p = perm[step];
    if (diag[p] <= 1e-12 * max0) return step;
    std::vector<double> col(n, 0.0);
    const double piv = std::sqrt(diag[p]);
    for (std::size_t i = step; i < n; ++i) {
      const std::size_t q = perm[i];
      double s = g.at(q, p);
      for (const auto& prev : l) s -= prev[q] * prev[p];
      col[q] = s / piv;
    }
    for (std::size_t i = step + 1; i < n; ++i) {
      const std::size_t q = perm[i];
      diag[q] -= col[q] * col[q];
    }
    l.push_back(std::move(col));
  }
  return n;
}

/// Largest alpha with X + alpha * dx psd, given the Cholesky factor of X.
double max_step(const ComplexMatrix& lfact, const ComplexMatrix& dx) {
  ComplexMatrix z = lower_solve(lfact, dx);
  ComplexMatrix k = lower_solve(lfact, z.adjoint()).adjoint().hermitized();
  const auto eig = hermitian_eig(k);
  const double lmin = eig.eigenvalues.front();
  if (lmin >= -1e-13) return 1e100;
  return -1.0 / lmin;
}

struct NtScaling {
  ComplexMatrix g;            // X = G G* on the central path direction
  std::vector<double> lambda; // shared scaled spectrum
};

}  // namespace

SdpProblem::SdpProblem(std::vector<std::size_t> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw ShapeError("sdp problem needs at least one block");
  for (std::size_t d : dims_) {
    if (d == 0) throw ShapeError("sdp block dimension must be positive");
    linalg::check_cap(d, d, "sdp block");
  }
  for (std::size_t d : dims_) objective_.push_back(ComplexMatrix(d, d));
}

std::vector<ComplexMatrix> SdpProblem::check_blocks(std::vector<ComplexMatrix> blocks,
                                                    const char* what) const {
  if (blocks.size() != dims_.size()) throw ShapeError(std::string(what) + ": block count mismatch");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].rows() != dims_[k] || blocks[k].cols() != dims_[k])
      throw ShapeError(std::string(what) + ": block dimension mismatch");
    if (!blocks[k].is_hermitian(1e-12 * (1.0 + blocks[k].max_abs())))
      throw ShapeError(std::string(what) + ": block is not Hermitian");
    blocks[k] = blocks[k].hermitized();
  }
  return blocks;
}

void SdpProblem::set_objective(std::vector<ComplexMatrix> blocks) {
  objective_ = check_blocks(std::move(blocks), "objective");
}

void SdpProblem::add_constraint(std::vector<ComplexMatrix> blocks, double rhs) {
  if (!std::isfinite(rhs)) throw ShapeError("constraint rhs must be finite");
  constraints_.push_back(Constraint{check_blocks(std::move(blocks), "constraint"), rhs});
}

std::size_t SdpProblem::total_dim() const {
  std::size_t n = 0;
  for (std::size_t d : dims_) n += d;
  return n;
}

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
  const auto& dims = problem.block_dims();
  const auto& cons = problem.constraints();
  const auto& cobj = problem.objective();
  const std::size_t nblocks = dims.size();
  const std::size_t m = cons.size();
  if (m == 0) throw ShapeError("sdp problem has no constraints");
  const double n_total = static_cast<double>(problem.total_dim());

  SdpSolution sol;
  sol.dual_vector.assign(m, 0.0);

  // Presolve diagnostic: Gram rank of the constraint set.
  {
    RealSym gram;
    gram.n = m;
    gram.a.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < nblocks; ++k) s += inner(cons[i].blocks[k], cons[j].blocks[k]);
        gram.at(i, j) = s;
        gram.at(j, i) = s;
      }
    sol.constraints_dependent = gram_rank(gram) < m;
  }

  // Identity-scaled interior start.
  double b_max = 0.0, b_norm2 = 0.0, a_max = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    b_max = std::max(b_max, std::abs(cons[i].rhs));
    b_norm2 += cons[i].rhs * cons[i].rhs;
    a_max = std::max(a_max, fnorm(cons[i].blocks));
  }
  const double b_norm = std::sqrt(b_norm2);
  const double c_norm = fnorm(cobj);
  const double xi = std::max(10.0, std::sqrt(n_total) * (1.0 + b_max) / (1.0 + a_max));
  const double eta = std::max({10.0, std::sqrt(n_total), c_norm, a_max});

  BlockVec x, s;
  for (std::size_t d : dims) {
    x.push_back(ComplexMatrix::identity(d) * cplx(xi, 0.0));
    s.push_back(ComplexMatrix::identity(d) * cplx(eta, 0.0));
  }
  std::vector<double>& y = sol.dual_vector;
  const double mu0 = xi * eta;

  auto evaluate = [&](double& pobj, double& dobj, std::vector<double>& rp, BlockVec& rd,
                      double& pres, double& dres, double& relgap) {
    pobj = inner(cobj, x);
    dobj = 0.0;
    for (std::size_t i = 0; i < m; ++i) dobj += cons[i].rhs * y[i];
    rp.assign(m, 0.0);
    double rp2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      rp[i] = cons[i].rhs - inner(cons[i].blocks, x);
      rp2 += rp[i] * rp[i];
    }
    pres = std::sqrt(rp2) / (1.0 + b_norm);
    rd.clear();
    for (std::size_t k = 0; k < nblocks; ++k) {
      ComplexMatrix r = cobj[k] - s[k];
      for (std::size_t i = 0; i < m; ++i) {
        if (y[i] != 0.0) r -= cons[i].blocks[k] * cplx(y[i], 0.0);
      }
      rd.push_back(std::move(r));
    }
    dres = fnorm(rd) / (1.0 + c_norm);
    relgap = std::abs(pobj - dobj) / (1.0 + std::max(std::abs(pobj), std::abs(dobj)));
  };

  double pobj = 0.0, dobj = 0.0, pres = 0.0, dres = 0.0, relgap = 1.0;
  std::vector<double> rp;
  BlockVec rd;
  bool diverged = false;
  std::size_t iter = 0;

  for (; iter < options.max_iterations; ++iter) {
    evaluate(pobj, dobj, rp, rd, pres, dres, relgap);
    if (relgap <= options.gap_target && pres <= 1e-8 && dres <= 1e-8) break;

    double mu = inner(x, s) / n_total;
    double y_max = 0.0;
    for (double v : y) y_max = std::max(y_max, std::abs(v));
    double x_tr = 0.0;
    for (std::size_t k = 0; k < nblocks; ++k) x_tr += x[k].trace().real();
    if (y_max > 1e10 || x_tr > 1e12 || mu > 1e8 * (1.0 + mu0)) {
      diverged = true;
      break;
    }

    // Nesterov-Todd scaling per block.
    std::vector<NtScaling> nt(nblocks);
    std::vector<ComplexMatrix> lx(nblocks), ls(nblocks);
    bool chol_ok = true;
    for (std::size_t k = 0; k < nblocks; ++k) {
      auto cx = cholesky(x[k]);
      auto cs = cholesky(s[k]);
      if (!cx || !cs) {
        chol_ok = false;
        break;
      }
      lx[k] = std::move(*cx);
      ls[k] = std::move(*cs);
      const ComplexMatrix p = ls[k].adjoint() * lx[k];
      const auto dec = svd(p);
      ComplexMatrix vs = dec.v;
      for (std::size_t j = 0; j < vs.cols(); ++j) {
        const double scale = 1.0 / std::sqrt(dec.singular_values[j]);
        if (!std::isfinite(scale)) {
          chol_ok = false;
          break;
        }
        for (std::size_t i = 0; i < vs.rows(); ++i) vs(i, j) *= scale;
      }
      if (!chol_ok) break;
      nt[k].g = lx[k] * vs;
      // Scaled iterates satisfy Xhat = Shat = diag(lambda) with these values.
      nt[k].lambda = dec.singular_values;
    }
    if (!chol_ok) break;

    // Scaled constraint blocks and the normal-equations matrix.
    std::vector<BlockVec> t(m);
    for (std::size_t i = 0; i < m; ++i) {
      t[i].reserve(nblocks);
      for (std::size_t k = 0; k < nblocks; ++k)
        t[i].push_back((nt[k].g.adjoint() * cons[i].blocks[k] * nt[k].g).hermitized());
    }
    RealSym nm;
    nm.n = m;
    nm.a.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        double v = inner(t[i], t[j]);
        nm.at(i, j) = v;
        nm.at(j, i) = v;
      }
    RealSym nm_chol = nm;
    double ridge = 0.0;
    bool factored = real_cholesky(nm_chol);
    for (int attempt = 0; !factored && attempt < 3; ++attempt) {
      double tr = 0.0;
      for (std::size_t i = 0; i < m; ++i) tr += nm.at(i, i);
      ridge = (ridge == 0.0) ? 1e-13 * (tr / m + 1.0) : ridge * 1e3;
      nm_chol = nm;
      for (std::size_t i = 0; i < m; ++i) nm_chol.at(i, i) += ridge;
      factored = real_cholesky(nm_chol);
    }
    if (!factored) break;

    BlockVec rdhat;
    for (std::size_t k = 0; k < nblocks; ++k)
      rdhat.push_back((nt[k].g.adjoint() * rd[k] * nt[k].g).hermitized());

    // One Newton solve for a given centering residual in scaled space.
    auto direction = [&](const BlockVec& hinv_rc, std::vector<double>& dy, BlockVec& dxs,
                         BlockVec& ds_hat, BlockVec& dx_unscaled, BlockVec& ds_unscaled) {
      std::vector<double> rhs(m);
      for (std::size_t i = 0; i < m; ++i) {
        double v = rp[i];
        for (std::size_t k = 0; k < nblocks; ++k)
          v += inner(t[i][k], rdhat[k]) - inner(t[i][k], hinv_rc[k]);
        rhs[i] = v;
      }
      dy = real_chol_solve(nm_chol, rhs);
      ds_unscaled.clear();
      for (std::size_t k = 0; k < nblocks; ++k) {
        ComplexMatrix dsb = rd[k];
        for (std::size_t i = 0; i < m; ++i)
          if (dy[i] != 0.0) dsb -= cons[i].blocks[k] * cplx(dy[i], 0.0);
        ds_unscaled.push_back(dsb.hermitized());
      }
      ds_hat.clear();
      dxs.clear();
      dx_unscaled.clear();
      for (std::size_t k = 0; k < nblocks; ++k) {
        ComplexMatrix dsh = (nt[k].g.adjoint() * ds_unscaled[k] * nt[k].g).hermitized();
        ComplexMatrix dxh = hinv_rc[k] - dsh;
        dx_unscaled.push_back((nt[k].g * dxh * nt[k].g.adjoint()).hermitized());
        dxs.push_back(std::move(dxh));
        ds_hat.push_back(std::move(dsh));
      }
    };

    // Predictor: affine direction, H^{-1}(-Lambda^2) = -Lambda.
    BlockVec hinv_aff;
    for (std::size_t k = 0; k < nblocks; ++k) {
      ComplexMatrix d(dims[k], dims[k]);
      for (std::size_t i = 0; i < dims[k]; ++i) d(i, i) = -nt[k].lambda[i];
      hinv_aff.push_back(std::move(d));
    }
    std::vector<double> dy_aff;
    BlockVec dxh_aff, dshat_aff, dx_aff, ds_aff;
    direction(hinv_aff, dy_aff, dxh_aff, dshat_aff, dx_aff, ds_aff);

    double ap = 1.0, ad = 1.0;
    for (std::size_t k = 0; k < nblocks; ++k) {
      ap = std::min(ap, options.boundary_fraction * max_step(lx[k], dx_aff[k]));
      ad = std::min(ad, options.boundary_fraction * max_step(ls[k], ds_aff[k]));
    }

    double gap_aff = 0.0;
    for (std::size_t k = 0; k < nblocks; ++k) {
      ComplexMatrix xa = x[k] + dx_aff[k] * cplx(ap, 0.0);
      ComplexMatrix sa = s[k] + ds_aff[k] * cplx(ad, 0.0);
      gap_aff += inner(xa, sa);
    }
    gap_aff = std::max(gap_aff, 0.0);
    const double gap_cur = mu * n_total;
    double sigma = std::pow(gap_aff / gap_cur, 3.0);
    sigma = std::min(1.0, std::max(0.0, sigma));

    // Corrector: Rc = sigma*mu*I - Lambda^2 - sym(dXhat dShat).
    BlockVec hinv_rc;
    for (std::size_t k = 0; k < nblocks; ++k) {
      const std::size_t d = dims[k];
      const ComplexMatrix prod = dxh_aff[k] * dshat_aff[k];
      ComplexMatrix rc(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          cplx v = -0.5 * (prod(i, j) + std::conj(prod(j, i)));
          if (i == j) v += sigma * mu - nt[k].lambda[i] * nt[k].lambda[i];
          rc(i, j) = 2.0 * v / (nt[k].lambda[i] + nt[k].lambda[j]);
        }
      hinv_rc.push_back(std::move(rc));
    }
    std::vector<double> dy;
    BlockVec dxh, dshat, dx, ds;
    direction(hinv_rc, dy, dxh, dshat, dx, ds);

    ap = 1.0;
    ad = 1.0;
    for (std::size_t k = 0; k < nblocks; ++k) {
      ap = std::min(ap, options.boundary_fraction * max_step(lx[k], dx[k]));
      ad = std::min(ad, options.boundary_fraction * max_step(ls[k], ds[k]));
    }
    for (std::size_t k = 0; k < nblocks; ++k) {
      x[k] = (x[k] + dx[k] * cplx(ap, 0.0)).hermitized();
      s[k] = (s[k] + ds[k] * cplx(ad, 0.0)).hermitized();
    }
    for (std::size_t i = 0; i < m; ++i) y[i] += ad * dy[i];
  }

  evaluate(pobj, dobj, rp, rd, pres, dres, relgap);
  sol.primal_value = pobj;
  sol.dual_value = dobj;
  sol.relative_gap = relgap;
  sol.primal_residual = pres;
  sol.dual_residual = dres;
  sol.iterations = iter;
  sol.primal_blocks = x;
  if (relgap <= options.gap_accept && pres <= 1e-7 && dres <= 1e-7)
    sol.status = SdpStatus::optimal;
  else if (diverged)
    sol.status = SdpStatus::infeasible_suspected;
  else
    sol.status = SdpStatus::max_iterations;
  return sol;
}

std::string status_name(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal:
      return "optimal";
    case SdpStatus::max_iterations:
      return "max_iterations";
    case SdpStatus::infeasible_suspected:
      return "infeasible_suspected";
  }
  return "unknown";
}

SdpProblem make_spectral_norm_problem(const ComplexMatrix& a) {
  if (a.empty()) throw ShapeError("spectral norm sdp requires a nonempty matrix");
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  const std::size_t n = r + c;
  ComplexMatrix obj(n, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      obj(i, r + j) = -a(i, j);
      obj(r + j, i) = -std::conj(a(i, j));
    }
  SdpProblem p({n});
  p.set_objective({obj});
  p.add_constraint({ComplexMatrix::identity(n)}, 1.0);
  return p;
}

SdpNormResult spectral_norm_via_sdp(const ComplexMatrix& a) {
  const SdpSolution sol = solve(make_spectral_norm_problem(a));
  SdpNormResult out;
  out.value = -sol.primal_value;
  out.gap = sol.relative_gap;
  out.iterations = sol.iterations;
  out.status = sol.status;
  return out;
}

SdpProblem make_trace_problem(std::size_t dim) {
  if (dim == 0) throw ShapeError("trace problem needs positive dimension");
  SdpProblem p({dim});
  p.set_objective({ComplexMatrix::identity(dim) * cplx(-1.0, 0.0)});
  p.add_constraint({ComplexMatrix::identity(dim)}, 1.0);
  return p;
}

}  // namespace opnormlab::sdp
