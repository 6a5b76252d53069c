#include "opnormlab/counterexample.hpp"

#include <algorithm>
#include <cmath>

#include "opnormlab/linalg.hpp"

namespace opnormlab::counterexample {

double IsometryFamily::isometry_residual() const {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      ComplexMatrix g = s[j].adjoint() * s[k];
      if (j == k) g -= ComplexMatrix::identity(d);
      m = std::max(m, g.max_abs());
    }
  return m;
}

double IsometryFamily::completeness_residual() const {
  ComplexMatrix acc(n * d, n * d);
  for (std::size_t j = 0; j < n; ++j) acc += s[j] * s[j].adjoint();
  acc -= ComplexMatrix::identity(n * d);
  return acc.max_abs();
}

IsometryFamily shift_family(std::size_t n, std::size_t d) {
  if (n == 0 || d == 0) throw ShapeError("shift_family needs n >= 1 and d >= 1");
  linalg::check_cap(n * d, d, "shift family");
  IsometryFamily fam;
  fam.n = n;
  fam.d = d;
  fam.s.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix sj(n * d, d);
    for (std::size_t r = 0; r < d; ++r) sj(j * d + r, r) = 1.0;
    fam.s.push_back(std::move(sj));
  }
  return fam;
}

tensornorm::TensorElement build_xn(const IsometryFamily& fam) {
  std::vector<tensornorm::TensorElement::Pair> pairs;
  pairs.reserve(fam.n);
  for (const ComplexMatrix& sj : fam.s)
    pairs.push_back({sj.padded_square(), sj.transpose().padded_square()});
  return tensornorm::TensorElement(std::move(pairs));
}

tensornorm::TensorElement build_yn(const IsometryFamily& fam) {
  std::vector<tensornorm::TensorElement::Pair> pairs;
  pairs.reserve(fam.n);
  for (const ComplexMatrix& sj : fam.s)
    pairs.push_back({sj.padded_square(), sj.padded_square()});
  return tensornorm::TensorElement(std::move(pairs));
}

std::vector<GapRow> gap_experiment(std::size_t n_max, std::size_t d) {
  if (n_max < 2) throw ShapeError("gap_experiment needs n_max >= 2");
  std::vector<GapRow> rows;
  rows.reserve(n_max - 1);
  for (std::size_t n = 2; n <= n_max; ++n) {
    const IsometryFamily fam = shift_family(n, d);
    const tensornorm::TensorElement xn = build_xn(fam);
    const tensornorm::TensorElement yn = build_yn(fam);
    GapRow row;
    row.n = n;
    row.h_upper = tensornorm::haagerup_upper(xn);
    row.min_flipped = tensornorm::min_norm(yn);
    row.ratio = row.min_flipped / row.h_upper;
    row.certificate = tensornorm::theorem1_certificate(yn);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace opnormlab::counterexample
