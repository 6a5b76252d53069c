#include "opnormlab/matrix.hpp"

#include <cmath>

namespace opnormlab {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw ShapeError(msg);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0, 0.0)) {
  require(rows > 0 && cols > 0, "matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require(rows > 0 && cols > 0, "matrix dimensions must be positive");
  require(entries_.size() == rows * cols, "entry count does not match dimensions");
  check_finite();
}

void ComplexMatrix::check_finite() const {
  for (const cplx& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ShapeError("matrix entries must be finite");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<cplx>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  m.check_finite();
  return m;
}

cplx& ComplexMatrix::at(std::size_t i, std::size_t j) {
  require(i < rows_ && j < cols_, "matrix index out of range");
  return entries_[i * cols_ + j];
}

const cplx& ComplexMatrix::at(std::size_t i, std::size_t j) const {
  require(i < rows_ && j < cols_, "matrix index out of range");
  return entries_[i * cols_ + j];
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in addition");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in subtraction");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : entries_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.cols_ == b.rows_, "inner dimensions do not match in product");
  ComplexMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      const cplx* brow = &b.entries_[k * b.cols_];
      cplx* crow = &c.entries_[i * c.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m = *this;
  for (cplx& z : m.entries_) z = std::conj(z);
  return m;
}

ComplexMatrix ComplexMatrix::hermitized() const {
  require(is_square(), "hermitized requires a square matrix");
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return m;
}

cplx ComplexMatrix::trace() const {
  require(is_square(), "trace requires a square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& o, double tol) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k)
    if (std::abs(entries_[k] - o.entries_[k]) > tol) return false;
  return true;
}

ComplexMatrix ComplexMatrix::padded_to(std::size_t rows, std::size_t cols) const {
  require(rows >= rows_ && cols >= cols_, "padding cannot shrink a matrix");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::padded_square() const {
  const std::size_t n = std::max(rows_, cols_);
  return padded_to(n, n);
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows,
                                   std::size_t cols) const {
  require(r0 + rows <= rows_ && c0 + cols <= cols_, "block exceeds matrix bounds");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& m) {
  require(r0 + m.rows_ <= rows_ && c0 + m.cols_ <= cols_, "block exceeds matrix bounds");
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

}  // namespace opnormlab
