#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace opnormlab {

using cplx = std::complex<double>;

/// Dimension or shape mismatch between operands.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Requested object exceeds the configured size cap.
struct SizeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An iterative kernel failed to converge; carries the iteration count.
struct NumericalError : std::runtime_error {
  NumericalError(const std::string& what, std::size_t iters)
      : std::runtime_error(what), iterations(iters) {}
  std::size_t iterations;
};

/// Dense complex matrix, row-major. Constructors reject non-finite entries;
/// a default-constructed matrix is the empty 0x0 placeholder.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diag(const std::vector<cplx>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_ * cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  cplx& at(std::size_t i, std::size_t j);
  const cplx& at(std::size_t i, std::size_t j) const;

  const std::vector<cplx>& entries() const { return entries_; }
  std::vector<cplx>& entries() { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  /// 0.5 * (M + M*); requires square.
  ComplexMatrix hermitized() const;

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_hermitian(double tol) const;
  bool approx_equal(const ComplexMatrix& o, double tol) const;

  /// Copy into the top-left corner of a rows x cols zero matrix.
  ComplexMatrix padded_to(std::size_t rows, std::size_t cols) const;
  /// Zero-pad the smaller dimension so the result is square.
  ComplexMatrix padded_square() const;

  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& m);

 private:
  void check_finite() const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

}  // namespace opnormlab
