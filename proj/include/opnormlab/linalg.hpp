#pragma once

#include <optional>
#include <vector>

#include "opnormlab/matrix.hpp"

namespace opnormlab::linalg {

/// Which tensor leg an operation acts on.
enum class Leg { first, second };

/// Schatten index; the lab only needs p in {1, 2, inf}.
enum class Schatten { one, two, inf };

/// Economy SVD: a = u * diag(s) * v^adjoint, with s descending and u, v
/// having orthonormal columns (min(rows, cols) of them).
struct SvdResult {
  ComplexMatrix u;
  std::vector<double> singular_values;
  ComplexMatrix v;
};

/// One-sided Jacobi SVD. Throws NumericalError if the sweep cap is hit.
SvdResult svd(const ComplexMatrix& a);

double spectral_norm(const ComplexMatrix& a);
double schatten_norm(const ComplexMatrix& a, Schatten p);

/// Hermitian eigendecomposition h = q * diag(w) * q^adjoint, w ascending.
/// The input is hermitized first; throws if far from Hermitian.
struct EigResult {
  std::vector<double> eigenvalues;
  ComplexMatrix vectors;
};
EigResult hermitian_eig(const ComplexMatrix& h);

/// Lower-triangular Cholesky factor of a Hermitian positive definite matrix,
/// or nullopt if a nonpositive pivot shows the matrix is not PD.
std::optional<ComplexMatrix> cholesky(const ComplexMatrix& h);

/// Solve l * x = b for lower-triangular l (forward substitution).
ComplexMatrix lower_solve(const ComplexMatrix& l, const ComplexMatrix& b);
/// Solve l^adjoint * x = b for lower-triangular l (back substitution).
ComplexMatrix lower_adjoint_solve(const ComplexMatrix& l, const ComplexMatrix& b);

/// Gauss-Jordan inverse with partial pivoting; throws on singular input.
ComplexMatrix inverse(const ComplexMatrix& m);

/// Matrix exponential by scaling-and-squaring with a Taylor tail.
ComplexMatrix expm(const ComplexMatrix& g);

/// Kronecker product with the row-major index convention
/// (i,k),(j,l) -> (i*rowsB + k, j*colsB + l). Checks the size cap.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Row-major vectorization: vec(m) stacks rows into a column.
ComplexMatrix vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols);

/// Transpose one leg of an operator on a bipartite space of shape (n, m).
/// Involutive and exact (a pure permutation of entries).
ComplexMatrix partial_transpose(const ComplexMatrix& x, std::size_t n, std::size_t m, Leg leg);

/// Global entry-count cap per matrix, overridable via OPNORMLAB_CAP.
std::size_t dimension_cap();
/// Throw SizeError if rows*cols exceeds the cap.
void check_cap(std::size_t rows, std::size_t cols, const char* where);

}  // namespace opnormlab::linalg
