#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "spmor/errors.hpp"

namespace spmor {

// All numerics run on dense column-major complex matrices. Real-valued
// systems are stored with zero imaginary parts; at the scales this library
// targets (N up to a few thousand) the complex path is cheap enough that a
// separate real path is not worth the code.
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

bool is_finite(const Matrix& m);

// Throws ValidationError when m contains NaN or Inf entries.
void require_finite(const char* what, const Matrix& m);

// max |entry|; 0 for empty matrices.
double max_norm(const Matrix& m);

// Frobenius-relative difference ||a-b||_F / max(||ref||_F, floor).
double rel_diff(const Matrix& a, const Matrix& ref);

// Partial-pivoted LU of a square matrix, reusable for many right-hand sides.
// A factorization is immutable and safe to share across threads.
class LuFactorization {
 public:
  // Throws SingularMatrix when a pivot magnitude falls below
  // 1e-14 x (largest column 2-norm of m).
  explicit LuFactorization(const Matrix& m);

  Matrix solve(const Matrix& rhs) const;

  const Matrix& factors() const { return lu_.matrixLU(); }
  std::vector<Index> permutation() const;
  Index dimension() const { return dim_; }

 private:
  Eigen::PartialPivLU<Matrix> lu_;
  Index dim_;
};

LuFactorization lu_factor(const Matrix& m);

struct OrthoResult {
  Matrix q;                  // orthonormal columns
  std::vector<Index> kept;   // indices of surviving input columns
};

// Per-column bookkeeping from the Gram-Schmidt sweep, consumed by the
// Krylov deflation log.
struct OrthoColumnRecord {
  Index column = 0;
  double original_norm = 0.0;
  double residual_norm = 0.0;
  bool kept = false;
};

struct OrthoDetail {
  Matrix q;
  std::vector<Index> kept;
  std::vector<OrthoColumnRecord> columns;
};

// Modified Gram-Schmidt with one full re-orthogonalization pass.
// Returns an orthonormal basis of the part of range(cols) outside
// range(against); a column is dropped when its residual after
// orthogonalization is below tol x its original norm. `against` (when
// non-null) must already have orthonormal columns.
OrthoResult orthonormalize(const Matrix& cols, const Matrix* against, double tol);

OrthoDetail orthonormalize_detail(const Matrix& cols, const Matrix* against, double tol);

// Default relative tolerance used for deflation and rank trimming.
inline constexpr double kDefaultRankTol = 1e-10;

}  // namespace spmor
