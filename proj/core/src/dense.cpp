#include "spmor/dense.hpp"

#include <algorithm>
#include <cmath>

namespace spmor {

bool is_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex& v = m(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  }
  return true;
}

void require_finite(const char* what, const Matrix& m) {
  if (!is_finite(m)) {
    throw ValidationError(std::string(what) + ": non-finite matrix entries");
  }
}

double max_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double rel_diff(const Matrix& a, const Matrix& ref) {
  const double denom = std::max(ref.norm(), 1e-300);
  return (a - ref).norm() / denom;
}

LuFactorization::LuFactorization(const Matrix& m) : dim_(m.rows()) {
  if (m.rows() != m.cols()) {
    throw ValidationError("lu_factor: matrix must be square");
  }
  require_finite("lu_factor", m);

  double max_col_norm = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    max_col_norm = std::max(max_col_norm, m.col(j).norm());
  }

  lu_.compute(m);

  // Partial pivoting leaves |U(k,k)| as the pivot magnitudes.
  const double floor = 1e-14 * max_col_norm;
  for (Index k = 0; k < dim_; ++k) {
    if (std::abs(lu_.matrixLU()(k, k)) <= floor) {
      throw SingularMatrix("lu_factor: pivot " + std::to_string(k) +
                           " below threshold (numerically singular matrix)");
    }
  }
}

Matrix LuFactorization::solve(const Matrix& rhs) const {
  if (rhs.rows() != dim_) {
    throw ValidationError("solve: right-hand side row count mismatch");
  }
  return lu_.solve(rhs);
}

std::vector<Index> LuFactorization::permutation() const {
  const auto& perm = lu_.permutationP().indices();
  return std::vector<Index>(perm.data(), perm.data() + perm.size());
}

LuFactorization lu_factor(const Matrix& m) { return LuFactorization(m); }

OrthoDetail orthonormalize_detail(const Matrix& cols, const Matrix* against, double tol) {
  if (tol <= 0.0) {
    throw ValidationError("orthonormalize: tolerance must be positive");
  }
  require_finite("orthonormalize", cols);
  if (against != nullptr && against->size() > 0 && against->rows() != cols.rows()) {
    throw ValidationError("orthonormalize: row count mismatch with `against`");
  }

  OrthoDetail out;
  out.q.resize(cols.rows(), cols.cols());
  Index accepted = 0;

  for (Index j = 0; j < cols.cols(); ++j) {
    Vector v = cols.col(j);
    const double orig = v.norm();

    // One MGS sweep plus one full re-orthogonalization pass.
    for (int pass = 0; pass < 2; ++pass) {
      if (against != nullptr) {
        for (Index k = 0; k < against->cols(); ++k) {
          v -= against->col(k) * against->col(k).dot(v);
        }
      }
      for (Index k = 0; k < accepted; ++k) {
        v -= out.q.col(k) * out.q.col(k).dot(v);
      }
    }

    const double resid = v.norm();
    OrthoColumnRecord rec{j, orig, resid, false};
    if (orig > 0.0 && resid >= tol * orig) {
      out.q.col(accepted) = v / resid;
      out.kept.push_back(j);
      rec.kept = true;
      ++accepted;
    }
    out.columns.push_back(rec);
  }

  out.q.conservativeResize(cols.rows(), accepted);
  return out;
}

OrthoResult orthonormalize(const Matrix& cols, const Matrix* against, double tol) {
  OrthoDetail d = orthonormalize_detail(cols, against, tol);
  return OrthoResult{std::move(d.q), std::move(d.kept)};
}

}  // namespace spmor
