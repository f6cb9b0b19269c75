#pragma once

#include <vector>

#include "spmor/dense.hpp"
#include "spmor/systems.hpp"

namespace spmor {

// Shift-invert operator pair of the moment expansion about s0:
//   M = (s0 E - A)^-1 E,   R = (s0 E - A)^-1 B.
// The LU factorization of s0 E - A is computed once and reused for every
// application; the operator is immutable and safe to share across threads.
class KrylovOperator {
 public:
  KrylovOperator(LuFactorization shifted, Matrix e, Matrix b, Complex s0);

  // M * x, realized as solve((s0 E - A) y = E x).
  Matrix apply(const Matrix& x) const;

  // Starting block R.
  Matrix rhs() const;

  Index dim() const { return e_.rows(); }
  Index block_width() const { return b_.cols(); }
  Complex s0() const { return s0_; }

 private:
  LuFactorization shifted_;
  Matrix e_;
  Matrix b_;
  Complex s0_;
};

// Throws ExpansionPointIsPole when s0 E - A cannot be factored.
KrylovOperator make_operator(const FirstOrderSystem& sys, Complex s0);

struct DeflationRecord {
  int iteration = 0;      // 1-based block index j
  Index column = 0;       // 0-based position inside the candidate block
  double residual = 0.0;  // norm after orthogonalization
  double original_norm = 0.0;
};

// Orthonormal basis of the deflated block-Krylov subspace K_n(M, R).
struct KrylovBasis {
  Matrix V;                          // N1 x n, orthonormal columns
  std::vector<Index> boundaries;     // n(1) < n(2) < ... for the built blocks
  std::vector<Index> block_widths;   // m_1 >= m_2 >= ...
  std::vector<DeflationRecord> deflation_log;
  Complex s0{0.0, 0.0};

  Index n() const { return V.cols(); }
  int blocks() const { return static_cast<int>(boundaries.size()); }

  // j such that boundaries[j-1] == n (reduction happens at block ends only).
  int j_of(Index n_value) const;
};

// Thrown when the requested dimension exceeds the full deflated Krylov
// space; carries the maximal basis that was built.
class TargetUnreachable : public Error {
 public:
  TargetUnreachable(const std::string& what, KrylovBasis partial)
      : Error(what), partial_(std::move(partial)) {}
  const KrylovBasis& partial() const { return partial_; }

 private:
  KrylovBasis partial_;
};

// Block Arnoldi with deflation. Candidate blocks are orthogonalized against
// the whole basis (modified Gram-Schmidt with one re-orthogonalization
// pass); a candidate column whose residual falls below tol x its original
// norm is deflated and logged, and does not propagate to later blocks.
// Construction stops at the first block boundary n(j) >= target_n, so the
// returned dimension may exceed target_n (never a mid-block cut).
KrylovBasis build_basis(const KrylovOperator& op, Index target_n, double tol = kDefaultRankTol);

}  // namespace spmor
