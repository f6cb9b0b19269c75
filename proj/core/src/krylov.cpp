#include "spmor/krylov.hpp"

#include <string>
#include <utility>

namespace spmor {

KrylovOperator::KrylovOperator(LuFactorization shifted, Matrix e, Matrix b, Complex s0)
    : shifted_(std::move(shifted)), e_(std::move(e)), b_(std::move(b)), s0_(s0) {}

Matrix KrylovOperator::apply(const Matrix& x) const { return shifted_.solve(e_ * x); }

Matrix KrylovOperator::rhs() const { return shifted_.solve(b_); }

KrylovOperator make_operator(const FirstOrderSystem& sys, Complex s0) {
  try {
    LuFactorization shifted = lu_factor(s0 * sys.E - sys.A);
    return KrylovOperator(std::move(shifted), sys.E, sys.B, s0);
  } catch (const SingularMatrix& e) {
    throw ExpansionPointIsPole("expansion point is a pole of the system pencil: " +
                               std::string(e.what()));
  }
}

int KrylovBasis::j_of(Index n_value) const {
  for (size_t j = 0; j < boundaries.size(); ++j) {
    if (boundaries[j] == n_value) return static_cast<int>(j) + 1;
  }
  throw ValidationError("dimension " + std::to_string(n_value) +
                        " is not a block boundary of this basis");
}

KrylovBasis build_basis(const KrylovOperator& op, Index target_n, double tol) {
  if (target_n < 1) throw ValidationError("build_basis: target dimension must be >= 1");
  if (tol <= 0.0) throw ValidationError("build_basis: tolerance must be positive");

  KrylovBasis basis;
  basis.s0 = op.s0();
  basis.V.resize(op.dim(), 0);

  Matrix candidate = op.rhs();
  int iteration = 0;
  while (true) {
    ++iteration;
    if (candidate.cols() == 0) break;

    OrthoDetail d = orthonormalize_detail(candidate, basis.V.cols() > 0 ? &basis.V : nullptr, tol);
    for (const OrthoColumnRecord& rec : d.columns) {
      if (!rec.kept) {
        basis.deflation_log.push_back(
            DeflationRecord{iteration, rec.column, rec.residual_norm, rec.original_norm});
      }
    }
    if (d.q.cols() == 0) break;  // block fully deflated: Krylov space exhausted

    const Index old_n = basis.V.cols();
    basis.V.conservativeResize(op.dim(), old_n + d.q.cols());
    basis.V.rightCols(d.q.cols()) = d.q;
    basis.block_widths.push_back(d.q.cols());
    basis.boundaries.push_back(basis.V.cols());

    if (basis.V.cols() >= target_n) return basis;

    candidate = op.apply(d.q);
  }

  throw TargetUnreachable("Krylov space exhausted at dimension " +
                              std::to_string(basis.V.cols()) + " before reaching target " +
                              std::to_string(target_n),
                          std::move(basis));
}

}  // namespace spmor
