#include "spmor/reduce.hpp"

#include <string>
#include <utility>

namespace spmor {

namespace {

void check_reduced_pencil(const Matrix& en, const Matrix& an, Complex s0) {
  try {
    lu_factor(s0 * en - an);
  } catch (const SingularMatrix& e) {
    throw ReducedPencilSingular("reduced pencil singular at the expansion point: " +
                                std::string(e.what()));
  }
}

BasisProvenance provenance_from(const KrylovBasis& basis, bool hermitian, bool structured) {
  BasisProvenance prov;
  prov.boundaries = basis.boundaries;
  prov.n = basis.n();
  prov.j = basis.blocks();
  prov.s0 = basis.s0;
  prov.hermitian_source = hermitian;
  prov.structure_preserving = structured;
  return prov;
}

}  // namespace

const char* method_name(ReduceMethod m) {
  switch (m) {
    case ReduceMethod::prima: return "prima";
    case ReduceMethod::sprim: return "sprim";
    case ReduceMethod::higher_order: return "higher";
  }
  return "?";
}

FirstOrderSystem ReducedModel::first_order() const {
  return make_first_order(En, An, Bn, Ln, Dn);
}

ReducedModel prima_reduce(const FirstOrderSystem& sys, const KrylovBasis& basis) {
  if (basis.V.rows() != sys.dim()) {
    throw ValidationError("prima_reduce: basis dimension does not match the system");
  }
  ReducedModel model;
  model.method = ReduceMethod::prima;
  model.An = basis.V.adjoint() * sys.A * basis.V;
  model.En = basis.V.adjoint() * sys.E * basis.V;
  model.Bn = basis.V.adjoint() * sys.B;
  model.Ln = sys.L * basis.V;
  model.Dn = sys.D;
  model.projector = basis.V;
  model.provenance = provenance_from(basis, false, false);
  check_reduced_pencil(model.En, model.An, basis.s0);
  return model;
}

ReducedModel sprim_reduce(const SpecialSecondOrderSystem& sys, const FirstOrderSystem& sys_fo,
                          const LinearizationMap& map, const KrylovBasis& basis, double tol) {
  if (map.source != LinearizationMap::SourceKind::second_order ||
      map.source_dim != sys.dim() || map.inner_dim != sys.inner_dim()) {
    throw ValidationError("sprim_reduce: linearization map does not match the source system");
  }
  if (basis.V.rows() != map.target_dim || sys_fo.dim() != map.target_dim) {
    throw ValidationError("sprim_reduce: basis dimension does not match the linearization");
  }

  const Index n = sys.dim();
  const Index n0 = sys.inner_dim();

  // Split the basis by source coordinates and re-orthonormalize each block;
  // rank-deficient blocks shrink, which keeps Vtilde full column rank while
  // only enlarging its range relative to the basis.
  Matrix v1 = orthonormalize(basis.V.topRows(n), nullptr, tol).q;
  Matrix v2 = n0 > 0 ? orthonormalize(basis.V.bottomRows(n0), nullptr, tol).q : Matrix(0, 0);
  const Index n1c = v1.cols();
  const Index n2c = v2.cols();

  ReducedModel model;
  model.method = ReduceMethod::sprim;
  model.V1 = v1;
  model.V2 = v2;

  Matrix p1t = v1.adjoint() * sys.P1 * v1;
  Matrix p0t = v1.adjoint() * sys.P0 * v1;
  Matrix bt = v1.adjoint() * sys.B;
  Matrix lt = sys.L * v1;

  Matrix gt(0, 0), f1t(0, 0), f2t(0, 0);
  Matrix off12(n1c, n2c), off21(n2c, n1c), e22(n2c, n2c);
  if (n0 > 0) {
    gt = v2.adjoint() * sys.G * v2;
    LuFactorization gt_lu = [&gt]() {
      try {
        return lu_factor(gt);
      } catch (const SingularMatrix& e) {
        throw ReducedInnerGSingular("projected inner matrix V2^H G V2 is singular: " +
                                    std::string(e.what()));
      }
    }();

    if (sys.form == PMinusOneForm::direct) {
      const Matrix w1 = v1.adjoint() * (sys.F1 * sys.G) * v2;
      const Matrix w2 = v1.adjoint() * (sys.F2 * sys.G) * v2;
      off12 = -w1;
      off21 = w2.adjoint();
      e22 = gt.adjoint();
      // Ftilde_i = (V1^H F_i G V2) Gtilde^-1, via Gtilde^H x = w^H.
      LuFactorization gth_lu = lu_factor(gt.adjoint());
      f1t = gth_lu.solve(w1.adjoint()).adjoint();
      f2t = gth_lu.solve(w2.adjoint()).adjoint();
    } else {
      f1t = v1.adjoint() * sys.F1 * v2;
      f2t = v1.adjoint() * sys.F2 * v2;
      off12 = -f1t;
      off21 = f2t.adjoint();
      e22 = gt;
    }
  }

  const Index nr = n1c + n2c;
  model.An = Matrix::Zero(nr, nr);
  model.En = Matrix::Zero(nr, nr);
  model.An.topLeftCorner(n1c, n1c) = -p0t;
  model.En.topLeftCorner(n1c, n1c) = p1t;
  if (n0 > 0) {
    model.An.topRightCorner(n1c, n2c) = off12;
    model.An.bottomLeftCorner(n2c, n1c) = off21;
    model.En.bottomRightCorner(n2c, n2c) = e22;
  }
  model.Bn = Matrix::Zero(nr, sys.inputs());
  model.Bn.topRows(n1c) = bt;
  model.Ln = Matrix::Zero(sys.outputs(), nr);
  model.Ln.leftCols(n1c) = lt;
  model.Dn = sys.D;

  model.projector = Matrix::Zero(map.target_dim, nr);
  model.projector.topLeftCorner(n, n1c) = v1;
  if (n0 > 0) model.projector.bottomRightCorner(n0, n2c) = v2;

  model.second_order = make_special_second_order(p1t, p0t, sys.form, f1t, f2t, gt, bt, lt,
                                                 sys.D);
  model.provenance = provenance_from(basis, is_hermitian(sys).hermitian, true);
  check_reduced_pencil(model.En, model.An, basis.s0);
  return model;
}

ReducedModel higher_order_reduce(const HigherOrderSystem& sys, const FirstOrderSystem& sys_fo,
                                 const KrylovBasis& basis, double tol) {
  const int l = sys.order();
  const Index n = sys.dim();
  if (sys_fo.dim() != static_cast<Index>(l) * n || basis.V.rows() != sys_fo.dim()) {
    throw ValidationError("higher_order_reduce: basis does not match the companion form");
  }

  // The companion-form Krylov space consists of l stacked copies of one
  // subspace of C^N; recover it by concatenating the row blocks.
  const Index nk = basis.n();
  Matrix concat(n, static_cast<Index>(l) * nk);
  for (int i = 0; i < l; ++i) {
    concat.middleCols(static_cast<Index>(i) * nk, nk) = basis.V.middleRows(i * n, n);
  }
  Matrix sn = orthonormalize(concat, nullptr, tol).q;
  const Index r = sn.cols();

  ReducedModel model;
  model.method = ReduceMethod::higher_order;
  model.Sn = sn;
  model.sn_excess = r - nk;

  std::vector<Matrix> pt(sys.P.size());
  for (size_t i = 0; i < sys.P.size(); ++i) pt[i] = sn.adjoint() * sys.P[i] * sn;
  Matrix bt = sn.adjoint() * sys.B;
  std::vector<Matrix> ltj(sys.L.size());
  for (size_t j = 0; j < sys.L.size(); ++j) ltj[j] = sys.L[j] * sn;

  const Index nr = static_cast<Index>(l) * r;
  model.En = Matrix::Identity(nr, nr);
  model.En.bottomRightCorner(r, r) = pt.back();
  model.An = Matrix::Zero(nr, nr);
  for (int i = 0; i + 1 < l; ++i) {
    model.An.block(i * r, (i + 1) * r, r, r) = Matrix::Identity(r, r);
  }
  for (int i = 0; i < l; ++i) {
    model.An.block((l - 1) * r, i * r, r, r) = -pt[static_cast<size_t>(i)];
  }
  model.Bn = Matrix::Zero(nr, sys.inputs());
  model.Bn.bottomRows(r) = bt;
  model.Ln = Matrix(sys.outputs(), nr);
  for (int j = 0; j < l; ++j) {
    model.Ln.middleCols(j * r, r) = ltj[static_cast<size_t>(j)];
  }
  model.Dn = sys.D;

  model.projector = Matrix::Zero(static_cast<Index>(l) * n, nr);
  for (int i = 0; i < l; ++i) {
    model.projector.block(i * n, static_cast<Index>(i) * r, n, r) = sn;
  }

  try {
    model.higher_order = make_higher_order(pt, bt, ltj, sys.D);
  } catch (const ValidationError& e) {
    throw ReducedPencilSingular("reduced matrix polynomial is not regular: " +
                                std::string(e.what()));
  }
  model.provenance = provenance_from(basis, is_hermitian(sys).hermitian, true);
  check_reduced_pencil(model.En, model.An, basis.s0);
  return model;
}

}  // namespace spmor
