#include "spmor/linearize.hpp"

namespace spmor {

std::pair<FirstOrderSystem, LinearizationMap> linearize_second_order(
    const SpecialSecondOrderSystem& sys) {
  const Index n = sys.dim();
  const Index n0 = sys.inner_dim();
  const Index n1 = n + n0;
  const Index m = sys.inputs();
  const Index p = sys.outputs();

  Matrix a = Matrix::Zero(n1, n1);
  Matrix e = Matrix::Zero(n1, n1);
  a.topLeftCorner(n, n) = -sys.P0;
  e.topLeftCorner(n, n) = sys.P1;
  if (n0 > 0) {
    if (sys.form == PMinusOneForm::direct) {
      a.topRightCorner(n, n0) = -(sys.F1 * sys.G);
      a.bottomLeftCorner(n0, n) = (sys.F2 * sys.G).adjoint();
      e.bottomRightCorner(n0, n0) = sys.G.adjoint();
    } else {
      // Construction-time validation guarantees G is nonsingular here.
      a.topRightCorner(n, n0) = -sys.F1;
      a.bottomLeftCorner(n0, n) = sys.F2.adjoint();
      e.bottomRightCorner(n0, n0) = sys.G;
    }
  }

  Matrix b = Matrix::Zero(n1, m);
  b.topRows(n) = sys.B;
  Matrix l = Matrix::Zero(p, n1);
  l.leftCols(n) = sys.L;

  LinearizationMap map;
  map.source = LinearizationMap::SourceKind::second_order;
  map.source_dim = n;
  map.inner_dim = n0;
  map.target_dim = n1;
  map.block_offsets = {0, n};

  return {make_first_order(std::move(e), std::move(a), std::move(b), std::move(l), sys.D),
          map};
}

std::pair<FirstOrderSystem, LinearizationMap> linearize_higher_order(
    const HigherOrderSystem& sys) {
  const int l = sys.order();
  const Index n = sys.dim();
  const Index n1 = static_cast<Index>(l) * n;
  const Index m = sys.inputs();
  const Index p = sys.outputs();

  Matrix e = Matrix::Identity(n1, n1);
  e.bottomRightCorner(n, n) = sys.P.back();

  Matrix a = Matrix::Zero(n1, n1);
  for (int i = 0; i + 1 < l; ++i) {
    a.block(i * n, (i + 1) * n, n, n) = Matrix::Identity(n, n);
  }
  for (int i = 0; i < l; ++i) {
    a.block((l - 1) * n, i * n, n, n) = -sys.P[static_cast<size_t>(i)];
  }

  Matrix b = Matrix::Zero(n1, m);
  b.bottomRows(n) = sys.B;

  Matrix lmap(p, n1);
  for (int j = 0; j < l; ++j) {
    lmap.middleCols(j * n, n) = sys.L[static_cast<size_t>(j)];
  }

  LinearizationMap map;
  map.source = LinearizationMap::SourceKind::higher_order;
  map.source_dim = n;
  map.order = l;
  map.target_dim = n1;
  for (int i = 0; i < l; ++i) map.block_offsets.push_back(i * n);

  return {make_first_order(std::move(e), std::move(a), std::move(b), std::move(lmap), sys.D),
          map};
}

}  // namespace spmor
