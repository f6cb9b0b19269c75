#include "spmor/systems.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace spmor {

namespace {

// Deterministic candidates for pencil-regularity witnesses. A regular pencil
// is singular at finitely many points, so a short list of unstructured
// points at several magnitudes is enough in practice.
const Complex kProbeCandidates[] = {
    {0.5347169, 0.8012623},   {-1.2790351, 0.3589017}, {3.9161083, -2.4217374},
    {0.0731059, 0.0163921},   {25.1327412, 17.6219351}, {-0.0052918, -0.9127345},
    {641.3051264, 87.4190223},
};

Complex find_probe(const std::function<Matrix(Complex)>& pencil_at, const char* what) {
  for (Complex s : kProbeCandidates) {
    try {
      lu_factor(pencil_at(s));
      return s;
    } catch (const SingularMatrix&) {
      continue;
    }
  }
  throw ValidationError(std::string(what) + ": matrix pencil appears singular everywhere "
                        "(not a regular system)");
}

void require_shape(const char* what, const Matrix& m, Index rows, Index cols) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ValidationError(std::string(what) + ": expected " + std::to_string(rows) + "x" +
                          std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
}

// Entrywise closeness used by the Hermitian-structure checks.
bool entrywise_close(const Matrix& a, const Matrix& b, double tol = 1e-12) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.size() == 0) return true;
  const double scale = std::max({1.0, max_norm(a), max_norm(b)});
  return max_norm(a - b) <= tol * scale;
}

}  // namespace

FirstOrderSystem make_first_order(Matrix E, Matrix A, Matrix B, Matrix L, Matrix D) {
  const Index n1 = E.rows();
  require_shape("first-order E", E, n1, n1);
  require_shape("first-order A", A, n1, n1);
  if (B.rows() != n1) throw ValidationError("first-order B: row count mismatch");
  if (L.cols() != n1) throw ValidationError("first-order L: column count mismatch");
  require_shape("first-order D", D, L.rows(), B.cols());
  require_finite("first-order E", E);
  require_finite("first-order A", A);
  require_finite("first-order B", B);
  require_finite("first-order L", L);
  require_finite("first-order D", D);

  FirstOrderSystem sys{std::move(E), std::move(A), std::move(B), std::move(L), std::move(D)};
  sys.probe = find_probe([&sys](Complex s) -> Matrix { return s * sys.E - sys.A; },
                         "first-order system");
  return sys;
}

Matrix SpecialSecondOrderSystem::p_minus_1() const {
  const Index n = dim();
  if (inner_dim() == 0) return Matrix::Zero(n, n);
  if (form == PMinusOneForm::direct) {
    return F1 * G * F2.adjoint();
  }
  return F1 * lu_factor(G).solve(Matrix(F2.adjoint()));
}

SpecialSecondOrderSystem make_special_second_order(Matrix P1, Matrix P0, PMinusOneForm form,
                                                   Matrix F1, Matrix F2, Matrix G, Matrix B,
                                                   Matrix L, Matrix D) {
  const Index n = P1.rows();
  const Index n0 = G.rows();
  require_shape("second-order P1", P1, n, n);
  require_shape("second-order P0", P0, n, n);
  require_shape("second-order G", G, n0, n0);
  require_shape("second-order F1", F1, n, n0);
  require_shape("second-order F2", F2, n, n0);
  if (B.rows() != n) throw ValidationError("second-order B: row count mismatch");
  if (L.cols() != n) throw ValidationError("second-order L: column count mismatch");
  require_shape("second-order D", D, L.rows(), B.cols());
  for (const auto* m : {&P1, &P0, &F1, &F2, &G, &B, &L, &D}) {
    require_finite("second-order data", *m);
  }
  if (form == PMinusOneForm::inverse && n0 > 0) {
    try {
      lu_factor(G);
    } catch (const SingularMatrix&) {
      throw SingularInnerG("second-order system: inverse-form inner matrix G is singular");
    }
  }
  return SpecialSecondOrderSystem{std::move(P1), std::move(P0), form,    std::move(F1),
                                  std::move(F2), std::move(G),  std::move(B),
                                  std::move(L),  std::move(D)};
}

Matrix HigherOrderSystem::poly_at(Complex s) const {
  Matrix acc = P.back();
  for (int i = order() - 1; i >= 0; --i) {
    acc = s * acc + P[static_cast<size_t>(i)];
  }
  return acc;
}

Matrix HigherOrderSystem::output_at(Complex s) const {
  Matrix acc = L.back();
  for (int j = order() - 2; j >= 0; --j) {
    acc = s * acc + L[static_cast<size_t>(j)];
  }
  return acc;
}

HigherOrderSystem make_higher_order(std::vector<Matrix> P, Matrix B, std::vector<Matrix> L,
                                    Matrix D) {
  if (P.size() < 2) throw ValidationError("higher-order system: order must be >= 1");
  const Index n = P[0].rows();
  for (const Matrix& pi : P) require_shape("higher-order P_i", pi, n, n);
  if (B.rows() != n) throw ValidationError("higher-order B: row count mismatch");
  if (L.size() != P.size() - 1) {
    throw ValidationError("higher-order system: need exactly l output maps L_0..L_{l-1}");
  }
  const Index p = L[0].rows();
  for (const Matrix& lj : L) require_shape("higher-order L_j", lj, p, n);
  require_shape("higher-order D", D, p, B.cols());
  for (const Matrix& pi : P) require_finite("higher-order P_i", pi);
  for (const Matrix& lj : L) require_finite("higher-order L_j", lj);
  require_finite("higher-order B", B);
  require_finite("higher-order D", D);

  HigherOrderSystem sys{std::move(P), std::move(B), std::move(L), std::move(D)};
  sys.probe = find_probe([&sys](Complex s) { return sys.poly_at(s); }, "higher-order system");
  return sys;
}

namespace {

Matrix eval_with(const Matrix& inner, const Matrix& lmap, const Matrix& b, const Matrix& d) {
  try {
    return d + lmap * lu_factor(inner).solve(b);
  } catch (const SingularMatrix& e) {
    throw PoleOrSingular(std::string("transfer evaluation: ") + e.what());
  }
}

}  // namespace

Matrix eval_transfer(const FirstOrderSystem& sys, Complex s) {
  return eval_with(s * sys.E - sys.A, sys.L, sys.B, sys.D);
}

Matrix eval_transfer(const SpecialSecondOrderSystem& sys, Complex s) {
  Matrix inner = s * sys.P1 + sys.P0;
  if (sys.inner_dim() > 0) {
    if (s == Complex(0.0, 0.0)) {
      throw PoleOrSingular("transfer evaluation: s = 0 is a pole of the integral term");
    }
    inner += (1.0 / s) * sys.p_minus_1();
  }
  return eval_with(inner, sys.L, sys.B, sys.D);
}

Matrix eval_transfer(const HigherOrderSystem& sys, Complex s) {
  return eval_with(sys.poly_at(s), sys.output_at(s), sys.B, sys.D);
}

Matrix eval_transfer(const AnySystem& sys, Complex s) {
  return std::visit([s](const auto& v) { return eval_transfer(v, s); }, sys);
}

HermitianReport is_hermitian(const SpecialSecondOrderSystem& sys) {
  HermitianReport rep;
  auto check = [&rep](const char* name, const Matrix& a, const Matrix& b) {
    if (!entrywise_close(a, b)) {
      rep.hermitian = false;
      rep.violations.emplace_back(name);
    }
  };
  check("L = B^H", sys.L, sys.B.adjoint());
  check("P0 = P0^H", sys.P0, sys.P0.adjoint());
  check("P1 = P1^H", sys.P1, sys.P1.adjoint());
  check("F1 = F2", sys.F1, sys.F2);
  check("G = G^H", sys.G, sys.G.adjoint());
  return rep;
}

HermitianReport is_hermitian(const HigherOrderSystem& sys) {
  HermitianReport rep;
  auto check = [&rep](const std::string& name, const Matrix& a, const Matrix& b) {
    if (!entrywise_close(a, b)) {
      rep.hermitian = false;
      rep.violations.push_back(name);
    }
  };
  for (size_t i = 0; i < sys.P.size(); ++i) {
    check("P" + std::to_string(i) + " = P" + std::to_string(i) + "^H", sys.P[i],
          sys.P[i].adjoint());
  }
  check("L0 = B^H", sys.L[0], sys.B.adjoint());
  for (size_t j = 1; j < sys.L.size(); ++j) {
    check("L" + std::to_string(j) + " = 0", sys.L[j],
          Matrix::Zero(sys.L[j].rows(), sys.L[j].cols()));
  }
  return rep;
}

HermitianStructure hermitian_structure(const SpecialSecondOrderSystem& sys) {
  const Index n = sys.dim();
  const Index n0 = sys.inner_dim();
  Matrix j = Matrix::Identity(n + n0, n + n0);
  j.bottomRightCorner(n0, n0) *= -1.0;
  return HermitianStructure{HermitianStructure::Kind::second_order, std::move(j)};
}

HermitianStructure hermitian_structure(const HigherOrderSystem& sys, double s0) {
  const int l = sys.order();
  const Index n = sys.dim();
  const Index n1 = static_cast<Index>(l) * n;

  // Shifted coefficient sums Phat_j = sum_{i=0}^{l-j} s0^i P_{j+i}.
  std::vector<Matrix> phat(static_cast<size_t>(l) + 1);
  for (int j = 1; j <= l; ++j) {
    Matrix acc = Matrix::Zero(n, n);
    double s0_pow = 1.0;
    for (int i = 0; i + j <= l; ++i) {
      acc += s0_pow * sys.P[static_cast<size_t>(j + i)];
      s0_pow *= s0;
    }
    phat[static_cast<size_t>(j)] = std::move(acc);
  }

  Matrix upper = Matrix::Identity(n1, n1);
  for (int i = 0; i + 1 < l; ++i) {
    upper.block(i * n, (i + 1) * n, n, n) = -s0 * Matrix::Identity(n, n);
  }

  Matrix anti = Matrix::Zero(n1, n1);
  for (int r = 1; r <= l; ++r) {
    for (int c = 1; c <= l; ++c) {
      if (r == 1 && c == l) {
        anti.block(0, (l - 1) * n, n, n) = Matrix::Identity(n, n);
      } else if (r + c - 1 <= l) {
        anti.block((r - 1) * n, (c - 1) * n, n, n) = phat[static_cast<size_t>(r + c - 1)];
      }
    }
  }

  return HermitianStructure{HermitianStructure::Kind::higher_order, upper * anti};
}

JRelationReport verify_j_relations(const FirstOrderSystem& sys_fo, const HermitianStructure& j,
                                   double s0, double tol) {
  if (j.J.rows() != sys_fo.dim()) {
    throw ValidationError("verify_j_relations: J dimension mismatch");
  }
  JRelationReport report;
  auto run = [&report, tol](const std::string& name, const Matrix& lhs, const Matrix& rhs) {
    JRelationCheck c;
    c.name = name;
    c.max_diff = max_norm(lhs - rhs);
    c.scale = std::max({1.0, max_norm(lhs), max_norm(rhs)});
    c.passed = c.max_diff <= tol * c.scale;
    if (!c.passed) report.all_passed = false;
    report.checks.push_back(std::move(c));
  };

  const Matrix shifted = s0 * sys_fo.E - sys_fo.A;
  if (j.kind == HermitianStructure::Kind::second_order) {
    run("J(s0 E - A) = (s0 E - A)^H J", j.J * shifted, shifted.adjoint() * j.J);
    run("J E = E J", j.J * sys_fo.E, sys_fo.E * j.J);
  } else {
    // For the higher-order J the pencil products are Hermitian, which is the
    // J^H form of the second-order relations.
    run("J(s0 E - A) = (s0 E - A)^H J^H", j.J * shifted, shifted.adjoint() * j.J.adjoint());
    run("J E = E^H J^H", j.J * sys_fo.E, sys_fo.E.adjoint() * j.J.adjoint());
  }
  run("L^H = J B", sys_fo.L.adjoint(), j.J * sys_fo.B);

  if (!report.all_passed) {
    std::string names;
    for (const auto& c : report.checks) {
      if (!c.passed) {
        if (!names.empty()) names += "; ";
        names += c.name + " (max diff " + std::to_string(c.max_diff) + ")";
      }
    }
    throw RelationViolated("J-structure relations violated: " + names);
  }
  return report;
}

}  // namespace spmor
