#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spmor/dense.hpp"

namespace spmor {

// First-order descriptor system  E z' - A z = B u,  y = D u + L z,
// with transfer function H(s) = D + L (sE - A)^-1 B.
struct FirstOrderSystem {
  Matrix E;  // descriptor (N1 x N1)
  Matrix A;  // dynamics   (N1 x N1)
  Matrix B;  // input map  (N1 x m)
  Matrix L;  // output map (p x N1)
  Matrix D;  // feedthrough (p x m)

  // Point where sE - A was verified nonsingular (pencil regularity witness).
  Complex probe{0.0, 0.0};

  Index dim() const { return E.rows(); }
  Index inputs() const { return B.cols(); }
  Index outputs() const { return L.rows(); }
};

// Validates shapes and finiteness and finds a regularity witness.
FirstOrderSystem make_first_order(Matrix E, Matrix A, Matrix B, Matrix L, Matrix D);

// How the integral-term coefficient P_{-1} of a special second-order system
// is factored: either F1 * G * F2^H (G need not be invertible) or
// F1 * G^-1 * F2^H (G invertible). RCL circuits use the inverse form with
// F1 = F2 = Al^T and G the inductance matrix.
enum class PMinusOneForm { direct, inverse };

// Special second-order system of integro-DAEs
//   P1 x' + P0 x + P_{-1} Int x = B u,   y = D u + L x,
// with H(s) = D + L (s P1 + P0 + s^-1 P_{-1})^-1 B.
// N0 = 0 (empty F1/F2/G) means P_{-1} = 0.
struct SpecialSecondOrderSystem {
  Matrix P1;
  Matrix P0;
  PMinusOneForm form = PMinusOneForm::direct;
  Matrix F1;  // N x N0
  Matrix F2;  // N x N0
  Matrix G;   // N0 x N0
  Matrix B;   // N x m
  Matrix L;   // p x N
  Matrix D;   // p x m

  Index dim() const { return P1.rows(); }
  Index inner_dim() const { return G.rows(); }
  Index inputs() const { return B.cols(); }
  Index outputs() const { return L.rows(); }

  // Materializes P_{-1}; solves with G for the inverse form.
  Matrix p_minus_1() const;
};

SpecialSecondOrderSystem make_special_second_order(Matrix P1, Matrix P0,
                                                   PMinusOneForm form, Matrix F1,
                                                   Matrix F2, Matrix G, Matrix B,
                                                   Matrix L, Matrix D);

// General order-l system
//   P_l x^(l) + ... + P_1 x' + P_0 x = B u,
//   y = D u + L_{l-1} x^(l-1) + ... + L_0 x,
// with H(s) = D + L(s) P(s)^-1 B, P(s) = sum s^i P_i, L(s) = sum s^j L_j.
struct HigherOrderSystem {
  std::vector<Matrix> P;  // size l+1, P[i] multiplies x^(i)
  Matrix B;               // N x m
  std::vector<Matrix> L;  // size l, L[j] multiplies x^(j)
  Matrix D;               // p x m

  Complex probe{0.0, 0.0};  // point where P(s) was verified nonsingular

  int order() const { return static_cast<int>(P.size()) - 1; }
  Index dim() const { return B.rows(); }
  Index inputs() const { return B.cols(); }
  Index outputs() const { return D.rows(); }

  Matrix poly_at(Complex s) const;    // P(s)
  Matrix output_at(Complex s) const;  // L(s)
};

HigherOrderSystem make_higher_order(std::vector<Matrix> P, Matrix B,
                                    std::vector<Matrix> L, Matrix D);

using AnySystem = std::variant<FirstOrderSystem, SpecialSecondOrderSystem, HigherOrderSystem>;

// Transfer-function evaluation. Throws PoleOrSingular when the inner matrix
// cannot be factored (s at or numerically near a pole).
Matrix eval_transfer(const FirstOrderSystem& sys, Complex s);
Matrix eval_transfer(const SpecialSecondOrderSystem& sys, Complex s);
Matrix eval_transfer(const HigherOrderSystem& sys, Complex s);
Matrix eval_transfer(const AnySystem& sys, Complex s);

struct HermitianReport {
  bool hermitian = true;
  std::vector<std::string> violations;  // names of the failed conditions
};

// Second order: L = B^H, P0 = P0^H, P1 = P1^H, F1 = F2, G = G^H.
HermitianReport is_hermitian(const SpecialSecondOrderSystem& sys);
// Order l: P_i = P_i^H for all i, L_0 = B^H, L_j = 0 for j >= 1.
HermitianReport is_hermitian(const HigherOrderSystem& sys);

// The indefinite matrix that encodes Hermitian structure of the equivalent
// first-order formulation: diag(I_N, -I_N0) for second-order sources, and
// for an order-l source the product of the upper bidiagonal (I, -s0 I)
// matrix with the anti-triangular matrix of the shifted coefficient sums
// Phat_j = sum_i s0^i P_{j+i} (top-right block replaced by I).
struct HermitianStructure {
  enum class Kind { second_order, higher_order };
  Kind kind = Kind::second_order;
  Matrix J;
};

HermitianStructure hermitian_structure(const SpecialSecondOrderSystem& sys);
HermitianStructure hermitian_structure(const HigherOrderSystem& sys, double s0);

struct JRelationCheck {
  std::string name;
  double max_diff = 0.0;
  double scale = 0.0;  // max-norm used to scale the tolerance
  bool passed = false;
};

struct JRelationReport {
  std::vector<JRelationCheck> checks;
  bool all_passed = true;
};

// Verifies, to an entrywise tolerance of `tol x max-norm`:
//   J (s0 E - A) Hermitian      (second order: equals (s0 E - A)^H J),
//   J E = E J (second order) / J E Hermitian (higher order),
//   L^H = J B.
// `sys_fo` must be the linearization of a Hermitian source and s0 real.
// Throws RelationViolated naming the first failed identity.
JRelationReport verify_j_relations(const FirstOrderSystem& sys_fo,
                                   const HermitianStructure& j, double s0,
                                   double tol = 1e-10);

}  // namespace spmor
