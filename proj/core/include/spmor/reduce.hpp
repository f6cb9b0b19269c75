#pragma once

#include <optional>

#include "spmor/krylov.hpp"
#include "spmor/linearize.hpp"
#include "spmor/systems.hpp"

namespace spmor {

enum class ReduceMethod { prima, sprim, higher_order };

const char* method_name(ReduceMethod m);

struct BasisProvenance {
  std::vector<Index> boundaries;
  Index n = 0;  // Krylov dimension backing the model
  int j = 0;    // block count: n = n(j)
  Complex s0{0.0, 0.0};
  bool hermitian_source = false;
  bool structure_preserving = false;
};

// Projection-based reduced-order model: the projected first-order data
// plus, for the structure-preserving methods, the recovered structured form.
// Zero and identity blocks of the structured data are constructed, never
// computed, so they hold exactly.
struct ReducedModel {
  ReduceMethod method = ReduceMethod::prima;

  Matrix En, An, Bn, Ln, Dn;  // projected first-order data
  Matrix projector;           // the projection matrix V_n actually used

  std::optional<SpecialSecondOrderSystem> second_order;  // sprim recovery
  std::optional<HigherOrderSystem> higher_order;         // higher-order recovery

  Matrix V1, V2;        // sprim row blocks after per-block re-orthonormalization
  Matrix Sn;            // shared block of the higher-order projector
  Index sn_excess = 0;  // columns of Sn beyond the Krylov dimension n

  BasisProvenance provenance;

  Index reduced_dim() const { return En.rows(); }
  FirstOrderSystem first_order() const;
};

// Plain one-sided projection onto the Krylov basis: An = V^H A V,
// En = V^H E V, Bn = V^H B, Ln = L V. Matches j(n) moments about s0.
// Throws ReducedPencilSingular when s0 En - An cannot be factored.
ReducedModel prima_reduce(const FirstOrderSystem& sys, const KrylovBasis& basis);

// Structure-preserving reduction of a special second-order system: the
// basis is split into its N- and N0-row blocks, each block is
// re-orthonormalized on its own with rank tolerance `tol`, and the
// projection uses blockdiag(V1, V2). The reduced model is returned both in
// first-order and in recovered second-order form. For Hermitian systems and
// real s0 this matches 2 j(n) moments.
// Throws ReducedInnerGSingular when V2^H G V2 is singular.
ReducedModel sprim_reduce(const SpecialSecondOrderSystem& sys, const FirstOrderSystem& sys_fo,
                          const LinearizationMap& map, const KrylovBasis& basis,
                          double tol = kDefaultRankTol);

// Structure-preserving reduction of an order-l system: the l row blocks of
// the companion-form basis are concatenated and orthonormalized into a
// single N x r block Sn, and the projection uses blockdiag(Sn, ..., Sn).
// In exact arithmetic r = n; extra numerical columns are kept and counted
// in sn_excess.
ReducedModel higher_order_reduce(const HigherOrderSystem& sys, const FirstOrderSystem& sys_fo,
                                 const KrylovBasis& basis, double tol = kDefaultRankTol);

}  // namespace spmor
