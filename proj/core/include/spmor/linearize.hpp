#pragma once

#include <utility>

#include "spmor/systems.hpp"

namespace spmor {

// Records how the first-order state of an equivalent linearization maps back
// to the source system's coordinates.
struct LinearizationMap {
  enum class SourceKind { second_order, higher_order };
  SourceKind source = SourceKind::second_order;
  Index source_dim = 0;   // N
  Index inner_dim = 0;    // N0 (second order) — 0 otherwise
  int order = 1;          // l (higher order) — 1 otherwise
  Index target_dim = 0;   // N1 = N + N0, respectively l*N

  // Row offsets of the blocks of the first-order state: [0, N] for second
  // order, [0, N, 2N, ...] for order l.
  std::vector<Index> block_offsets;
};

// Equivalent first-order formulation of a special second-order system.
// Direct form (P_{-1} = F1 G F2^H):
//   A = [[-P0, -F1 G], [(F2 G)^H, 0]],  E = blockdiag(P1, G^H),
// inverse form (P_{-1} = F1 G^-1 F2^H, G nonsingular):
//   A = [[-P0, -F1], [F2^H, 0]],        E = blockdiag(P1, G),
// both with B = [B; 0], L = [L, 0], D unchanged.
std::pair<FirstOrderSystem, LinearizationMap> linearize_second_order(
    const SpecialSecondOrderSystem& sys);

// Companion-form first-order system of an order-l system:
//   E = blockdiag(I, ..., I, P_l),
//   A = [[0, I, 0, ...], ..., [0, ..., 0, I], [-P_0, -P_1, ..., -P_{l-1}]],
//   B = [0; ...; 0; B],  L = [L_0, L_1, ..., L_{l-1}],  D unchanged.
// State blocks are ordered [x; x'; ...; x^(l-1)].
std::pair<FirstOrderSystem, LinearizationMap> linearize_higher_order(
    const HigherOrderSystem& sys);

}  // namespace spmor
