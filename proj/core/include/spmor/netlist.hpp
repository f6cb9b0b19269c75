#pragma once

#include <string>
#include <vector>

#include "spmor/dense.hpp"
#include "spmor/systems.hpp"

namespace spmor {

// Line-based RCL netlist. Grammar (one element per non-comment line,
// whitespace separated, `#` starts a comment):
//   R|C|L <name> <n1> <n2> <value>
//   K <name> <L1> <L2> <value>          mutual inductance between two L's
//   I <name> <n+> <n-> PORT <k>         current source driving input port k
// Values accept scientific notation and the SI suffixes
// f p n u m k meg g (meg = 1e6, m = 1e-3). Node "0" is the datum node.

enum class ElementKind { resistor, capacitor, inductor, coupling, source };

struct Element {
  ElementKind kind = ElementKind::resistor;
  std::string name;
  // Terminals for R/C/L/I; for K these hold the two inductor names.
  std::string node_a;
  std::string node_b;
  double value = 0.0;  // ohms / farads / henries; unused for sources
  int port = 0;        // 1-based input port, sources only
};

struct Netlist {
  std::vector<std::string> nodes;  // non-datum nodes, first-appearance order
  std::vector<Element> elements;   // declaration order

  int ports() const;

  bool operator==(const Netlist&) const = default;
};

// Throws ParseError (malformed line, with line number) or ValidationError
// (duplicate names, unknown inductor references, non-positive values,
// bad port numbering, shorted elements).
Netlist parse_netlist(const std::string& text);

// Canonical text form; parse_netlist(serialize_netlist(nl)) == nl.
std::string serialize_netlist(const Netlist& nl);

// Element/incidence matrices of the modified-nodal-analysis formulation:
// branch-by-node incidence per element kind (entries in {-1,0,+1}, datum
// column dropped), diagonal conductance/capacitance matrices, and the
// symmetric positive-definite inductance matrix.
struct MnaData {
  Matrix Ai, Ag, Ac, Al;
  Matrix G, C;  // diagonal, positive
  Matrix L;     // inductance with mutual couplings, verified PD
  std::vector<std::string> node_order;  // column index -> node name

  Index node_count() const { return static_cast<Index>(node_order.size()); }
  Index inductor_count() const { return Al.rows(); }
  Index port_count() const { return Ai.rows(); }
};

// Throws NonPdInductance when the assembled inductance matrix fails a
// Cholesky factorization.
MnaData assemble_mna(const Netlist& nl);

// Special second-order form: P1 = Ac^T C Ac, P0 = Ag^T G Ag,
// P_{-1} = Al^T L^-1 Al kept factored (inverse form, F1 = F2 = Al^T),
// B = Ai^T, output map B^H, no feedthrough. Hermitian by construction.
SpecialSecondOrderSystem mna_to_second_order(const MnaData& d);

// First-order form: E = blockdiag(Ac^T C Ac, L),
// A = [[-Ag^T G Ag, -Al^T], [Al, 0]], B = [Ai^T; 0], output map B^H.
FirstOrderSystem mna_to_first_order(const MnaData& d);

}  // namespace spmor
