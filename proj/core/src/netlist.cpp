#include "spmor/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace spmor {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_value(const std::string& tok, int line_no) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double base = std::strtod(begin, &end);
  if (end == begin) {
    throw ParseError(line_no, "bad numeric value '" + tok + "'");
  }
  const std::string suffix = to_lower(std::string(end));
  if (suffix.empty()) return base;

  static const std::map<std::string, double> kSuffixes = {
      {"f", 1e-15}, {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6},
      {"m", 1e-3},  {"k", 1e3},   {"meg", 1e6}, {"g", 1e9},
  };
  auto it = kSuffixes.find(suffix);
  if (it == kSuffixes.end()) {
    throw ParseError(line_no, "unknown SI suffix '" + std::string(end) + "' in '" + tok + "'");
  }
  return base * it->second;
}

int parse_port(const std::string& tok, int line_no) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || v < 1) {
    throw ParseError(line_no, "bad port index '" + tok + "'");
  }
  return static_cast<int>(v);
}

const char* kind_letter(ElementKind k) {
  switch (k) {
    case ElementKind::resistor: return "R";
    case ElementKind::capacitor: return "C";
    case ElementKind::inductor: return "L";
    case ElementKind::coupling: return "K";
    case ElementKind::source: return "I";
  }
  return "?";
}

void validate(const Netlist& nl) {
  std::set<std::pair<ElementKind, std::string>> names;
  std::set<std::string> inductors;
  for (const Element& e : nl.elements) {
    if (e.kind == ElementKind::inductor) inductors.insert(e.name);
  }

  std::vector<int> ports;
  for (const Element& e : nl.elements) {
    if (!names.insert({e.kind, e.name}).second) {
      throw ValidationError("duplicate " + std::string(kind_letter(e.kind)) + " element '" +
                            e.name + "'");
    }
    switch (e.kind) {
      case ElementKind::resistor:
      case ElementKind::capacitor:
      case ElementKind::inductor:
        if (!(e.value > 0.0)) {
          throw ValidationError("element '" + e.name + "': value must be positive");
        }
        if (e.node_a == e.node_b) {
          throw ValidationError("element '" + e.name + "': terminals must differ");
        }
        break;
      case ElementKind::coupling:
        if (!(e.value > 0.0)) {
          throw ValidationError("coupling '" + e.name + "': value must be positive");
        }
        if (e.node_a == e.node_b) {
          throw ValidationError("coupling '" + e.name + "': must reference two distinct inductors");
        }
        for (const std::string& ref : {e.node_a, e.node_b}) {
          if (inductors.count(ref) == 0) {
            throw ValidationError("coupling '" + e.name + "': unknown inductor '" + ref + "'");
          }
        }
        break;
      case ElementKind::source:
        if (e.node_a == e.node_b) {
          throw ValidationError("source '" + e.name + "': terminals must differ");
        }
        ports.push_back(e.port);
        break;
    }
  }

  std::sort(ports.begin(), ports.end());
  for (size_t i = 0; i < ports.size(); ++i) {
    if (ports[i] != static_cast<int>(i) + 1) {
      throw ValidationError("port indices must be exactly 1.." + std::to_string(ports.size()) +
                            " with no gaps or duplicates");
    }
  }
}

}  // namespace

int Netlist::ports() const {
  int m = 0;
  for (const Element& e : elements) {
    if (e.kind == ElementKind::source) ++m;
  }
  return m;
}

Netlist parse_netlist(const std::string& text) {
  Netlist nl;
  std::set<std::string> seen_nodes;
  auto note_node = [&nl, &seen_nodes](const std::string& n) {
    if (n != "0" && seen_nodes.insert(n).second) nl.nodes.push_back(n);
  };

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto toks = tokenize(line);
    if (toks.empty()) continue;

    const std::string kind_tok = to_lower(toks[0]);
    Element e;
    if (kind_tok == "r" || kind_tok == "c" || kind_tok == "l") {
      if (toks.size() != 5) {
        throw ParseError(line_no, "expected '" + toks[0] + " <name> <n1> <n2> <value>'");
      }
      e.kind = kind_tok == "r"   ? ElementKind::resistor
               : kind_tok == "c" ? ElementKind::capacitor
                                 : ElementKind::inductor;
      e.name = toks[1];
      e.node_a = toks[2];
      e.node_b = toks[3];
      e.value = parse_value(toks[4], line_no);
      note_node(e.node_a);
      note_node(e.node_b);
    } else if (kind_tok == "k") {
      if (toks.size() != 5) {
        throw ParseError(line_no, "expected 'K <name> <L1> <L2> <value>'");
      }
      e.kind = ElementKind::coupling;
      e.name = toks[1];
      e.node_a = toks[2];  // inductor names, not nodes
      e.node_b = toks[3];
      e.value = parse_value(toks[4], line_no);
    } else if (kind_tok == "i") {
      if (toks.size() != 6 || to_lower(toks[4]) != "port") {
        throw ParseError(line_no, "expected 'I <name> <n+> <n-> PORT <k>'");
      }
      e.kind = ElementKind::source;
      e.name = toks[1];
      e.node_a = toks[2];
      e.node_b = toks[3];
      e.port = parse_port(toks[5], line_no);
      note_node(e.node_a);
      note_node(e.node_b);
    } else {
      throw ParseError(line_no, "unknown element kind '" + toks[0] + "'");
    }
    nl.elements.push_back(std::move(e));
  }

  validate(nl);
  return nl;
}

std::string serialize_netlist(const Netlist& nl) {
  std::ostringstream out;
  char buf[64];
  for (const Element& e : nl.elements) {
    switch (e.kind) {
      case ElementKind::source:
        out << "I " << e.name << ' ' << e.node_a << ' ' << e.node_b << " PORT " << e.port
            << '\n';
        break;
      default:
        std::snprintf(buf, sizeof buf, "%.17g", e.value);
        out << kind_letter(e.kind) << ' ' << e.name << ' ' << e.node_a << ' ' << e.node_b << ' '
            << buf << '\n';
        break;
    }
  }
  return out.str();
}

MnaData assemble_mna(const Netlist& nl) {
  validate(nl);

  std::map<std::string, Index> node_index;
  for (size_t i = 0; i < nl.nodes.size(); ++i) {
    node_index[nl.nodes[i]] = static_cast<Index>(i);
  }
  const Index n = static_cast<Index>(nl.nodes.size());

  auto collect = [&nl](ElementKind k) {
    std::vector<const Element*> out;
    for (const Element& e : nl.elements) {
      if (e.kind == k) out.push_back(&e);
    }
    return out;
  };
  auto resistors = collect(ElementKind::resistor);
  auto capacitors = collect(ElementKind::capacitor);
  auto inductors = collect(ElementKind::inductor);
  auto couplings = collect(ElementKind::coupling);
  auto sources = collect(ElementKind::source);
  // Source rows are ordered by port index so that input k is port k.
  std::sort(sources.begin(), sources.end(),
            [](const Element* a, const Element* b) { return a->port < b->port; });

  auto incidence = [&node_index, n](const std::vector<const Element*>& elems) {
    Matrix a = Matrix::Zero(static_cast<Index>(elems.size()), n);
    for (size_t r = 0; r < elems.size(); ++r) {
      const Element& e = *elems[r];
      if (e.node_a != "0") a(static_cast<Index>(r), node_index.at(e.node_a)) = 1.0;
      if (e.node_b != "0") a(static_cast<Index>(r), node_index.at(e.node_b)) = -1.0;
    }
    return a;
  };

  MnaData d;
  d.node_order = nl.nodes;
  d.Ai = incidence(sources);
  d.Ag = incidence(resistors);
  d.Ac = incidence(capacitors);
  d.Al = incidence(inductors);

  d.G = Matrix::Zero(static_cast<Index>(resistors.size()), static_cast<Index>(resistors.size()));
  for (size_t r = 0; r < resistors.size(); ++r) {
    d.G(static_cast<Index>(r), static_cast<Index>(r)) = 1.0 / resistors[r]->value;
  }
  d.C = Matrix::Zero(static_cast<Index>(capacitors.size()),
                     static_cast<Index>(capacitors.size()));
  for (size_t r = 0; r < capacitors.size(); ++r) {
    d.C(static_cast<Index>(r), static_cast<Index>(r)) = capacitors[r]->value;
  }

  std::map<std::string, Index> inductor_index;
  for (size_t r = 0; r < inductors.size(); ++r) {
    inductor_index[inductors[r]->name] = static_cast<Index>(r);
  }
  d.L = Matrix::Zero(static_cast<Index>(inductors.size()), static_cast<Index>(inductors.size()));
  for (size_t r = 0; r < inductors.size(); ++r) {
    d.L(static_cast<Index>(r), static_cast<Index>(r)) = inductors[r]->value;
  }
  for (const Element* k : couplings) {
    const Index i = inductor_index.at(k->node_a);
    const Index j = inductor_index.at(k->node_b);
    d.L(i, j) += k->value;
    d.L(j, i) += k->value;
  }

  if (d.L.rows() > 0) {
    Eigen::LLT<Matrix> llt(d.L);
    if (llt.info() != Eigen::Success) {
      throw NonPdInductance("inductance matrix is not positive definite "
                            "(check mutual coupling values)");
    }
  }
  return d;
}

SpecialSecondOrderSystem mna_to_second_order(const MnaData& d) {
  Matrix p1 = d.Ac.adjoint() * (d.C * d.Ac);
  Matrix p0 = d.Ag.adjoint() * (d.G * d.Ag);
  Matrix f = d.Al.adjoint();  // N x (#inductors)
  Matrix b = d.Ai.adjoint();
  Matrix l = b.adjoint();
  Matrix dmat = Matrix::Zero(l.rows(), b.cols());
  return make_special_second_order(std::move(p1), std::move(p0), PMinusOneForm::inverse, f, f,
                                   d.L, std::move(b), std::move(l), std::move(dmat));
}

FirstOrderSystem mna_to_first_order(const MnaData& d) {
  const Index n = d.node_count();
  const Index nl = d.inductor_count();
  const Index n1 = n + nl;
  const Index m = d.port_count();

  Matrix e = Matrix::Zero(n1, n1);
  e.topLeftCorner(n, n) = d.Ac.adjoint() * (d.C * d.Ac);
  e.bottomRightCorner(nl, nl) = d.L;

  Matrix a = Matrix::Zero(n1, n1);
  a.topLeftCorner(n, n) = -(d.Ag.adjoint() * (d.G * d.Ag));
  a.topRightCorner(n, nl) = -d.Al.adjoint();
  a.bottomLeftCorner(nl, n) = d.Al;

  Matrix b = Matrix::Zero(n1, m);
  b.topRows(n) = d.Ai.adjoint();
  Matrix l = b.adjoint();
  Matrix dmat = Matrix::Zero(m, m);
  return make_first_order(std::move(e), std::move(a), std::move(b), std::move(l),
                          std::move(dmat));
}

}  // namespace spmor
