#include "dcg/graph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "dcg/errors.hpp"

namespace dcg {

Dcg::Dcg(int p_) : p(p_) {
  if (p < 2 || p > kMaxNodes)
    throw std::invalid_argument("node count must be in [2, 16], got " +
                                std::to_string(p_));
}

void Dcg::add_edge(int j, int k) {
  check_node(*this, j);
  check_node(*this, k);
  if (j == k) throw std::invalid_argument("self-loops are forbidden");
  ch[j] |= mask_bit(k);
  pa[k] |= mask_bit(j);
}

void Dcg::remove_edge(int j, int k) {
  ch[j] &= ~mask_bit(k);
  pa[k] &= ~mask_bit(j);
}

int Dcg::edge_count() const {
  int n = 0;
  for (int j = 0; j < p; ++j) n += std::popcount(static_cast<unsigned>(ch[j]));
  return n;
}

bool Dcg::operator==(const Dcg& o) const {
  if (p != o.p) return false;
  for (int j = 0; j < p; ++j)
    if (ch[j] != o.ch[j]) return false;
  return true;
}

void check_node(const Dcg& g, int j) {
  if (j < 0 || j >= g.p)
    throw std::invalid_argument("node index out of range: " +
                                std::to_string(j + 1));
}

int edge_bit_index(int p, int j, int k) {
  return j * (p - 1) + (k < j ? k : k - 1);
}

Dcg graph_from_code(int p, std::uint64_t code) {
  if (p > 8)
    throw CapacityError("integer graph codes are defined for p <= 8");
  Dcg g(p);
  int bit = 0;
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < p; ++k) {
      if (j == k) continue;
      if ((code >> bit) & 1u) g.add_edge(j, k);
      ++bit;
    }
  return g;
}

std::uint64_t graph_code(const Dcg& g) {
  if (g.p > 8)
    throw CapacityError("integer graph codes are defined for p <= 8");
  std::uint64_t code = 0;
  int bit = 0;
  for (int j = 0; j < g.p; ++j)
    for (int k = 0; k < g.p; ++k) {
      if (j == k) continue;
      if (g.has_edge(j, k)) code |= std::uint64_t{1} << bit;
      ++bit;
    }
  return code;
}

std::uint64_t dcg_space_size(int p) {
  if (p > 8) throw CapacityError("space size overflows for p > 8");
  return std::uint64_t{1} << (p * (p - 1));
}

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Dcg parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int p = -1;
  Dcg g;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    if (p < 0) {
      if (t.rfind("p=", 0) != 0)
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected header 'p=<int>'");
      try {
        std::size_t pos = 0;
        p = std::stoi(t.substr(2), &pos);
        if (pos != t.size() - 2) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) +
                         ": malformed node count");
      }
      if (p < 2 || p > kMaxNodes)
        throw ParseError("line " + std::to_string(lineno) +
                         ": node count must be in [2, 16]");
      g = Dcg(p);
      continue;
    }
    std::istringstream ls(t);
    int j = 0, k = 0;
    std::string arrow, extra;
    if (!(ls >> j >> arrow >> k) || arrow != "->" || (ls >> extra))
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected '<j> -> <k>'");
    if (j < 1 || j > p || k < 1 || k > p)
      throw ParseError("line " + std::to_string(lineno) +
                       ": node index out of range");
    if (j == k)
      throw ParseError("line " + std::to_string(lineno) +
                       ": self-loop forbidden");
    g.add_edge(j - 1, k - 1);
  }
  if (p < 0) throw ParseError("missing 'p=<int>' header");
  return g;
}

std::string serialize_graph(const Dcg& g) {
  std::ostringstream out;
  out << "p=" << g.p << "\n";
  for (int j = 0; j < g.p; ++j)
    for (int k = 0; k < g.p; ++k)
      if (g.has_edge(j, k)) out << j + 1 << " -> " << k + 1 << "\n";
  return out.str();
}

namespace {

// Reflexive transitive closure over the given row masks.
void close_refl(int p, const std::uint16_t* rows, std::uint16_t* out) {
  for (int i = 0; i < p; ++i) out[i] = static_cast<std::uint16_t>(rows[i] | mask_bit(i));
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < p; ++i) {
      std::uint16_t acc = out[i];
      std::uint16_t m = out[i];
      while (m) {
        int b = std::countr_zero(static_cast<unsigned>(m));
        m &= static_cast<std::uint16_t>(m - 1);
        acc |= out[b];
      }
      if (acc != out[i]) {
        out[i] = acc;
        changed = true;
      }
    }
  }
}

}  // namespace

NodeMask descendants_refl(const Dcg& g, int j) {
  check_node(g, j);
  std::uint16_t clo[kMaxNodes];
  close_refl(g.p, g.ch.data(), clo);
  return clo[j];
}

NodeMask ancestors_refl(const Dcg& g, int j) {
  check_node(g, j);
  std::uint16_t clo[kMaxNodes];
  close_refl(g.p, g.pa.data(), clo);
  return clo[j];
}

NodeMask descendants(const Dcg& g, int j) {
  check_node(g, j);
  // strict: close over children of j, so j itself appears only via a cycle
  NodeMask seen = g.ch[j];
  bool grew = true;
  while (grew) {
    grew = false;
    NodeMask m = seen;
    while (m) {
      int b = std::countr_zero(m);
      m &= m - 1;
      NodeMask add = g.ch[b] & ~seen;
      if (add) {
        seen |= add;
        grew = true;
      }
    }
  }
  return seen;
}

NodeMask ancestors(const Dcg& g, int j) {
  check_node(g, j);
  NodeMask seen = g.pa[j];
  bool grew = true;
  while (grew) {
    grew = false;
    NodeMask m = seen;
    while (m) {
      int b = std::countr_zero(m);
      m &= m - 1;
      NodeMask add = g.pa[b] & ~seen;
      if (add) {
        seen |= add;
        grew = true;
      }
    }
  }
  return seen;
}

NodeMask ancestors_of_set_refl(const Dcg& g, NodeMask s) {
  NodeMask out = s;
  NodeMask m = s;
  while (m) {
    int b = std::countr_zero(m);
    m &= m - 1;
    out |= ancestors(g, b);
  }
  return out;
}

bool is_dag(const Dcg& g) {
  for (int j = 0; j < g.p; ++j)
    if (mask_test(descendants(g, j), j)) return false;
  return true;
}

Adjacency adjacency(const Dcg& g, int j, int k) {
  check_node(g, j);
  check_node(g, k);
  if (j == k) throw std::invalid_argument("adjacency requires j != k");
  const bool real = g.has_edge(j, k) || g.has_edge(k, j);
  bool virt = false;
  NodeMask common = NodeMask(g.ch[j]) & NodeMask(g.ch[k]);
  if (common) {
    NodeMask anj = ancestors_refl(g, j) | ancestors_refl(g, k);
    virt = (common & anj) != 0;
  }
  if (real && virt) return Adjacency::RealAndVirtual;
  if (real) return Adjacency::RealOnly;
  if (virt) return Adjacency::VirtualOnly;
  return Adjacency::None;
}

SkeletonInfo skeleton(const Dcg& g) {
  SkeletonInfo info;
  for (int j = 0; j < g.p; ++j)
    for (int k = j + 1; k < g.p; ++k) {
      Adjacency a = adjacency(g, j, k);
      if (a == Adjacency::None) continue;
      info.pairs.emplace_back(j, k);
      ++info.total_edges;
      if (a != Adjacency::VirtualOnly) ++info.real_edges;
    }
  return info;
}

TripleClass classify_triple(const Dcg& g, int j, int m, int k) {
  check_node(g, j);
  check_node(g, m);
  check_node(g, k);
  if (j == m || j == k || m == k)
    throw std::invalid_argument("triple nodes must be distinct");
  if (adjacency(g, j, m) == Adjacency::None) return TripleClass::NotUnshielded;
  if (adjacency(g, k, m) == Adjacency::None) return TripleClass::NotUnshielded;
  if (g.has_edge(j, k) || g.has_edge(k, j)) return TripleClass::NotUnshielded;
  if (mask_test(ancestors(g, j) | ancestors(g, k), m))
    return TripleClass::Conductor;
  NodeMask common = NodeMask(g.ch[j]) & NodeMask(g.ch[k]);
  NodeMask mm = common;
  while (mm) {
    int c = std::countr_zero(mm);
    mm &= mm - 1;
    if (mask_test(descendants_refl(g, c), m))
      return TripleClass::PerfectNonConductor;
  }
  return TripleClass::ImperfectNonConductor;
}

bool is_real_subgraph(const Dcg& g1, const Dcg& g2) {
  if (g1.p != g2.p)
    throw std::invalid_argument("subgraph check requires equal node counts");
  bool proper = false;
  for (int j = 0; j < g1.p; ++j) {
    if (g1.ch[j] & ~g2.ch[j]) return false;
    if (g2.ch[j] & ~g1.ch[j]) proper = true;
  }
  return proper;
}

}  // namespace dcg
