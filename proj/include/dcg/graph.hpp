#ifndef DCG_GRAPH_HPP_
#define DCG_GRAPH_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dcg {

// Nodes are 0-based internally and 1-based in every file format and on the
// CLI. A set of nodes is a bitmask over bits 0..p-1.
using NodeMask = std::uint32_t;

constexpr int kMaxNodes = 16;

inline bool mask_test(NodeMask m, int i) { return (m >> i) & 1u; }
inline NodeMask mask_bit(int i) { return NodeMask{1} << i; }

// Directed graph on p labeled nodes, dense adjacency kept as per-node child
// and parent bitmasks. Self-loops are forbidden; 2-cycles are allowed.
//
// Graphs with p <= 8 have a canonical integer code: bit i of the code is the
// i-th off-diagonal entry of the edge matrix in row-major order (row j,
// column k, skipping k == j). All-zero code is the empty graph; codes range
// over [0, 2^(p(p-1))).
struct Dcg {
  int p = 0;
  std::array<std::uint16_t, kMaxNodes> ch{};  // ch[j] bit k <=> edge j->k
  std::array<std::uint16_t, kMaxNodes> pa{};  // transpose of ch

  Dcg() = default;
  explicit Dcg(int p_);

  bool has_edge(int j, int k) const { return mask_test(ch[j], k); }
  void add_edge(int j, int k);
  void remove_edge(int j, int k);
  int edge_count() const;

  bool operator==(const Dcg& o) const;
};

int edge_bit_index(int p, int j, int k);
Dcg graph_from_code(int p, std::uint64_t code);
std::uint64_t graph_code(const Dcg& g);

// Number of graphs in the full DCG space: 2^(p(p-1)).
std::uint64_t dcg_space_size(int p);

// Graph file format: first line "p=<int>", then one "<j> -> <k>" line per
// edge with 1-based indices; '#' starts a comment line. The serializer emits
// edges in lexicographic order.
Dcg parse_graph(const std::string& text);
std::string serialize_graph(const Dcg& g);

// Strict ancestry: i in ancestors(g, j) iff a directed path i -> ... -> j of
// length >= 1 exists. A node on a cycle through itself is its own ancestor.
NodeMask ancestors(const Dcg& g, int j);
NodeMask descendants(const Dcg& g, int j);
NodeMask ancestors_refl(const Dcg& g, int j);
NodeMask descendants_refl(const Dcg& g, int j);
// an(S): nodes in S or ancestors of a node in S.
NodeMask ancestors_of_set_refl(const Dcg& g, NodeMask s);

bool is_dag(const Dcg& g);

enum class Adjacency { None, RealOnly, VirtualOnly, RealAndVirtual };

// Really adjacent: an edge in at least one direction. Virtually adjacent:
// a common child that is an ancestor of either endpoint (possible only in
// the presence of a cycle).
Adjacency adjacency(const Dcg& g, int j, int k);

struct SkeletonInfo {
  std::vector<std::pair<int, int>> pairs;  // 0-based, j < k, sorted
  int total_edges = 0;                     // |S(G)|, a 2-cycle counts once
  int real_edges = 0;                      // pairs with a real direction
};

SkeletonInfo skeleton(const Dcg& g);

enum class TripleClass {
  NotUnshielded,
  Conductor,
  PerfectNonConductor,
  ImperfectNonConductor,
};

// Classify the triple j - m - k with middle node m. The two legs count as
// adjacent when really or virtually adjacent; the endpoint pair (j,k) is
// unshielded when no real edge joins it. Conductor: m is a (strict) ancestor
// of j or k. Perfect non-conductor: m is a descendant-or-self of a common
// child of j and k.
TripleClass classify_triple(const Dcg& g, int j, int m, int k);

// True iff the directed edge set of g1 is a proper subset of that of g2.
bool is_real_subgraph(const Dcg& g1, const Dcg& g2);

void check_node(const Dcg& g, int j);

}  // namespace dcg

#endif  // DCG_GRAPH_HPP_
