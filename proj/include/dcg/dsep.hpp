#ifndef DCG_DSEP_HPP_
#define DCG_DSEP_HPP_

#include "dcg/graph.hpp"
#include "dcg/sepset.hpp"

namespace dcg {

// Reflexive descendant masks, computed once per graph and shared across the
// up-to-2^(p-2) queries of a full d-separation enumeration.
struct DsepPrep {
  int p = 0;
  std::array<std::uint16_t, kMaxNodes> desc{};  // desc[b] = {b} + descendants

  explicit DsepPrep(const Dcg& g);
};

// Walk-based reachability over (node, arrival-direction) states. Arriving
// "head" means the last edge points into the node. Transitions:
//   (b, head) -> children of b   when b not in S        (chain a->b->c)
//   (b, head) -> parents of b    when desc(b) meets S   (collider a->b<-c)
//   (b, tail) -> children of b   when b not in S        (fork  a<-b->c)
//   (b, tail) -> parents of b    when b not in S        (chain a<-b<-c)
// Returns the set of nodes d-connected to j given S.
NodeMask reach_set(const Dcg& g, const DsepPrep& prep, int j, NodeMask cond);

// Production d-connection query; correct in the presence of 2-cycles and
// self-reaching ancestry. Cross-checked against the path-enumeration oracle.
bool d_connected(const Dcg& g, int j, int k, NodeMask cond);

// Literal transcription of the definition: enumerate all simple undirected
// paths and test each collider/non-collider clause. Exponential; p <= 8.
// Test oracle only — keep independent of the reachability implementation.
bool d_connected_oracle(const Dcg& g, int j, int k, NodeMask cond);

// Every statement (j,k,S) with j d-separated from k given S. p <= 8.
SepSet all_dsep(const Dcg& g);

// All of all_dsep(g) computed while checking containment in ci; returns true
// and fills `out` iff all_dsep(g) is a subset of ci (the Markov condition),
// bailing out at the first statement outside ci.
bool all_dsep_within(const Dcg& g, const SepSet& ci, SepSet& out);

// CMC: every entailed d-separation is a CI statement of the distribution.
bool satisfies_cmc(const Dcg& g, const SepSet& ci);
// CFC: entailed d-separations and CI statements coincide exactly.
bool satisfies_cfc(const Dcg& g, const SepSet& ci);
// Operational Markov equivalence: equal d-separation sets.
bool markov_equivalent(const Dcg& g1, const Dcg& g2);

void check_query(const Dcg& g, int j, int k, NodeMask cond);

}  // namespace dcg

#endif  // DCG_DSEP_HPP_
