#include "dcg/dsep.hpp"

#include <bit>
#include <stdexcept>

#include "dcg/errors.hpp"

namespace dcg {

DsepPrep::DsepPrep(const Dcg& g) : p(g.p) {
  for (int b = 0; b < p; ++b)
    desc[b] = static_cast<std::uint16_t>(g.ch[b] | mask_bit(b));
  bool changed = true;
  while (changed) {
    changed = false;
    for (int b = 0; b < p; ++b) {
      std::uint16_t acc = desc[b];
      std::uint16_t m = desc[b];
      while (m) {
        int c = std::countr_zero(static_cast<unsigned>(m));
        m &= static_cast<std::uint16_t>(m - 1);
        acc |= desc[c];
      }
      if (acc != desc[b]) {
        desc[b] = acc;
        changed = true;
      }
    }
  }
}

void check_query(const Dcg& g, int j, int k, NodeMask cond) {
  check_node(g, j);
  check_node(g, k);
  if (j == k) throw std::invalid_argument("query requires j != k");
  if (cond & (mask_bit(j) | mask_bit(k)))
    throw std::invalid_argument("conditioning set contains an endpoint");
  if (cond >> g.p)
    throw std::invalid_argument("conditioning set out of node range");
}

NodeMask reach_set(const Dcg& g, const DsepPrep& prep, int j, NodeMask cond) {
  NodeMask act = 0;
  for (int b = 0; b < g.p; ++b)
    if (prep.desc[b] & cond) act |= mask_bit(b);
  const NodeMask pass = ~cond;
  NodeMask head = g.ch[j];
  NodeMask tail = g.pa[j];
  for (;;) {
    NodeMask src_h = (head | tail) & pass;
    NodeMask src_t = (tail & pass) | (head & act);
    NodeMask nh = head, nt = tail;
    NodeMask m = src_h;
    while (m) {
      int b = std::countr_zero(m);
      m &= m - 1;
      nh |= g.ch[b];
    }
    m = src_t;
    while (m) {
      int b = std::countr_zero(m);
      m &= m - 1;
      nt |= g.pa[b];
    }
    if (nh == head && nt == tail) break;
    head = nh;
    tail = nt;
  }
  return head | tail;
}

bool d_connected(const Dcg& g, int j, int k, NodeMask cond) {
  check_query(g, j, k, cond);
  DsepPrep prep(g);
  return mask_test(reach_set(g, prep, j, cond), k);
}

namespace {

struct OracleCtx {
  const Dcg* g;
  DsepPrep prep;
  int k;
  NodeMask cond;

  explicit OracleCtx(const Dcg& graph) : g(&graph), prep(graph) {}

  // Extend a simple path ending at `node`, reached via an edge whose head is
  // at `node` iff arr_head. Each step picks the next node and the direction
  // of the connecting edge (both directions of a 2-cycle are separate paths).
  bool extend(int node, NodeMask visited, bool arr_head, bool at_start) {
    for (int nxt = 0; nxt < g->p; ++nxt) {
      if (mask_test(visited, nxt)) continue;
      for (int dir = 0; dir < 2; ++dir) {
        const bool out_head = dir == 0;  // edge node->nxt used forward
        if (out_head && !g->has_edge(node, nxt)) continue;
        if (!out_head && !g->has_edge(nxt, node)) continue;
        if (!at_start) {
          const bool collider = arr_head && !out_head;
          if (collider) {
            if (!(prep.desc[node] & cond)) continue;
          } else {
            if (mask_test(cond, node)) continue;
          }
        }
        if (nxt == k) return true;
        if (extend(nxt, visited | mask_bit(nxt), out_head, false)) return true;
      }
    }
    return false;
  }
};

}  // namespace

bool d_connected_oracle(const Dcg& g, int j, int k, NodeMask cond) {
  check_query(g, j, k, cond);
  if (g.p > 8)
    throw CapacityError("path-enumeration oracle supports p <= 8");
  OracleCtx ctx(g);
  ctx.k = k;
  ctx.cond = cond;
  return ctx.extend(j, mask_bit(j), false, true);
}

namespace {

void check_enumeration_p(const Dcg& g) {
  if (g.p > 8)
    throw CapacityError("full d-separation enumeration supports p <= 8");
}

}  // namespace

SepSet all_dsep(const Dcg& g) {
  check_enumeration_p(g);
  SepSet out(g.p);
  DsepPrep prep(g);
  // Group statements by (j, S): one reachability fixed point answers every
  // endpoint k > j outside S.
  for (int j = 0; j + 1 < g.p; ++j) {
    const NodeMask others = (mask_bit(g.p) - 1) & ~mask_bit(j);
    for (NodeMask s = others;; s = (s - 1) & others) {
      NodeMask cand = 0;
      for (int k = j + 1; k < g.p; ++k)
        if (!mask_test(s, k)) cand |= mask_bit(k);
      if (cand) {
        NodeMask reach = reach_set(g, prep, j, s);
        NodeMask sep = cand & ~reach;
        while (sep) {
          int k = std::countr_zero(sep);
          sep &= sep - 1;
          out.set(j, k, s);
        }
      }
      if (s == 0) break;
    }
  }
  return out;
}

bool all_dsep_within(const Dcg& g, const SepSet& ci, SepSet& out) {
  check_enumeration_p(g);
  if (ci.p() != g.p) throw std::invalid_argument("sepset dimension mismatch");
  out = SepSet(g.p);
  DsepPrep prep(g);
  for (int j = 0; j + 1 < g.p; ++j) {
    const NodeMask others = (mask_bit(g.p) - 1) & ~mask_bit(j);
    for (NodeMask s = others;; s = (s - 1) & others) {
      NodeMask cand = 0;
      for (int k = j + 1; k < g.p; ++k)
        if (!mask_test(s, k)) cand |= mask_bit(k);
      if (cand) {
        NodeMask reach = reach_set(g, prep, j, s);
        NodeMask sep = cand & ~reach;
        while (sep) {
          int k = std::countr_zero(sep);
          sep &= sep - 1;
          std::uint64_t idx = statement_index(g.p, j, k, s);
          if (!ci.test(idx)) return false;
          out.set(idx);
        }
      }
      if (s == 0) break;
    }
  }
  return true;
}

bool satisfies_cmc(const Dcg& g, const SepSet& ci) {
  SepSet tmp(g.p);
  return all_dsep_within(g, ci, tmp);
}

bool satisfies_cfc(const Dcg& g, const SepSet& ci) {
  SepSet ds(g.p);
  if (!all_dsep_within(g, ci, ds)) return false;
  return ds == ci;
}

bool markov_equivalent(const Dcg& g1, const Dcg& g2) {
  if (g1.p != g2.p)
    throw std::invalid_argument("markov_equivalent requires equal node counts");
  return all_dsep(g1) == all_dsep(g2);
}

}  // namespace dcg
