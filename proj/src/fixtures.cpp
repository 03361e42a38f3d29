#include "dcg/fixtures.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "dcg/dsep.hpp"
#include "dcg/selection.hpp"

namespace dcg {
namespace fixtures {

const char* kVirtualEdge4 =
    "p=4\n"
    "3 -> 1\n"
    "2 -> 3\n"
    "4 -> 2\n"
    "1 -> 2\n";

const char* kEdgeCountA =
    "p=5\n"
    "1 -> 4\n2 -> 4\n3 -> 4\n4 -> 5\n5 -> 1\n5 -> 3\n";
const char* kEdgeCountB =
    "p=5\n"
    "1 -> 4\n2 -> 4\n3 -> 4\n4 -> 5\n5 -> 1\n5 -> 3\n"
    "1 -> 2\n3 -> 2\n1 -> 3\n";
const char* kEdgeCountC =
    "p=5\n"
    "1 -> 4\n2 -> 4\n4 -> 2\n3 -> 4\n1 -> 3\n4 -> 5\n";
const char* kEdgeCountD =
    "p=5\n"
    "1 -> 4\n2 -> 4\n3 -> 4\n1 -> 2\n1 -> 3\n3 -> 2\n4 -> 5\n";

const char* kFeedbackPairA =
    "p=5\n"
    "1 -> 2\n2 -> 3\n3 -> 2\n4 -> 3\n2 -> 5\n3 -> 5\n5 -> 4\n";
const char* kFeedbackPairB =
    "p=5\n"
    "1 -> 2\n2 -> 3\n3 -> 2\n4 -> 3\n2 -> 5\n3 -> 5\n4 -> 5\n";

const char* kFourNodeA =
    "p=4\n"
    "1 -> 2\n2 -> 3\n3 -> 4\n1 -> 4\n";
const char* kFourNodeB =
    "p=4\n"
    "1 -> 3\n2 -> 4\n2 -> 3\n4 -> 3\n4 -> 1\n";

const char* kFiveDagA =
    "p=5\n"
    "1 -> 3\n2 -> 1\n2 -> 4\n2 -> 5\n4 -> 5\n5 -> 1\n5 -> 3\n";
const char* kFiveDagB =
    "p=5\n"
    "1 -> 2\n1 -> 3\n4 -> 1\n2 -> 5\n5 -> 3\n4 -> 5\n";

const char* kTwelveA =
    "p=12\n"
    "1 -> 2\n3 -> 1\n1 -> 4\n2 -> 5\n5 -> 3\n4 -> 5\n"
    "2 -> 6\n2 -> 7\n2 -> 8\n3 -> 6\n3 -> 7\n3 -> 8\n"
    "3 -> 9\n3 -> 10\n3 -> 11\n4 -> 9\n4 -> 10\n4 -> 11\n"
    "1 -> 12\n12 -> 5\n";
const char* kTwelveB =
    "p=12\n"
    "1 -> 2\n1 -> 3\n1 -> 4\n2 -> 5\n5 -> 3\n4 -> 5\n"
    "2 -> 6\n2 -> 7\n2 -> 8\n3 -> 6\n3 -> 7\n3 -> 8\n"
    "3 -> 9\n3 -> 10\n3 -> 11\n4 -> 9\n4 -> 10\n4 -> 11\n"
    "1 -> 5\n1 -> 12\n12 -> 5\n";

namespace {
NodeMask nodeset(std::initializer_list<int> nodes1based) {
  NodeMask m = 0;
  for (int v : nodes1based) m |= mask_bit(v - 1);
  return m;
}
}  // namespace

SepSet four_node_ci() {
  SepSet ci(4);
  ci.set(0, 2, nodeset({2}));
  ci.set(1, 3, nodeset({1, 3}));
  ci.set(0, 1, nodeset({4}));
  return ci;
}

SepSet five_dag_ci() {
  SepSet ci(5);
  ci.set(1, 2, nodeset({1, 5}));
  ci.set(1, 2, nodeset({1, 4, 5}));
  ci.set(1, 3, nodeset({1}));
  ci.set(0, 3, nodeset({2, 5}));
  ci.set(0, 3, nodeset({2, 3, 5}));
  ci.set(0, 4, nodeset({2, 4}));
  ci.set(2, 3, nodeset({1, 5}));
  ci.set(2, 3, nodeset({2, 5}));
  ci.set(2, 3, nodeset({1, 2, 5}));
  return ci;
}

std::vector<SepStatement> five_weak_smr_extras() {
  return {{0, 3, 0}, {0, 3, nodeset({5})}, {0, 4, 0}, {0, 4, nodeset({4})}};
}

SepSet five_weak_smr_ci() {
  SepSet ci = all_dsep(parse_graph(kFeedbackPairA));
  for (const auto& st : five_weak_smr_extras()) ci.set(st.j, st.k, st.cond);
  return ci;
}

LinearScm five_weak_smr_scm() {
  LinearScm scm;
  scm.p = 5;
  scm.weights = Eigen::MatrixXd::Zero(5, 5);
  const double a = 0.5;
  scm.weights(0, 1) = a;       // 1 -> 2
  scm.weights(1, 2) = a;       // 2 -> 3
  scm.weights(2, 1) = a;       // 3 -> 2
  scm.weights(3, 2) = a;       // 4 -> 3
  scm.weights(1, 4) = -a * a;  // 2 -> 5, cancels the 2 -> 3 -> 5 route
  scm.weights(2, 4) = a;       // 3 -> 5
  scm.weights(4, 3) = a;       // 5 -> 4
  return scm;
}

}  // namespace fixtures

bool FixtureReport::all_pass() const {
  return std::all_of(claims.begin(), claims.end(),
                     [](const FixtureClaim& c) { return c.pass; });
}

namespace {

using fixtures::nodeset;

void claim_virtual_edge(FixtureReport& rep) {
  const Dcg g = parse_graph(fixtures::kVirtualEdge4);
  std::ostringstream detail;
  bool ok = true;
  if (adjacency(g, 0, 3) != Adjacency::VirtualOnly) {
    ok = false;
    detail << "pair (1,4) not virtual-only; ";
  }
  if (adjacency(g, 0, 1) != Adjacency::RealOnly) {
    ok = false;
    detail << "pair (1,2) not real-only; ";
  }
  if (ancestors(g, 0) != nodeset({1, 2, 3, 4})) {
    ok = false;
    detail << "ancestors(1) != {1,2,3,4}; ";
  }
  if (classify_triple(g, 0, 1, 3) != TripleClass::Conductor) {
    ok = false;
    detail << "triple (1,2,4) not a conductor; ";
  }
  if (ok) detail << "virtual pair (1,4), conductor (1,2,4)";
  rep.claims.push_back({"virtual-edge-4node", ok, detail.str()});
}

void claim_edge_counts(FixtureReport& rep) {
  struct Want {
    const char* text;
    int total, real;
  };
  const Want wants[] = {{fixtures::kEdgeCountA, 9, 6},
                        {fixtures::kEdgeCountB, 9, 9},
                        {fixtures::kEdgeCountC, 7, 5},
                        {fixtures::kEdgeCountD, 7, 7}};
  std::ostringstream detail;
  bool ok = true;
  for (const auto& w : wants) {
    SkeletonInfo sk = skeleton(parse_graph(w.text));
    detail << "total " << sk.total_edges << " real " << sk.real_edges << "; ";
    if (sk.total_edges != w.total || sk.real_edges != w.real) ok = false;
  }
  const Dcg a = parse_graph(fixtures::kEdgeCountA);
  const Dcg b = parse_graph(fixtures::kEdgeCountB);
  const Dcg c = parse_graph(fixtures::kEdgeCountC);
  const Dcg d = parse_graph(fixtures::kEdgeCountD);
  if (!markov_equivalent(a, b) || !markov_equivalent(c, d) ||
      markov_equivalent(a, c)) {
    ok = false;
    detail << "equivalence-class structure wrong; ";
  }
  rep.claims.push_back({"edge-counts-5node", ok, detail.str()});
}

void claim_feedback_pair(FixtureReport& rep) {
  const Dcg a = parse_graph(fixtures::kFeedbackPairA);
  const Dcg b = parse_graph(fixtures::kFeedbackPairB);
  std::ostringstream detail;
  bool ok = true;
  if (skeleton(a).pairs != skeleton(b).pairs) {
    ok = false;
    detail << "skeletons differ; ";
  }
  const SepSet da = all_dsep(a), db = all_dsep(b);
  if (!(da.is_subset_of(db) && da != db)) {
    ok = false;
    detail << "d-sep sets not strictly nested; ";
  }
  if (d_connected(b, 0, 3, 0) || !d_connected(a, 0, 3, 0)) {
    ok = false;
    detail << "1 _||_ 4 | {} distinction wrong; ";
  }
  if (classify_triple(a, 0, 1, 3) != TripleClass::Conductor ||
      classify_triple(b, 0, 1, 3) != TripleClass::ImperfectNonConductor) {
    ok = false;
    detail << "triple (1,4,2) classes wrong; ";
  }
  detail << "|dsep| " << da.count() << " vs " << db.count();
  rep.claims.push_back({"equal-skeleton-pair", ok, detail.str()});
}

void claim_four_node_selection(FixtureReport& rep, int threads) {
  const SepSet ci = fixtures::four_node_ci();
  SearchSpace space{SpaceKind::AllDcgs, 4, {}, false};
  ScanOptions opt;
  opt.threads = threads;
  opt.with_sgs = false;
  SelectionReport r = markov_scan(ci, space, opt);
  std::ostringstream detail;
  bool ok = true;
  detail << "markov " << r.markov_count << ", mecs " << r.mec_sepsets.size();
  if (r.markov_count != 2154 || r.mec_sepsets.size() != 5) ok = false;
  if (!r.assumption_set(Assumption::Cfc).empty()) {
    ok = false;
    detail << "; CFC set not empty";
  }
  const Dcg g1 = parse_graph(fixtures::kFourNodeA);
  const Dcg g2 = parse_graph(fixtures::kFourNodeB);
  const auto mdr = r.assumption_set(Assumption::Mdr);
  const GraphRecord* rec1 = r.find(graph_code(g1));
  const GraphRecord* rec2 = r.find(graph_code(g2));
  if (!rec1 || !rec2) {
    ok = false;
    detail << "; fixture graphs not Markov";
  } else {
    std::vector<std::uint64_t> mec1;
    for (const auto& rec : r.records)
      if (rec.mec == rec1->mec) mec1.push_back(rec.id);
    if (mdr != mec1 || mdr.size() != 5) {
      ok = false;
      detail << "; MDR set is not the 5-graph class of the chain+chord graph";
    }
    if (!r.unique_skeleton[static_cast<int>(Assumption::Mdr)]) {
      ok = false;
      detail << "; MDR skeletons differ";
    } else {
      const std::uint32_t want = mask_bit(pair_index(4, 0, 1)) |
                                 mask_bit(pair_index(4, 1, 2)) |
                                 mask_bit(pair_index(4, 2, 3)) |
                                 mask_bit(pair_index(4, 0, 3));
      if (rec1->pairs_mask != want) {
        ok = false;
        detail << "; MDR skeleton wrong";
      }
    }
    if (!rec2->flags[static_cast<int>(Assumption::PMin)] ||
        rec2->flags[static_cast<int>(Assumption::Mdr)]) {
      ok = false;
      detail << "; alternative graph P-min/MDR flags wrong";
    }
  }
  rep.claims.push_back({"four-node-selection", ok, detail.str()});
}

void claim_five_weak_smr(FixtureReport& rep, int threads, bool heavy) {
  std::ostringstream detail;
  bool ok = true;
  const Dcg a = parse_graph(fixtures::kFeedbackPairA);
  const Dcg b = parse_graph(fixtures::kFeedbackPairB);
  const LinearScm scm = fixtures::five_weak_smr_scm();
  if (!(scm.graph() == a)) {
    ok = false;
    detail << "weight pattern does not match the graph; ";
  }
  const Eigen::MatrixXd sigma = covariance(scm.weights);
  const SepSet pop = population_ci(sigma);
  const SepSet ci = fixtures::five_weak_smr_ci();
  if (pop != ci) {
    ok = false;
    detail << "population CI != entailed rules + extras; ";
  }
  for (const auto& st : fixtures::five_weak_smr_extras())
    if (!pop.test(st.j, st.k, st.cond)) {
      ok = false;
      detail << "extra statement " << format_statement(5, st)
             << " not zero in the covariance; ";
    }
  if (!satisfies_cmc(b, ci)) {
    ok = false;
    detail << "flipped-edge graph violates CMC; ";
  }
  const SepSet da = all_dsep(a), db = all_dsep(b);
  if (!(da.is_subset_of(db) && da != db)) {
    ok = false;
    detail << "d-sep sets not strictly nested; ";
  }
  if (heavy) {
    SearchSpace space{SpaceKind::AllDcgs, 5, {}, false};
    ScanOptions opt;
    opt.threads = threads;
    opt.with_sgs = false;
    SelectionReport r = markov_scan(ci, space, opt);
    const GraphRecord* rec = r.find(graph_code(a));
    if (!rec) {
      ok = false;
      detail << "graph not Markov in the full scan; ";
    } else {
      if (rec->flags[static_cast<int>(Assumption::PMin)]) {
        ok = false;
        detail << "graph unexpectedly P-minimal; ";
      }
      if (!rec->flags[static_cast<int>(Assumption::SmrWeak)]) {
        ok = false;
        detail << "graph not among the total-edge minimizers; ";
      }
      std::uint16_t mine = 0xffff;
      for (auto e : r.mec_total_edges) mine = std::min(mine, e);
      detail << "markov " << r.markov_count << ", min total edges "
             << mine << ", graph has " << rec->total_edges << "; ";
    }
  }
  rep.claims.push_back({"five-node-weak-smr", ok, detail.str()});
}

void claim_five_dag_selection(FixtureReport& rep, int threads, bool heavy) {
  std::ostringstream detail;
  bool ok = true;
  const Dcg ga = parse_graph(fixtures::kFiveDagA);
  const Dcg gb = parse_graph(fixtures::kFiveDagB);
  const SepSet ci = fixtures::five_dag_ci();
  // the two graphs entail exactly the listed rules (7 and 6 of the 9)
  const SepSet da = all_dsep(ga), db = all_dsep(gb);
  if (da.count() != 7 || db.count() != 6 || !da.is_subset_of(ci) ||
      !db.is_subset_of(ci)) {
    ok = false;
    detail << "entailed rule sets differ from the listing; ";
  }
  SearchSpace dags{SpaceKind::AllDags, 5, {}, false};
  ScanOptions opt;
  opt.threads = threads;
  opt.with_sgs = false;
  SelectionReport r = markov_scan(ci, dags, opt);
  detail << "dag markov " << r.markov_count << ", mecs "
         << r.mec_sepsets.size() << "; ";
  if (r.markov_count != 451 || r.mec_sepsets.size() != 25) ok = false;
  const GraphRecord* ra = r.find(graph_code(ga));
  const GraphRecord* rb = r.find(graph_code(gb));
  if (!ra || !rb) {
    ok = false;
    detail << "fixture graphs not Markov; ";
  } else {
    const auto smr = r.assumption_set(Assumption::SmrIdentifiable);
    const auto mdr = r.assumption_set(Assumption::Mdr);
    std::vector<std::uint64_t> mec_a, mec_b;
    for (const auto& rec : r.records) {
      if (rec.mec == ra->mec) mec_a.push_back(rec.id);
      if (rec.mec == rb->mec) mec_b.push_back(rec.id);
    }
    if (smr != mec_b || smr.size() != 3) {
      ok = false;
      detail << "sparsest set is not the 3-DAG class of the 6-edge graph; ";
    }
    if (mdr != mec_a || mdr.size() != 14) {
      ok = false;
      detail << "rule-maximizer set is not the 14-DAG class of the 7-rule "
                "graph; ";
    }
  }
  if (heavy) {
    // outcome over the full cyclic space, recorded without assertion
    SearchSpace dcgs{SpaceKind::AllDcgs, 5, {}, false};
    SelectionReport rc = markov_scan(ci, dcgs, opt);
    const auto smr = rc.assumption_set(Assumption::SmrIdentifiable);
    const auto mdr = rc.assumption_set(Assumption::Mdr);
    const auto has = [](const std::vector<std::uint64_t>& v, std::uint64_t x) {
      return std::binary_search(v.begin(), v.end(), x);
    };
    std::uint16_t mine = 0xffff;
    for (auto e : rc.mec_total_edges) mine = std::min(mine, e);
    detail << "full-space outcome: markov " << rc.markov_count
           << ", min total edges " << int(mine) << ", sparsest-unique "
           << (smr.empty() ? "no" : "yes") << " (" << smr.size()
           << " graphs, contains the 6-edge DAG: "
           << (has(smr, graph_code(gb)) ? "yes" : "no")
           << "), rule-maximizer-unique " << (mdr.empty() ? "no" : "yes")
           << " (" << mdr.size() << " graphs, contains the 7-rule DAG: "
           << (has(mdr, graph_code(ga)) ? "yes" : "no") << ")";
  }
  rep.claims.push_back({"five-node-dag-selection", ok, detail.str()});
}

// ---- twelve-node rule families ----

struct FamilyPart {
  std::vector<std::pair<int, int>> pairs;  // 0-based endpoints
  NodeMask base = 0;
  NodeMask free = 0;
};

struct Family {
  std::string name;
  int expect;  // 0: holds in both; 1: holds in A, fails in B; 2: vice versa
  std::vector<FamilyPart> parts;
  bool nested_c = false;  // the {3}+C+D form with C nonempty in {1,2,4}
};

std::vector<std::pair<int, int>> cross(std::initializer_list<int> as,
                                       std::initializer_list<int> bs) {
  std::vector<std::pair<int, int>> out;
  for (int a : as)
    for (int b : bs)
      if (a != b) out.emplace_back(a - 1, b - 1);
  return out;
}

std::vector<std::pair<int, int>> unordered_within(std::initializer_list<int> as) {
  std::vector<std::pair<int, int>> out;
  std::vector<int> v(as);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      out.emplace_back(v[i] - 1, v[j] - 1);
  return out;
}

std::vector<Family> twelve_node_families() {
  const int Y = 12;
  std::vector<Family> fams;
  fams.push_back({"1", 0,
                  {{cross({6, 7, 8}, {1, 5}), nodeset({2, 3}),
                    nodeset({1, 4, 5, 6, 7, 8, 9, 10, 11, Y})}}});
  fams.push_back({"2", 0,
                  {{cross({9, 10, 11}, {1, 5}), nodeset({3, 4}),
                    nodeset({1, 2, 3, 5, 6, 7, 8, 9, 10, 11, Y})}}});
  fams.push_back({"3", 0,
                  {{unordered_within({6, 7, 8}), nodeset({2, 3}),
                    nodeset({1, 4, 5, 6, 7, 8, 9, 10, 11, Y})}}});
  fams.push_back({"4", 0,
                  {{unordered_within({9, 10, 11}), nodeset({3, 4}),
                    nodeset({1, 2, 5, 6, 7, 8, 9, 10, 11, Y})}}});
  fams.push_back({"5", 0,
                  {{cross({6, 7, 8}, {4}), nodeset({2, 3}),
                    nodeset({1, 4, 5, 6, 7, 8, 9, 10, 11, Y})},
                   {cross({6, 7, 8}, {4}), nodeset({1, 2, 5}),
                    nodeset({4, 6, 7, 8, Y})}}});
  fams.push_back({"6", 0,
                  {{cross({6, 7, 8}, {Y}), nodeset({2, 3}),
                    nodeset({1, 4, 5, 6, 7, 8, 9, 10, 11, Y})},
                   {cross({6, 7, 8}, {Y}), nodeset({1, 2, 5}),
                    nodeset({4, 6, 7, 8, 9, 10, 11, Y})}}});
  fams.push_back({"7", 0,
                  {{cross({9, 10, 11}, {2}), nodeset({3, 4}),
                    nodeset({1, 2, 5, 9, 10, 11, Y})},
                   {cross({9, 10, 11}, {2}), nodeset({1, 4, 5}),
                    nodeset({2, 9, 10, 11, Y})}}});
  fams.push_back({"8", 0,
                  {{cross({9, 10, 11}, {Y}), nodeset({3, 4}),
                    nodeset({1, 2, 5, 6, 7, 8, 9, 10, 11, Y})},
                   {cross({9, 10, 11}, {Y}), nodeset({1, 4, 5}),
                    nodeset({2, 6, 7, 8, 9, 10, 11, Y})}}});
  Family f9{"9", 0,
            {{cross({6, 7, 8}, {9, 10, 11}), nodeset({3}),
              nodeset({1, 2, 4, 5, 6, 7, 8, 9, 10, 11, Y})}}};
  f9.nested_c = true;
  fams.push_back(f9);
  fams.push_back({"10", 0,
                  {{{{1, 2}}, nodeset({1, 5}),
                    nodeset({1, 4, 5, 9, 10, 11, Y})}}});
  fams.push_back({"11", 0,
                  {{{{2, 3}}, nodeset({1, 5}),
                    nodeset({1, 4, 5, 6, 7, 8, Y})}}});
  fams.push_back({"12", 0,
                  {{{{2, 11}}, nodeset({1, 5}),
                    nodeset({1, 4, 5, 6, 7, 8, 9, 10, 11})}}});
  fams.push_back({"13", 0,
                  {{{{1, 2}}, nodeset({1, 5}), nodeset({4, 9, 10, 11, Y})}}});
  fams.push_back({"14", 0,
                  {{{{3, 2}}, nodeset({1, 5}), nodeset({2, 6, 7, 8, Y})}}});
  fams.push_back({"15", 0,
                  {{{{11, 2}}, nodeset({1, 5}),
                    nodeset({2, 6, 7, 8, 4, 9, 10, 11})}}});
  fams.push_back({"a", 1,
                  {{{{0, 4}}, nodeset({2, 3, 4, Y}),
                    nodeset({6, 7, 8, 9, 10, 11})}}});
  fams.push_back({"b", 2, {{{{1, 3}}, nodeset({1}), nodeset({Y})}}});
  fams.push_back({"c", 2, {{{{1, 11}}, nodeset({1}), nodeset({4})}}});
  fams.push_back({"d", 2, {{{{3, 11}}, nodeset({1}), nodeset({2})}}});
  return fams;
}

template <typename Fn>
void for_each_subset(NodeMask set, Fn&& fn) {
  NodeMask s = set;
  for (;;) {
    fn(s);
    if (s == 0) break;
    s = (s - 1) & set;
  }
}

// Enumerate a family exactly as listed: conditioning sets are
// base + C (+ nested C for the {3}-family), with endpoints stripped.
template <typename Fn>
void for_each_family_statement(const Family& fam, Fn&& fn) {
  for (const auto& part : fam.parts) {
    for (auto [a, b] : part.pairs) {
      const NodeMask ab = mask_bit(a) | mask_bit(b);
      if (fam.nested_c) {
        const NodeMask cset = nodeset({1, 2, 4});
        for_each_subset(cset, [&](NodeMask c) {
          if (c == 0) return;
          const NodeMask dset = part.free & ~ab & ~c;
          for_each_subset(dset, [&](NodeMask d) {
            fn(a, b, (part.base | c | d) & ~ab);
          });
        });
      } else {
        const NodeMask cset = part.free & ~ab;
        for_each_subset(cset, [&](NodeMask c) {
          fn(a, b, (part.base | c) & ~ab);
        });
      }
    }
  }
}

void claim_twelve_node(FixtureReport& rep) {
  const Dcg ga = parse_graph(fixtures::kTwelveA);
  const Dcg gb = parse_graph(fixtures::kTwelveB);
  const DsepPrep prep_a(ga), prep_b(gb);
  for (const auto& fam : twelve_node_families()) {
    long total = 0, hold_a = 0, hold_b = 0, agree = 0;
    std::string first_bad;
    for_each_family_statement(fam, [&](int a, int b, NodeMask s) {
      ++total;
      const bool sep_a = !mask_test(reach_set(ga, prep_a, a, s), b);
      const bool sep_b = !mask_test(reach_set(gb, prep_b, a, s), b);
      hold_a += sep_a;
      hold_b += sep_b;
      agree += sep_a == sep_b;
      bool bad = false;
      switch (fam.expect) {
        case 0: bad = !(sep_a && sep_b); break;
        case 1: bad = !(sep_a && !sep_b); break;
        case 2: bad = !(!sep_a && sep_b); break;
      }
      if (bad && first_bad.empty())
        first_bad = format_statement(12, {std::min(a, b), std::max(a, b), s});
    });
    bool ok = false;
    switch (fam.expect) {
      case 0: ok = hold_a == total && hold_b == total; break;
      case 1: ok = hold_a == total && hold_b == 0; break;
      case 2: ok = hold_a == 0 && hold_b == total; break;
    }
    std::ostringstream detail;
    detail << "holds " << hold_a << "/" << total << " and " << hold_b << "/"
           << total << ", graphs agree on " << agree << "/" << total;
    if (!ok) detail << "; counterexample: " << first_bad;
    rep.claims.push_back({"twelve-node-family-" + fam.name, ok, detail.str()});
  }
  // shared-rules property: the two graphs decide every family-(1..15)
  // statement identically
  long disagree = 0;
  std::string first_bad;
  for (const auto& fam : twelve_node_families()) {
    if (fam.expect != 0) continue;
    for_each_family_statement(fam, [&](int a, int b, NodeMask s) {
      const bool sep_a = !mask_test(reach_set(ga, prep_a, a, s), b);
      const bool sep_b = !mask_test(reach_set(gb, prep_b, a, s), b);
      if (sep_a != sep_b) {
        ++disagree;
        if (first_bad.empty())
          first_bad = format_statement(12, {std::min(a, b), std::max(a, b), s});
      }
    });
  }
  rep.claims.push_back(
      {"twelve-node-shared-rules", disagree == 0,
       disagree == 0 ? "both graphs decide every shared-family statement "
                       "identically"
                     : "disagreement at " + first_bad});
}

}  // namespace

FixtureReport verify_fixtures(const FixtureOptions& opts) {
  FixtureReport rep;
  claim_virtual_edge(rep);
  claim_edge_counts(rep);
  claim_feedback_pair(rep);
  claim_four_node_selection(rep, opts.threads);
  claim_five_weak_smr(rep, opts.threads, opts.heavy);
  claim_five_dag_selection(rep, opts.threads, opts.heavy);
  claim_twelve_node(rep);
  return rep;
}

}  // namespace dcg
