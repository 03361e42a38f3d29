#ifndef DCG_FIXTURES_HPP_
#define DCG_FIXTURES_HPP_

#include <string>
#include <vector>

#include "dcg/graph.hpp"
#include "dcg/scm.hpp"
#include "dcg/sepset.hpp"

namespace dcg {

// Worked examples encoded as literal graph-file strings so drift is
// grep-detectable. Parsed on demand by the fixture suite and tests.
namespace fixtures {

// 4-node graph whose cycle 1->2->3->1 makes the non-edge pair (1,4)
// virtually adjacent through the common child 2.
extern const char* kVirtualEdge4;

// Four 5-node graphs around one 4-hub: two with 9 total edges (A: 6 real,
// B: 9 real) forming one equivalence class, two with 7 total edges (C: 5
// real, D: 7 real) forming another.
extern const char* kEdgeCountA;
extern const char* kEdgeCountB;
extern const char* kEdgeCountC;
extern const char* kEdgeCountD;

// 5-node pair with identical skeletons whose d-separation sets are strictly
// nested: flipping the 4-5 edge turns the conductor (1,4,2) into an
// imperfect non-conductor and adds the rule 1 _||_ 4 | {}.
extern const char* kFeedbackPairA;
extern const char* kFeedbackPairB;

// 4-node pair: A (chain 1->2->3->4 plus chord 1->4) entails two rules; B
// entails only 1 _||_ 2 | {4}.
extern const char* kFourNodeA;
extern const char* kFourNodeB;

// 5-node DAG pair: A is the d-separation-count maximizer, B the unique
// sparsest representative, for the 9-statement CI set below.
extern const char* kFiveDagA;
extern const char* kFiveDagB;

// 12-node pair (node 12 written Y in the drawings): A is cyclic with three
// virtual edges, B is a DAG one real edge larger.
extern const char* kTwelveA;
extern const char* kTwelveB;

// CI set {1 _||_ 3 | 2, 2 _||_ 4 | {1,3}, 1 _||_ 2 | 4} on p=4.
SepSet four_node_ci();
// The 9-statement CI set for the 5-node DAG pair.
SepSet five_dag_ci();
// D_sep(kFeedbackPairA) plus the four extra statements produced by the
// weight cancellation below.
SepSet five_weak_smr_ci();
std::vector<SepStatement> five_weak_smr_extras();
// kFeedbackPairA with the cancellation weights (all free parameters 1/2,
// so the 2->5 weight is -1/4).
LinearScm five_weak_smr_scm();

}  // namespace fixtures

struct FixtureClaim {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct FixtureReport {
  std::vector<FixtureClaim> claims;
  bool all_pass() const;
};

struct FixtureOptions {
  int threads = 0;
  bool heavy = true;  // include the full five-node space scans
};

// Runs every encoded example and reports pass/fail per claim, with a
// counterexample statement on failure.
FixtureReport verify_fixtures(const FixtureOptions& opts = {});

}  // namespace dcg

#endif  // DCG_FIXTURES_HPP_
