#ifndef DCG_SELECTION_HPP_
#define DCG_SELECTION_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dcg/dsep.hpp"
#include "dcg/graph.hpp"
#include "dcg/sepset.hpp"

namespace dcg {

enum class SpaceKind { AllDcgs, AllDags, Explicit };

// Graph search space. AllDcgs on p nodes has exactly 2^(p(p-1)) members in
// ascending edge-code order; AllDags is its acyclic subset in the same
// order. Enumeration beyond p = 5 requires the override flag (and is hard
// capped at p = 8 by the code representation).
struct SearchSpace {
  SpaceKind kind = SpaceKind::AllDcgs;
  int p = 0;
  std::vector<std::uint64_t> ids;  // Explicit only; ascending, deduplicated
  bool override_cap = false;
};

std::uint64_t enumeration_bound(const SearchSpace& space);
void check_space(const SearchSpace& space);

// Visits every member exactly once in deterministic (ascending-code) order.
void for_each_graph(const SearchSpace& space,
                    const std::function<void(std::uint64_t, const Dcg&)>& fn);
std::uint64_t space_count(const SearchSpace& space);

enum class Assumption { Cfc, Mdr, SmrIdentifiable, SmrWeak, PMin, SgsMin };
constexpr int kAssumptionCount = 6;
const char* assumption_name(Assumption a);
Assumption assumption_from_name(const std::string& name);

struct GraphRecord {
  std::uint64_t id = 0;
  std::uint32_t dsep_count = 0;
  std::uint32_t pairs_mask = 0;  // skeleton pairs, bit = pair_index(p,j,k)
  std::uint16_t total_edges = 0;
  std::uint32_t mec = 0;
  std::array<bool, kAssumptionCount> flags{};
};

struct ScanOptions {
  int threads = 0;            // 0 = library default
  bool with_sgs = true;       // single-edge-deletion SGS pass
  bool sgs_exhaustive = false;  // all-proper-subgraph fallback (tests)
  bool override_cap = false;
};

// Result of scanning a search space against a CI set: the Markov graphs,
// their MEC partition by d-separation-set equality, and the per-assumption
// satisfying sets.
struct SelectionReport {
  int p = 0;
  SpaceKind space = SpaceKind::AllDcgs;
  std::uint64_t scanned = 0;
  std::uint64_t markov_count = 0;
  std::vector<GraphRecord> records;       // ascending id
  std::vector<SepSet> mec_sepsets;        // per MEC block
  std::vector<std::uint32_t> mec_sizes;
  std::vector<std::uint16_t> mec_total_edges;
  std::vector<std::uint32_t> mec_dsep_count;
  std::array<bool, kAssumptionCount> unique_mec{};
  std::array<bool, kAssumptionCount> unique_skeleton{};
  std::string ci_digest;
  bool sgs_computed = false;

  std::vector<std::uint64_t> assumption_set(Assumption a) const;
  const GraphRecord* find(std::uint64_t id) const;
};

// OpenMP scan: chunked over disjoint code ranges, merged in range order, so
// the report is identical at every thread count.
SelectionReport markov_scan(const SepSet& ci, const SearchSpace& space,
                            const ScanOptions& opt = {});
// Plain reference implementation (no chunking, per-statement queries);
// kept for testing the parallel kernel against.
SelectionReport markov_scan_serial(const SepSet& ci, const SearchSpace& space,
                                   const ScanOptions& opt = {});

std::vector<std::uint64_t> select(const SepSet& ci, const SearchSpace& space,
                                  Assumption a, const ScanOptions& opt = {});

std::string serialize_report(const SelectionReport& r);

// SGS-minimality of one Markov graph by exhaustive proper-subgraph search;
// validates the single-edge-deletion shortcut.
bool sgs_minimal_exhaustive(const Dcg& g, const SepSet& ci);
bool sgs_minimal_deletion(const Dcg& g, const SepSet& ci);

std::string ci_digest(const SepSet& ci);

}  // namespace dcg

#endif  // DCG_SELECTION_HPP_
