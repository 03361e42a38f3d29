#ifndef DCG_EXPERIMENTS_HPP_
#define DCG_EXPERIMENTS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dcg/scm.hpp"
#include "dcg/selection.hpp"

namespace dcg {

// Directed graph learning end-to-end: select the graphs satisfying the
// assumption, then report the MEC iff all selected graphs share one, and
// the skeleton iff all selected graphs share one.
struct Algorithm1Output {
  std::vector<std::uint64_t> selected;
  std::vector<std::uint64_t> mec;                 // empty when not unique
  std::vector<std::pair<int, int>> skel;          // empty when not shared
  bool mec_unique = false;
  bool skeleton_unique = false;
  double seconds = 0.0;
};

Algorithm1Output algorithm1(const SepSet& ci, const SearchSpace& space,
                            Assumption a, const ScanOptions& opt = {});

enum class ExperimentMode { Proportions, Recovery };

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::Proportions;
  int p = 5;
  int trials = 20;
  std::vector<int> sample_sizes = {100, 1000};
  std::vector<double> ens_list = {1.0, 2.0, 3.0};
  std::optional<StructureKind> structure;  // replaces the ens grid when set
  std::vector<Assumption> assumptions;     // empty = mode default
  SpaceKind space = SpaceKind::AllDcgs;
  double alpha = 0.001;
  std::uint64_t base_seed = 1;
  std::string out_dir;  // empty = default_out_dir()
  int threads = 0;
  bool population_oracle = false;  // exact CI from the implied covariance
  int max_gen_retries = 64;
};

// "key = value" lines mirroring the CLI flags.
ExperimentConfig parse_experiment_config(const std::string& text);

struct ExperimentResult {
  std::string detail_path;
  std::string summary_path;
  std::string detail_csv;
  std::string summary_csv;
};

// Per (n, ens-or-structure, trial): simulate, estimate CI, and flag whether
// the true model satisfies each assumption (membership of the true graph in
// the assumption's selected set). Trials run in parallel on independent RNG
// substreams; rows are emitted in grid order, so output bytes do not depend
// on the thread count.
ExperimentResult run_assumption_proportions(const ExperimentConfig& cfg);

// Same grid, scoring exact skeleton recovery of algorithm1 per assumption,
// with edge precision/recall as auxiliary columns.
ExperimentResult run_skeleton_recovery(const ExperimentConfig& cfg);

}  // namespace dcg

#endif  // DCG_EXPERIMENTS_HPP_
