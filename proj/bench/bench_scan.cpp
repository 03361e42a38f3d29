// Times the Markov scan: plain serial reference vs the OpenMP kernel at
// several thread counts, over the full four- and five-node DCG spaces.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dcg/fixtures.hpp"
#include "dcg/selection.hpp"

namespace {

double time_once(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void bench_space(const char* label, const dcg::SepSet& ci, int p) {
  dcg::SearchSpace space{dcg::SpaceKind::AllDcgs, p, {}, false};
  dcg::ScanOptions opt;
  opt.with_sgs = false;

  dcg::SelectionReport ref;
  const double t_serial = time_once(
      [&] { ref = dcg::markov_scan_serial(ci, space, opt); });
  std::printf("%-18s reference      %8.3fs  (markov %llu, mecs %zu)\n", label,
              t_serial, static_cast<unsigned long long>(ref.markov_count),
              ref.mec_sepsets.size());

#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif
  for (int t = 1; t <= max_threads; t *= 2) {
    opt.threads = t;
    dcg::SelectionReport rep;
    const double dt = time_once([&] { rep = dcg::markov_scan(ci, space, opt); });
    const bool same = rep.markov_count == ref.markov_count &&
                      rep.records.size() == ref.records.size();
    std::printf("%-18s kernel x%-2d    %8.3fs  speedup %5.1fx  %s\n", label, t,
                dt, t_serial / dt, same ? "" : "MISMATCH");
  }
}

}  // namespace

int main() {
  bench_space("four-node space", dcg::fixtures::four_node_ci(), 4);
  bench_space("five-node space", dcg::fixtures::five_dag_ci(), 5);
  return 0;
}
