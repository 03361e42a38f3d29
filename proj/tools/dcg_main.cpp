#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "dcg/citest.hpp"
#include "dcg/dsep.hpp"
#include "dcg/errors.hpp"
#include "dcg/experiments.hpp"
#include "dcg/fixtures.hpp"
#include "dcg/io.hpp"
#include "dcg/selection.hpp"

namespace {

dcg::NodeMask parse_cond(const std::string& cond, int p, int j, int k) {
  dcg::NodeMask m = 0;
  if (cond == "-" || cond.empty()) return m;
  std::istringstream in(cond);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    int v = std::stoi(tok);
    if (v < 1 || v > p)
      throw std::invalid_argument("conditioning node out of range: " + tok);
    if (v == j || v == k)
      throw std::invalid_argument("conditioning set contains an endpoint");
    m |= dcg::mask_bit(v - 1);
  }
  return m;
}

dcg::SpaceKind parse_space(const std::string& s) {
  if (s == "dcg") return dcg::SpaceKind::AllDcgs;
  if (s == "dag") return dcg::SpaceKind::AllDags;
  throw std::invalid_argument("space must be dcg|dag");
}

std::string pairs_string(const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) return "-";
  std::ostringstream out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out << " ";
    out << pairs[i].first + 1 << "-" << pairs[i].second + 1;
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning small directed graphical models with feedback"};
  app.require_subcommand(1);

  // dsep
  auto* dsep_cmd = app.add_subcommand("dsep", "d-separation query on a graph");
  std::string dsep_graph, dsep_cond = "-";
  int dsep_j = 0, dsep_k = 0;
  bool dsep_oracle = false;
  dsep_cmd->add_option("--graph", dsep_graph, "graph file")->required();
  dsep_cmd->add_option("--j", dsep_j, "first node (1-based)")->required();
  dsep_cmd->add_option("--k", dsep_k, "second node (1-based)")->required();
  dsep_cmd->add_option("--cond", dsep_cond,
                       "conditioning set 'a,b,...' or '-' for empty");
  dsep_cmd->add_flag("--oracle", dsep_oracle,
                     "use the path-enumeration oracle (p <= 8)");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "enumerate a graph space");
  int enum_p = 3;
  std::string enum_space = "dcg", enum_out;
  bool enum_list = false, enum_override = false;
  enum_cmd->add_option("--p", enum_p, "node count")->required();
  enum_cmd->add_option("--space", enum_space, "dcg|dag");
  enum_cmd->add_flag("--list", enum_list, "write graph codes, not just the count");
  enum_cmd->add_option("--out", enum_out, "output file (default stdout)");
  enum_cmd->add_flag("--override-cap", enum_override,
                     "allow enumeration beyond p = 5");

  // select
  auto* sel_cmd =
      app.add_subcommand("select", "graphs satisfying an assumption");
  std::string sel_ci, sel_space = "dcg", sel_assumption, sel_out;
  int sel_p = 0, sel_threads = 0;
  bool sel_override = false, sel_no_sgs = false;
  sel_cmd->add_option("--ci", sel_ci, "CI statements file")->required();
  sel_cmd->add_option("--space", sel_space, "dcg|dag");
  sel_cmd->add_option("--p", sel_p, "node count")->required();
  sel_cmd->add_option("--assumption", sel_assumption,
                      "cfc|mdr|smr_id|smr_weak|pmin|sgsmin")
      ->required();
  sel_cmd->add_option("--out", sel_out, "selection report CSV path");
  sel_cmd->add_option("--threads", sel_threads, "scan threads (0 = all)");
  sel_cmd->add_flag("--override-cap", sel_override);
  sel_cmd->add_flag("--no-sgs", sel_no_sgs,
                    "skip the SGS-minimality column (faster)");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "draw a linear model and data");
  std::string sim_kind = "random", sim_data, sim_scm, sim_graph;
  int sim_p = 5, sim_n = 100;
  double sim_ens = 1.0;
  std::uint64_t sim_seed = 1;
  sim_cmd->add_option("--kind", sim_kind,
                      "random|tree1|tree2|bipartite|cycle5");
  sim_cmd->add_option("--p", sim_p, "node count (random kind)");
  sim_cmd->add_option("--ens", sim_ens, "expected neighborhood size");
  sim_cmd->add_option("--n", sim_n, "sample count")->required();
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_option("--out-data", sim_data, "dataset CSV path")->required();
  sim_cmd->add_option("--out-scm", sim_scm, "weighted model file path");
  sim_cmd->add_option("--out-graph", sim_graph, "induced graph file path");

  // estimate-ci
  auto* est_cmd = app.add_subcommand("estimate-ci",
                                     "conditional-independence tests");
  std::string est_data, est_out;
  double est_alpha = 0.001;
  int est_max_cond = -1;
  est_cmd->add_option("--data", est_data, "dataset CSV")->required();
  est_cmd->add_option("--alpha", est_alpha, "significance level");
  est_cmd->add_option("--max-cond", est_max_cond,
                      "conditioning set size cap (-1 = none)");
  est_cmd->add_option("--out", est_out, "CI statements file (default stdout)");

  // algorithm1
  auto* alg_cmd =
      app.add_subcommand("algorithm1", "MEC/skeleton from a CI set");
  std::string alg_ci, alg_space = "dcg", alg_assumption = "mdr";
  int alg_p = 0, alg_threads = 0;
  alg_cmd->add_option("--ci", alg_ci, "CI statements file")->required();
  alg_cmd->add_option("--p", alg_p, "node count")->required();
  alg_cmd->add_option("--space", alg_space, "dcg|dag");
  alg_cmd->add_option("--assumption", alg_assumption,
                      "cfc|mdr|smr_id|smr_weak|pmin|sgsmin");
  alg_cmd->add_option("--threads", alg_threads, "scan threads");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "simulation study");
  std::string exp_config, exp_mode = "proportions", exp_sizes = "100,1000",
              exp_ens = "1,2,3", exp_structure, exp_assumptions,
              exp_space = "dcg", exp_out_dir;
  int exp_trials = 20, exp_threads = 0, exp_p = 5;
  double exp_alpha = 0.001;
  std::uint64_t exp_seed = 1;
  bool exp_pop = false;
  exp_cmd->add_option("--config", exp_config, "key = value config file");
  exp_cmd->add_option("--mode", exp_mode, "proportions|recovery");
  exp_cmd->add_option("--p", exp_p, "node count");
  exp_cmd->add_option("--trials", exp_trials, "trials per cell");
  exp_cmd->add_option("--sizes", exp_sizes, "sample sizes, comma separated");
  exp_cmd->add_option("--ens", exp_ens,
                      "expected neighborhood sizes, comma separated");
  exp_cmd->add_option("--structure", exp_structure,
                      "tree1|tree2|bipartite|cycle5 (replaces --ens)");
  exp_cmd->add_option("--assumptions", exp_assumptions,
                      "comma separated; default depends on mode");
  exp_cmd->add_option("--space", exp_space, "dcg|dag");
  exp_cmd->add_option("--alpha", exp_alpha, "significance level");
  exp_cmd->add_option("--seed", exp_seed, "base seed");
  exp_cmd->add_option("--out-dir", exp_out_dir,
                      "output directory (default $DCG_OUT_DIR or .)");
  exp_cmd->add_option("--threads", exp_threads, "parallel trials");
  exp_cmd->add_flag("--population-oracle", exp_pop,
                    "exact CI from the implied covariance");

  // fixtures
  auto* fix_cmd = app.add_subcommand("fixtures", "run the example suite");
  int fix_threads = 0;
  bool fix_fast = false;
  std::string fix_out;
  fix_cmd->add_option("--threads", fix_threads, "scan threads");
  fix_cmd->add_flag("--fast", fix_fast, "skip the five-node space scans");
  fix_cmd->add_option("--out", fix_out, "also write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*dsep_cmd) {
      dcg::Dcg g = dcg::parse_graph(dcg::read_file(dsep_graph));
      dcg::NodeMask cond = parse_cond(dsep_cond, g.p, dsep_j, dsep_k);
      const bool conn =
          dsep_oracle
              ? dcg::d_connected_oracle(g, dsep_j - 1, dsep_k - 1, cond)
              : dcg::d_connected(g, dsep_j - 1, dsep_k - 1, cond);
      std::cout << (conn ? "connected" : "separated") << "\n";
    } else if (*enum_cmd) {
      dcg::SearchSpace space{parse_space(enum_space), enum_p, {}, enum_override};
      if (enum_list) {
        std::ostringstream out;
        dcg::for_each_graph(space, [&](std::uint64_t id, const dcg::Dcg&) {
          out << id << "\n";
        });
        if (enum_out.empty())
          std::cout << out.str();
        else
          dcg::write_file_atomic(enum_out, out.str());
      } else {
        std::cout << dcg::space_count(space) << "\n";
      }
    } else if (*sel_cmd) {
      dcg::SepSet ci = dcg::parse_sepset(dcg::read_file(sel_ci), sel_p);
      dcg::SearchSpace space{parse_space(sel_space), sel_p, {}, sel_override};
      dcg::ScanOptions opt;
      opt.threads = sel_threads;
      opt.with_sgs = !sel_no_sgs;
      opt.override_cap = sel_override;
      dcg::SelectionReport rep = dcg::markov_scan(ci, space, opt);
      if (!sel_out.empty())
        dcg::write_file_atomic(sel_out, dcg::serialize_report(rep));
      const auto ids =
          rep.assumption_set(dcg::assumption_from_name(sel_assumption));
      std::cout << "markov " << rep.markov_count << ", mecs "
                << rep.mec_sepsets.size() << ", selected " << ids.size()
                << "\n";
      for (auto id : ids) std::cout << id << "\n";
    } else if (*sim_cmd) {
      dcg::Rng rng(sim_seed);
      dcg::LinearScm scm =
          sim_kind == "random"
              ? dcg::random_dcg_scm(sim_p, sim_ens, rng)
              : dcg::structured_scm(dcg::structure_from_name(sim_kind), rng);
      dcg::Dataset data = dcg::sample(scm, sim_n, dcg::derive_seed(sim_seed, 1, 0));
      dcg::write_file_atomic(sim_data, dcg::serialize_dataset(data));
      if (!sim_scm.empty())
        dcg::write_file_atomic(sim_scm, dcg::serialize_scm(scm));
      if (!sim_graph.empty())
        dcg::write_file_atomic(sim_graph, dcg::serialize_graph(scm.graph()));
    } else if (*est_cmd) {
      dcg::Dataset data = dcg::parse_dataset(dcg::read_file(est_data));
      dcg::CiTestConfig cfg;
      cfg.alpha = est_alpha;
      cfg.max_cond_size = est_max_cond;
      int skipped = 0;
      dcg::SepSet ci = dcg::estimate_ci(data, cfg, &skipped);
      if (skipped)
        std::cerr << "warning: " << skipped
                  << " statements lacked degrees of freedom and were treated "
                     "as dependent\n";
      if (est_out.empty())
        std::cout << dcg::serialize_sepset(ci);
      else
        dcg::write_file_atomic(est_out, dcg::serialize_sepset(ci));
    } else if (*alg_cmd) {
      dcg::SepSet ci = dcg::parse_sepset(dcg::read_file(alg_ci), alg_p);
      dcg::SearchSpace space{parse_space(alg_space), alg_p, {}, false};
      dcg::ScanOptions opt;
      opt.threads = alg_threads;
      dcg::Algorithm1Output out = dcg::algorithm1(
          ci, space, dcg::assumption_from_name(alg_assumption), opt);
      std::cout << "selected " << out.selected.size() << "\n";
      std::cout << "mec ";
      if (out.mec_unique) {
        for (std::size_t i = 0; i < out.mec.size(); ++i)
          std::cout << (i ? " " : "") << out.mec[i];
        std::cout << "\n";
      } else {
        std::cout << "-\n";
      }
      std::cout << "skeleton " << (out.skeleton_unique ? pairs_string(out.skel) : "-")
                << "\n";
      std::cout << "seconds " << out.seconds << "\n";
    } else if (*exp_cmd) {
      dcg::ExperimentConfig cfg;
      if (!exp_config.empty()) {
        cfg = dcg::parse_experiment_config(dcg::read_file(exp_config));
      } else {
        cfg.mode = exp_mode == "recovery" ? dcg::ExperimentMode::Recovery
                                          : dcg::ExperimentMode::Proportions;
        cfg.p = exp_p;
        cfg.trials = exp_trials;
        cfg.sample_sizes.clear();
        {
          std::istringstream in(exp_sizes);
          std::string tok;
          while (std::getline(in, tok, ','))
            cfg.sample_sizes.push_back(std::stoi(tok));
        }
        cfg.ens_list.clear();
        {
          std::istringstream in(exp_ens);
          std::string tok;
          while (std::getline(in, tok, ','))
            cfg.ens_list.push_back(std::stod(tok));
        }
        if (!exp_structure.empty())
          cfg.structure = dcg::structure_from_name(exp_structure);
        if (!exp_assumptions.empty()) {
          std::istringstream in(exp_assumptions);
          std::string tok;
          while (std::getline(in, tok, ','))
            cfg.assumptions.push_back(dcg::assumption_from_name(tok));
        }
        cfg.space = parse_space(exp_space);
        cfg.alpha = exp_alpha;
        cfg.base_seed = exp_seed;
        cfg.out_dir = exp_out_dir;
        cfg.threads = exp_threads;
        cfg.population_oracle = exp_pop;
      }
      dcg::ExperimentResult res = cfg.mode == dcg::ExperimentMode::Recovery
                                      ? dcg::run_skeleton_recovery(cfg)
                                      : dcg::run_assumption_proportions(cfg);
      std::cout << "wrote " << res.detail_path << "\n";
      std::cout << "wrote " << res.summary_path << "\n";
    } else if (*fix_cmd) {
      dcg::FixtureOptions opts;
      opts.threads = fix_threads;
      opts.heavy = !fix_fast;
      dcg::FixtureReport rep = dcg::verify_fixtures(opts);
      std::ostringstream out;
      for (const auto& c : rep.claims)
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail
            << "\n";
      std::cout << out.str();
      if (!fix_out.empty()) dcg::write_file_atomic(fix_out, out.str());
      if (!rep.all_pass()) return 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
