#include "dcg/scm.hpp"

#include <cmath>
#include <sstream>

#include "dcg/citest.hpp"
#include "dcg/errors.hpp"

namespace dcg {

Dcg LinearScm::graph() const {
  Dcg g(p);
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < p; ++k)
      if (j != k && weights(j, k) != 0.0) g.add_edge(j, k);
  return g;
}

Eigen::MatrixXd covariance(const Eigen::MatrixXd& weights, double cond_limit) {
  const int p = static_cast<int>(weights.rows());
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(p, p) - weights.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const double smin = svd.singularValues()(p - 1);
  const double smax = svd.singularValues()(0);
  if (!(smin > 0.0) || smax / smin > cond_limit)
    throw GenerationError("(I - B^T) is singular or ill-conditioned (cond ~ " +
                          std::to_string(smin > 0 ? smax / smin : 0.0) + ")");
  const Eigen::MatrixXd m = a.partialPivLu().solve(
      Eigen::MatrixXd::Identity(p, p));
  return m * m.transpose();
}

double edge_probability(int p, double ens) {
  if (p < 2 || ens < 0.0)
    throw std::invalid_argument("edge_probability: bad arguments");
  const double inner = 1.0 - ens / (p - 1);
  if (inner <= 0.0) return 1.0;
  const double q = 1.0 - std::sqrt(inner);
  return std::min(1.0, std::max(0.0, q));
}

namespace {

double draw_weight(Rng& rng) {
  const double mag = uniform_range(rng, 0.25, 1.0);
  return uniform01(rng) < 0.5 ? -mag : mag;
}

// Fill weights for the fixed edge pattern, retrying the weight draw until
// the conditioning guard admits an equilibrium distribution.
LinearScm weighted_from_pattern(const Dcg& pattern, Rng& rng,
                                int max_retries) {
  LinearScm scm;
  scm.p = pattern.p;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    scm.weights = Eigen::MatrixXd::Zero(pattern.p, pattern.p);
    for (int j = 0; j < pattern.p; ++j)
      for (int k = 0; k < pattern.p; ++k)
        if (pattern.has_edge(j, k)) scm.weights(j, k) = draw_weight(rng);
    try {
      covariance(scm.weights);
      return scm;
    } catch (const GenerationError&) {
    }
  }
  throw GenerationError("no well-conditioned weight draw in " +
                        std::to_string(max_retries) + " attempts for a " +
                        std::to_string(pattern.edge_count()) + "-edge pattern");
}

}  // namespace

LinearScm random_dcg_scm(int p, double ens, Rng& rng, int max_retries) {
  if (p < 2 || p > kMaxNodes)
    throw std::invalid_argument("random_dcg_scm: p out of range");
  if (ens < 0.0 || ens > p - 1)
    throw std::invalid_argument("expected neighborhood size must be in [0, p-1]");
  const double q = edge_probability(p, ens);
  Dcg pattern(p);
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < p; ++k)
      if (j != k && uniform01(rng) < q) pattern.add_edge(j, k);
  return weighted_from_pattern(pattern, rng, max_retries);
}

const char* structure_name(StructureKind k) {
  switch (k) {
    case StructureKind::Tree1: return "tree1";
    case StructureKind::Tree2: return "tree2";
    case StructureKind::Bipartite: return "bipartite";
    case StructureKind::Cycle5: return "cycle5";
  }
  return "?";
}

StructureKind structure_from_name(const std::string& name) {
  if (name == "tree1") return StructureKind::Tree1;
  if (name == "tree2") return StructureKind::Tree2;
  if (name == "bipartite") return StructureKind::Bipartite;
  if (name == "cycle5") return StructureKind::Cycle5;
  throw std::invalid_argument(
      "unknown structure '" + name + "' (expected tree1|tree2|bipartite|cycle5)");
}

LinearScm structured_scm(StructureKind kind, Rng& rng, int max_retries) {
  const int p = 5;
  Dcg pattern(p);
  if (kind == StructureKind::Cycle5) {
    for (int v = 0; v < p; ++v) pattern.add_edge(v, (v + 1) % p);
    return weighted_from_pattern(pattern, rng, max_retries);
  }
  std::vector<std::pair<int, int>> skel;
  switch (kind) {
    case StructureKind::Tree1:
      skel = {{0, 1}, {0, 2}, {1, 3}, {1, 4}};
      break;
    case StructureKind::Tree2:
      skel = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
      break;
    case StructureKind::Bipartite:
      skel = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
      break;
    default:
      break;
  }
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    pattern = Dcg(p);
    for (auto [a, b] : skel) {
      if (uniform01(rng) < 0.5)
        pattern.add_edge(a, b);
      else
        pattern.add_edge(b, a);
    }
    // trees cannot form a cycle; bipartite direction draws are redone
    // jointly until one exists
    if (kind == StructureKind::Bipartite && is_dag(pattern)) continue;
    return weighted_from_pattern(pattern, rng, max_retries);
  }
  throw GenerationError("no cyclic direction assignment found in " +
                        std::to_string(max_retries) + " attempts");
}

Dataset sample(const LinearScm& scm, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  const int p = scm.p;
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(p, p) - scm.weights.transpose();
  const auto lu = a.partialPivLu();
  Dataset d;
  d.n = n;
  d.p = p;
  d.seed = seed;
  d.values.resize(n, p);
  Rng rng(seed);
  Eigen::VectorXd eps(p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) eps(j) = normal_draw(rng);
    d.values.row(i) = lu.solve(eps).transpose();
  }
  return d;
}

SepSet population_ci(const Eigen::MatrixXd& sigma, double tol) {
  const int p = static_cast<int>(sigma.rows());
  SepSet out(p);
  for (int j = 0; j < p; ++j)
    for (int k = j + 1; k < p; ++k) {
      const NodeMask others = (mask_bit(p) - 1) & ~(mask_bit(j) | mask_bit(k));
      for (NodeMask s = others;; s = (s - 1) & others) {
        if (std::fabs(partial_correlation(sigma, j, k, s)) < tol)
          out.set(j, k, s);
        if (s == 0) break;
      }
    }
  return out;
}

std::string serialize_scm(const LinearScm& scm) {
  std::ostringstream out;
  out << "p=" << scm.p << "\n";
  out.precision(17);
  for (int j = 0; j < scm.p; ++j)
    for (int k = 0; k < scm.p; ++k)
      if (j != k && scm.weights(j, k) != 0.0)
        out << j + 1 << " -> " << k + 1 << " " << scm.weights(j, k) << "\n";
  return out.str();
}

LinearScm parse_scm(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int p = -1;
  LinearScm scm;
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r\n");
    std::string t = line.substr(b, e - b + 1);
    if (t.empty() || t[0] == '#') continue;
    if (p < 0) {
      if (t.rfind("p=", 0) != 0)
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected header 'p=<int>'");
      p = std::stoi(t.substr(2));
      if (p < 2 || p > kMaxNodes)
        throw ParseError("line " + std::to_string(lineno) +
                         ": node count must be in [2, 16]");
      scm.p = p;
      scm.weights = Eigen::MatrixXd::Zero(p, p);
      continue;
    }
    std::istringstream ls(t);
    int j = 0, k = 0;
    std::string arrow;
    double w = 0.0;
    std::string extra;
    if (!(ls >> j >> arrow >> k >> w) || arrow != "->" || (ls >> extra))
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected '<j> -> <k> <weight>'");
    if (j < 1 || j > p || k < 1 || k > p)
      throw ParseError("line " + std::to_string(lineno) +
                       ": node index out of range");
    if (j == k)
      throw ParseError("line " + std::to_string(lineno) + ": self-loop forbidden");
    if (w == 0.0)
      throw ParseError("line " + std::to_string(lineno) + ": zero edge weight");
    scm.weights(j - 1, k - 1) = w;
  }
  if (p < 0) throw ParseError("missing 'p=<int>' header");
  return scm;
}

std::string serialize_dataset(const Dataset& d) {
  std::ostringstream out;
  out.precision(17);
  for (int j = 0; j < d.p; ++j) out << (j ? "," : "") << "X" << j + 1;
  out << "\n";
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.p; ++j) out << (j ? "," : "") << d.values(i, j);
    out << "\n";
  }
  return out.str();
}

Dataset parse_dataset(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty dataset");
  int p = 1;
  for (char c : line)
    if (c == ',') ++p;
  std::vector<double> vals;
  int n = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string tok;
    int cols = 0;
    while (std::getline(ls, tok, ',')) {
      try {
        vals.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) +
                         ": malformed number");
      }
      ++cols;
    }
    if (cols != p)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected " + std::to_string(p) + " columns");
    ++n;
  }
  if (n < 1) throw ParseError("dataset has no rows");
  Dataset d;
  d.n = n;
  d.p = p;
  d.values.resize(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) d.values(i, j) = vals[i * p + j];
  return d;
}

}  // namespace dcg
