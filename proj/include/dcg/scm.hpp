#ifndef DCG_SCM_HPP_
#define DCG_SCM_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "dcg/graph.hpp"
#include "dcg/rng.hpp"
#include "dcg/sepset.hpp"

namespace dcg {

// Gaussian linear cyclic structural equation model
//   X = B^T X + eps,  eps ~ N(0, I_p)
// B(j,k) is the weight of edge j->k; the nonzero pattern of B is the induced
// directed graph. The equilibrium solution X = (I - B^T)^{-1} eps exists when
// (I - B^T) is invertible (guarded by a condition-number bound).
struct LinearScm {
  int p = 0;
  Eigen::MatrixXd weights;  // p x p, diagonal zero

  Dcg graph() const;
};

constexpr double kDefaultCondLimit = 1e8;

// sigma = (I - B^T)^{-1} (I - B^T)^{-T}; throws GenerationError when the
// system's condition number exceeds the limit.
Eigen::MatrixXd covariance(const Eigen::MatrixXd& weights,
                           double cond_limit = kDefaultCondLimit);

struct Dataset {
  int n = 0;
  int p = 0;
  Eigen::MatrixXd values;     // n x p
  std::uint64_t seed = 0;     // seed of record
};

// Edge probability q solving (p-1)(1-(1-q)^2) = ens, clamped to [0,1]: the
// expected number of really-adjacent neighbors per node equals ens.
double edge_probability(int p, double ens);

// Random DCG model: each ordered pair receives an edge independently with
// probability q(ens); nonzero weights uniform on [-1,-0.25] u [0.25,1];
// weights are resampled (structure kept) until the conditioning guard holds.
LinearScm random_dcg_scm(int p, double ens, Rng& rng, int max_retries = 64);

enum class StructureKind { Tree1, Tree2, Bipartite, Cycle5 };
const char* structure_name(StructureKind k);
StructureKind structure_from_name(const std::string& name);

// Fixed 5-node skeletons; tree directions drawn uniformly, bipartite
// directions redrawn jointly until a directed cycle exists, the cycle graph
// fixed as the directed ring 1 -> 2 -> ... -> 5 -> 1.
LinearScm structured_scm(StructureKind kind, Rng& rng, int max_retries = 64);

// n iid draws of the equilibrium solution; bit-identical for a fixed seed.
Dataset sample(const LinearScm& scm, int n, std::uint64_t seed);

// Exact population CI oracle: statement (j,k,S) included iff the partial
// correlation from sigma is below tol in magnitude.
SepSet population_ci(const Eigen::MatrixXd& sigma, double tol = 1e-9);

// SCM file format: graph header plus "<j> -> <k> <weight>" lines.
std::string serialize_scm(const LinearScm& scm);
LinearScm parse_scm(const std::string& text);

// Dataset CSV with header X1..Xp.
std::string serialize_dataset(const Dataset& d);
Dataset parse_dataset(const std::string& text);

}  // namespace dcg

#endif  // DCG_SCM_HPP_
