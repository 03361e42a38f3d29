#include "dcg/citest.hpp"

#include <bit>
#include <cmath>

#include "dcg/errors.hpp"
#include "dcg/rng.hpp"
#include "dcg/scm.hpp"

namespace dcg {

double partial_correlation(const Eigen::MatrixXd& corr, int j, int k,
                           NodeMask cond) {
  const int p = static_cast<int>(corr.rows());
  if (j == k || j < 0 || k < 0 || j >= p || k >= p)
    throw std::invalid_argument("partial_correlation: bad endpoints");
  if (cond & (mask_bit(j) | mask_bit(k)))
    throw std::invalid_argument("conditioning set contains an endpoint");
  std::vector<int> idx = {j, k};
  for (int v = 0; v < p; ++v)
    if (mask_test(cond, v)) idx.push_back(v);
  const int m = static_cast<int>(idx.size());
  Eigen::MatrixXd sub(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) sub(a, b) = corr(idx[a], idx[b]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
  if (!lu.isInvertible())
    throw DataError("singular correlation submatrix in partial correlation");
  const Eigen::MatrixXd prec = lu.inverse();
  double r = -prec(0, 1) / std::sqrt(prec(0, 0) * prec(1, 1));
  if (r > 1.0) r = 1.0;
  if (r < -1.0) r = -1.0;
  return r;
}

double fisher_z_statistic(double r, int n, int cond_size) {
  const double cap = 1.0 - 1e-12;
  if (r > cap) r = cap;
  if (r < -cap) r = -cap;
  return std::sqrt(double(n) - cond_size - 3.0) * std::atanh(r);
}

Eigen::MatrixXd correlation_matrix(const Dataset& data) {
  const int n = data.n, p = data.p;
  Eigen::RowVectorXd mean = data.values.colwise().mean();
  Eigen::MatrixXd centered = data.values.rowwise() - mean;
  Eigen::VectorXd sd(p);
  for (int j = 0; j < p; ++j) {
    sd(j) = std::sqrt(centered.col(j).squaredNorm() / (n - 1));
    if (!(sd(j) > 0.0))
      throw DataError("column X" + std::to_string(j + 1) +
                      " has zero variance");
  }
  Eigen::MatrixXd corr = centered.transpose() * centered / double(n - 1);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) corr(a, b) /= sd(a) * sd(b);
  return corr;
}

SepSet estimate_ci(const Dataset& data, const CiTestConfig& cfg, int* skipped) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw std::invalid_argument("alpha must be in (0,1)");
  const int p = data.p;
  const Eigen::MatrixXd corr = correlation_matrix(data);
  const double crit = normal_quantile(1.0 - cfg.alpha / 2.0);
  const int max_cond = cfg.max_cond_size < 0 ? p - 2 : cfg.max_cond_size;
  SepSet out(p);
  int nskipped = 0;
  for (int j = 0; j < p; ++j)
    for (int k = j + 1; k < p; ++k) {
      const NodeMask others = (mask_bit(p) - 1) & ~(mask_bit(j) | mask_bit(k));
      for (NodeMask s = others;; s = (s - 1) & others) {
        const int ssize = std::popcount(s);
        if (ssize <= max_cond) {
          if (data.n - ssize - 3 < 1) {
            ++nskipped;  // fail-safe: too few samples counts as dependent
          } else {
            try {
              const double r = partial_correlation(corr, j, k, s);
              if (std::fabs(fisher_z_statistic(r, data.n, ssize)) <= crit)
                out.set(j, k, s);
            } catch (const DataError&) {
              // exact collinearity: the statistic diverges, i.e. dependent
            }
          }
        }
        if (s == 0) break;
      }
    }
  if (skipped) *skipped = nskipped;
  return out;
}

}  // namespace dcg
