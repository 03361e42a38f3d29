#ifndef DCG_CITEST_HPP_
#define DCG_CITEST_HPP_

#include <Eigen/Dense>

#include "dcg/graph.hpp"
#include "dcg/sepset.hpp"

namespace dcg {

struct Dataset;

struct CiTestConfig {
  double alpha = 0.001;    // significance level of each test
  int max_cond_size = -1;  // cap on |S|; -1 means p-2 (no cap)
};

// rho(j,k | S) from a covariance or correlation matrix: the negated,
// normalized off-diagonal of the precision matrix of the {j,k}+S block.
double partial_correlation(const Eigen::MatrixXd& corr, int j, int k,
                           NodeMask cond);

// sqrt(n - |S| - 3) * atanh(r)
double fisher_z_statistic(double r, int n, int cond_size);

// Correlation matrix of the columns; throws DataError naming any
// zero-variance column.
Eigen::MatrixXd correlation_matrix(const Dataset& data);

// Fisher-z conditional-independence test over every statement (j,k,S):
// the statement enters the returned set iff |z| <= Phi^{-1}(1 - alpha/2).
// Statements whose degrees of freedom would be nonpositive (n - |S| - 3 < 1)
// are treated as dependent; their number is reported through `skipped`.
SepSet estimate_ci(const Dataset& data, const CiTestConfig& cfg = {},
                   int* skipped = nullptr);

}  // namespace dcg

#endif  // DCG_CITEST_HPP_
