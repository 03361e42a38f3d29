#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dcg/citest.hpp"
#include "dcg/errors.hpp"
#include "dcg/rng.hpp"
#include "dcg/scm.hpp"

using namespace dcg;

TEST_CASE("normal quantile") {
  CHECK(std::abs(normal_quantile(0.5)) < 1e-15);
  CHECK(std::abs(normal_quantile(0.975) - 1.959963984540054) < 1e-9);
  CHECK(std::abs(normal_quantile(0.9995) - 3.290526731491926) < 1e-8);
  CHECK(std::abs(normal_quantile(0.0001) + normal_quantile(0.9999)) < 1e-12);
  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
}

TEST_CASE("partial correlation closed forms") {
  Eigen::MatrixXd sigma(2, 2);
  sigma << 1.0, 0.5, 0.5, 1.25;
  CHECK(std::abs(partial_correlation(sigma, 0, 1, 0) - 0.5 / std::sqrt(1.25)) <
        1e-12);

  CHECK(partial_correlation(Eigen::MatrixXd::Identity(3, 3), 0, 2, 0) == 0.0);

  LinearScm chain;
  chain.p = 3;
  chain.weights = Eigen::MatrixXd::Zero(3, 3);
  chain.weights(0, 1) = 0.5;
  chain.weights(1, 2) = 0.5;
  const Eigen::MatrixXd cov = covariance(chain.weights);
  CHECK(std::abs(partial_correlation(cov, 0, 2, mask_bit(1))) < 1e-12);
  CHECK_THROWS_AS(partial_correlation(cov, 0, 2, mask_bit(0)),
                  std::invalid_argument);
}

TEST_CASE("fisher statistic at the worked point") {
  const double z = fisher_z_statistic(0.5, 100, 1);
  CHECK(z > 5.3);
  CHECK(z < 5.5);
  CHECK(z > normal_quantile(1.0 - 0.001 / 2.0));  // declared dependent
  CHECK(fisher_z_statistic(0.0, 50, 0) == 0.0);
}

TEST_CASE("estimate_ci includes exact zeros and excludes strong signals") {
  // two perfectly correlated columns and one independent one
  Dataset d;
  d.n = 100;
  d.p = 3;
  d.values.resize(d.n, d.p);
  Rng rng(5);
  for (int i = 0; i < d.n; ++i) {
    const double x = normal_draw(rng);
    d.values(i, 0) = x;
    d.values(i, 1) = x;  // r(0,1) = 1
    d.values(i, 2) = normal_draw(rng);
  }
  SepSet ci = estimate_ci(d);
  CHECK(!ci.test(0, 1, 0));
  CHECK(!ci.test(0, 1, mask_bit(2)));
}

TEST_CASE("an exactly zero sample correlation is always included") {
  // orthogonalize the second column against the first: r(0,1) = 0 exactly
  Dataset d;
  d.n = 60;
  d.p = 2;
  d.values.resize(d.n, d.p);
  Rng rng(9);
  for (int i = 0; i < d.n; ++i) {
    d.values(i, 0) = normal_draw(rng);
    d.values(i, 1) = normal_draw(rng);
  }
  for (int c = 0; c < 2; ++c)
    d.values.col(c).array() -= d.values.col(c).mean();
  const double proj = d.values.col(0).dot(d.values.col(1)) /
                      d.values.col(0).squaredNorm();
  d.values.col(1) -= proj * d.values.col(0);
  SepSet ci = estimate_ci(d);
  CHECK(ci.test(0, 1, 0));
}

TEST_CASE("degenerate column is reported by name") {
  Dataset d;
  d.n = 10;
  d.p = 2;
  d.values = Eigen::MatrixXd::Zero(10, 2);
  Rng rng(7);
  for (int i = 0; i < 10; ++i) d.values(i, 0) = normal_draw(rng);
  CHECK_THROWS_WITH_AS(estimate_ci(d), doctest::Contains("X2"), DataError);
}

TEST_CASE("scale invariance") {
  LinearScm scm;
  scm.p = 3;
  scm.weights = Eigen::MatrixXd::Zero(3, 3);
  scm.weights(0, 1) = 0.6;
  scm.weights(2, 1) = -0.4;
  Dataset d = sample(scm, 400, 11);
  const SepSet base = estimate_ci(d);
  Dataset scaled = d;
  scaled.values.col(1) *= 1000.0;
  scaled.values.col(2) *= 1e-3;
  CHECK(estimate_ci(scaled) == base);
}

TEST_CASE("independent columns pass all tests with high probability") {
  // alpha=0.001 and 6 statements: all-inclusion probability ~ 0.994
  LinearScm null;
  null.p = 3;
  null.weights = Eigen::MatrixXd::Zero(3, 3);
  int all_in = 0;
  const int seeds = 500;
  for (int s = 0; s < seeds; ++s) {
    Dataset d = sample(null, 10000, derive_seed(1000, s));
    all_in += estimate_ci(d).count() == 6;
  }
  CHECK(all_in >= int(seeds * 0.99));
}

TEST_CASE("estimated CI converges to the population oracle") {
  Rng rng(19);
  double agree = 0, total = 0;
  for (int t = 0; t < 20; ++t) {
    LinearScm scm = random_dcg_scm(5, 1.0, rng);
    SepSet pop = population_ci(covariance(scm.weights));
    SepSet est = estimate_ci(sample(scm, 100000, derive_seed(77, t)));
    for (std::uint64_t i = 0; i < pop.size(); ++i) {
      agree += pop.test(i) == est.test(i);
      ++total;
    }
  }
  CHECK(agree / total >= 0.95);
}

TEST_CASE("small samples are treated as dependent and counted") {
  Dataset d;
  d.n = 5;  // |S|=3 needs n >= 7
  d.p = 5;
  d.values.resize(d.n, d.p);
  Rng rng(23);
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.p; ++j) d.values(i, j) = normal_draw(rng);
  int skipped = 0;
  estimate_ci(d, {}, &skipped);
  CHECK(skipped > 0);
}

TEST_CASE("max conditioning size is honored") {
  LinearScm scm;
  scm.p = 4;
  scm.weights = Eigen::MatrixXd::Zero(4, 4);
  Dataset d = sample(scm, 1000, 3);
  CiTestConfig cfg;
  cfg.max_cond_size = 0;
  SepSet ci = estimate_ci(d, cfg);
  for (const auto& st : ci.statements()) CHECK(st.cond == 0);
}
