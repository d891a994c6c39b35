#include <doctest.h>

#include <cmath>

#include "addbo/errors.hpp"
#include "addbo/gp.hpp"
#include "addbo/kernel.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace addbo;

TEST_SUITE("kernel") {

TEST_CASE("default hyperparameters") {
  KernelSpec spec;
  CHECK(spec.bandwidth == 0.1);
  CHECK(spec.scale == 5.0);
  CHECK(spec.noise_sigma == 0.1);
  CHECK_NOTHROW(spec.validate());
  KernelSpec bad = spec;
  bad.bandwidth = 0.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = spec;
  bad.noise_sigma = -1.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("group kernel values") {
  const KernelSpec spec;
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd x = testing::normal_vector(3, rng);
    CHECK(group_kernel(x, x, spec) == spec.scale);
  }
  Eigen::VectorXd a(2), b(2);
  a << 0.0, 0.0;
  b << 0.1, 0.0;
  CHECK(group_kernel(a, b, spec) == doctest::Approx(5.0 * std::exp(-0.5)).epsilon(1e-14));
  CHECK(group_kernel(a, b, spec) == doctest::Approx(3.03265).epsilon(1e-6));
  CHECK(group_kernel(a, b, spec) == group_kernel(b, a, spec));
  CHECK_THROWS_AS(group_kernel(a, Eigen::VectorXd::Zero(3), spec), InputError);
}

TEST_CASE("distance cache entries") {
  Rng rng(5);
  const Eigen::MatrixXd pts = testing::uniform_points(7, 4, rng);
  const DistanceCache cache(pts, 0.1);
  REQUIRE(cache.dims() == 4);
  REQUIRE(cache.size() == 7);
  for (int j = 0; j < 4; ++j) {
    const auto& m = cache.dimension(j);
    for (int i = 0; i < 7; ++i) {
      CHECK(m(i, i) == 0.0);
      for (int t = 0; t < 7; ++t) {
        CHECK(m(i, t) == m(t, i));
        CHECK(m(i, t) >= 0.0);
        const double d = pts(i, j) - pts(t, j);
        CHECK(m(i, t) == doctest::Approx(d * d / 0.02).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("gram matrix of a single point sums the group scales") {
  Eigen::MatrixXd pts(1, 3);
  pts << 0.2, 0.5, 0.9;
  const KernelSpec spec;
  const Decomposition z({0, 0, 2});
  const Eigen::MatrixXd k = gram_matrix(DistanceCache(pts, spec.bandwidth), z, spec);
  REQUIRE(k.rows() == 1);
  CHECK(k(0, 0) == 10.0);
}

TEST_CASE("gram matrix of empty data is empty") {
  const Eigen::MatrixXd pts(0, 3);
  const KernelSpec spec;
  const Eigen::MatrixXd k = gram_matrix(DistanceCache(pts, spec.bandwidth), Decomposition({0, 1, 1}), spec);
  CHECK(k.rows() == 0);
  CHECK(k.cols() == 0);
}

TEST_CASE("gram matrix matches a double-loop oracle") {
  KernelSpec spec;
  spec.bandwidth = 0.3;
  Rng rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = rep == 0 ? 2 : 2 + static_cast<int>(rng() % 10);
    const int d = rep == 0 ? 3 : 1 + static_cast<int>(rng() % 6);
    const Eigen::MatrixXd pts = testing::uniform_points(n, d, rng);
    const Decomposition z = testing::random_decomposition(d, rng);
    const DistanceCache cache(pts, spec.bandwidth);
    const Eigen::MatrixXd k = gram_matrix(cache, z, spec);
    const Eigen::MatrixXd ref = oracle::gram(pts, oracle::groups_of(testing::labels(z)), spec.bandwidth, spec.scale);
    CHECK((k - ref).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(k == k.transpose());
    for (int i = 0; i < n; ++i) CHECK(k(i, i) == doctest::Approx(z.num_nonempty() * spec.scale).epsilon(1e-15));

    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < z.num_slots(); ++m) sum += group_gram(cache, z.group(m), spec);
    CHECK((k - sum).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("gram matrix is invariant under relabeling groups") {
  const KernelSpec spec;
  Rng rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 5;
    const Eigen::MatrixXd pts = testing::uniform_points(9, d, rng);
    const Decomposition z = testing::random_decomposition(d, rng);
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> relabeled(d);
    for (int j = 0; j < d; ++j) relabeled[j] = perm[z.label(j)];
    const DistanceCache cache(pts, spec.bandwidth);
    const Eigen::MatrixXd a = gram_matrix(cache, z, spec);
    const Eigen::MatrixXd b = gram_matrix(cache, Decomposition(relabeled), spec);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("moving a dimension and back restores identical matrices") {
  const KernelSpec spec;
  Rng rng(19);
  const Eigen::MatrixXd pts = testing::uniform_points(12, 6, rng);
  const DistanceCache cache(pts, spec.bandwidth);
  GroupGramSet set(cache, Decomposition({0, 0, 1, 2, 2, 2}), spec);
  std::vector<Eigen::MatrixXd> before;
  for (int m = 0; m < 6; ++m) before.push_back(set.group(m));
  set.move_dimension(3, 2, 0);
  set.move_dimension(3, 0, 2);
  for (int m = 0; m < 6; ++m) CHECK(set.group(m) == before[m]);
}

TEST_CASE("incremental moves agree with full rebuilds") {
  const KernelSpec spec;
  Rng rng(23);
  const int d = 6;
  const Eigen::MatrixXd pts = testing::uniform_points(10, d, rng);
  const DistanceCache cache(pts, spec.bandwidth);
  Decomposition z = testing::random_decomposition(d, rng);
  GroupGramSet set(cache, z, spec);
  double worst = 0.0;
  for (int move = 0; move < 1000; ++move) {
    const int j = static_cast<int>(rng() % d);
    const int from = z.label(j);
    const int to = static_cast<int>(rng() % d);
    set.move_dimension(j, from, to);
    z.assign(j, to);
    REQUIRE(set.decomposition() == z);
    for (int m : {from, to})
      worst = std::max(worst, (set.group(m) - group_gram(cache, z.group(m), spec)).cwiseAbs().maxCoeff());
    if (move % 50 == 0) worst = std::max(worst, (set.total() - gram_matrix(cache, z, spec)).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("moves only touch the two affected groups") {
  const KernelSpec spec;
  Rng rng(29);
  const Eigen::MatrixXd pts = testing::uniform_points(8, 5, rng);
  const DistanceCache cache(pts, spec.bandwidth);
  GroupGramSet set(cache, Decomposition({0, 1, 1, 2, 3}), spec);
  const Eigen::MatrixXd g0 = set.group(0), g3 = set.group(3);
  set.move_dimension(2, 1, 2);
  CHECK(set.group(0) == g0);
  CHECK(set.group(3) == g3);
}

TEST_CASE("moving the last dimension empties the source group") {
  const KernelSpec spec;
  Rng rng(31);
  const Eigen::MatrixXd pts = testing::uniform_points(6, 3, rng);
  const DistanceCache cache(pts, spec.bandwidth);
  GroupGramSet set(cache, Decomposition({0, 1, 1}), spec);
  set.move_dimension(0, 0, 1);
  CHECK(set.group(0).isZero(0.0));
  CHECK((set.total() - group_gram(cache, std::vector<int>{0, 1, 2}, spec)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("a move within one group is a no-op") {
  const KernelSpec spec;
  Rng rng(37);
  const Eigen::MatrixXd pts = testing::uniform_points(6, 3, rng);
  const DistanceCache cache(pts, spec.bandwidth);
  GroupGramSet set(cache, Decomposition({0, 1, 1}), spec);
  const Eigen::MatrixXd g1 = set.group(1);
  set.move_dimension(1, 1, 1);
  CHECK(set.group(1) == g1);
  CHECK(set.decomposition() == Decomposition({0, 1, 1}));
  CHECK_THROWS_AS(set.move_dimension(0, 1, 2), InputError);
}

TEST_CASE("gram plus small noise always factorizes") {
  KernelSpec spec;
  spec.noise_sigma = 1e-6;
  Rng rng(41);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 50);
    const int d = 1 + static_cast<int>(rng() % 20);
    const Eigen::MatrixXd pts = testing::uniform_points(n, d, rng);
    const Decomposition z = testing::random_decomposition(d, rng);
    const Eigen::MatrixXd k = gram_matrix(DistanceCache(pts, spec.bandwidth), z, spec);
    const Eigen::MatrixXd a = k + spec.noise_variance() * Eigen::MatrixXd::Identity(n, n);
    JitteredCholesky chol(a);
    const Eigen::MatrixXd l = chol.matrix_l();
    CHECK((l * l.transpose() - a).norm() <= 1e-8 * a.norm() + chol.jitter() * std::sqrt(n));
  }
}

}  // TEST_SUITE
