#include <doctest.h>

#include <cmath>
#include <set>

#include "ipc/errors.hpp"
#include "ipc/multipartite.hpp"
#include "ipc/states.hpp"
#include "oracles.hpp"

using namespace ipc;

TEST_CASE("bipartition enumeration") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto cuts = enumerate_bipartitions(n);
    CHECK(cuts.size() == (std::size_t(1) << (n - 1)) - 1);
    std::set<std::vector<int>> seen;
    for (const auto& b : cuts) {
      CHECK(b.kept.front() == 0);
      CHECK(b.kept.size() < n);
      seen.insert(b.kept);
    }
    CHECK(seen.size() == cuts.size());
  }
  CHECK_THROWS_AS(enumerate_bipartitions(13), DimensionError);
  CHECK_THROWS_AS(enumerate_bipartitions(1), DimensionError);
}

TEST_CASE("noisy GHZ: cut table and detection threshold") {
  for (int n = 3; n <= 5; ++n) {
    const double t = 1.0 / ((1 << (n - 1)) + 1);
    const State sigma = ghz(n, 2).density();
    for (double p : {t - 1e-3, t + 1e-3, 0.5}) {
      const auto v = multipartite_ipc(ghz_noisy(n, 2, p), sigma);
      CHECK(v.detected == (p > t));
      CHECK(v.global == doctest::Approx((1 - p) / std::pow(2.0, n) + p).epsilon(1e-12));
      for (const auto& c : v.cuts) {
        const double k = double(c.kept.size());
        CHECK(c.overlap_kept == doctest::Approx((1 - p) / std::pow(2.0, k) + p / 2).epsilon(1e-12));
        CHECK(c.overlap_complement ==
              doctest::Approx((1 - p) / std::pow(2.0, n - k) + p / 2).epsilon(1e-12));
      }
      CHECK(v.min_over_cuts == doctest::Approx(v.cuts[v.minimizing].min));
    }
  }
}

TEST_CASE("fully separable states are never detected") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const State sep = random_separable({2, 2, 2}, s);
    const State sigma = random_mixed({2, 2, 2}, 1 + int(s % 8), 9000 + s);
    CHECK_FALSE(multipartite_ipc(sep, sigma).detected);
    CHECK_FALSE(multipartite_ipc(sigma, sep).detected);
  }
  CHECK_THROWS_AS(multipartite_ipc(isotropic(2, 0.5), isotropic(2, 0.5)), DimensionError);
}

TEST_CASE("lambda map closed form against the explicit map") {
  for (const Dims& dims : {Dims{2, 2, 2}, Dims{2, 3, 2}, Dims{3, 2, 2}}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const State rho = random_mixed(dims, 3, s), sigma = random_mixed(dims, 4, 100 + s);
      for (double r : {1.0, 2.0, 3.0, 1.5}) {
        const Matrix lr = oracle::lambda_map(rho.matrix(), dims, r);
        const Matrix ls = oracle::lambda_map(sigma.matrix(), dims, r);
        const double v = lambda_map_value(rho, sigma, r);
        CHECK(v == doctest::Approx(oracle::hs(lr, sigma.matrix()).real()).epsilon(1e-12));
        CHECK(v == doctest::Approx(oracle::hs(rho.matrix(), ls).real()).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(lambda_map_value(isotropic(2, 0.5), isotropic(2, 0.5), 1), DimensionError);
  CHECK_THROWS(lambda_map_value(ghz_noisy(3, 2, 0.5), ghz(3, 2).density(), 0.0));
}

TEST_CASE("lambda map stays nonnegative on the product forms at r = 1") {
  std::mt19937_64 rng(3);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const State sigma = random_mixed({2, 2, 2}, 1 + int(s % 8), 700 + s);
    const Matrix sep_ac = random_separable({2, 2}, s).matrix();
    const Matrix b = random_mixed({2}, 2, 50 + s).matrix();
    const Matrix ab = random_mixed({2, 2}, 1, 60 + s).matrix();  // entangled allowed
    const Matrix c = random_mixed({2}, 2, 70 + s).matrix();
    const Matrix a = random_mixed({2}, 2, 80 + s).matrix();
    const Matrix bc = random_mixed({2, 2}, 1, 90 + s).matrix();
    const Matrix forms[] = {
        oracle::permute(oracle::kron(sep_ac, b), {2, 2, 2}, {0, 2, 1}),
        oracle::kron(ab, c),
        oracle::kron(a, bc),
    };
    for (const auto& m : forms) CHECK(lambda_map_value(State({2, 2, 2}, m), sigma, 1.0) >= -1e-9);
  }
}

TEST_CASE("lambda verdict on noisy 3-qudit GHZ") {
  const auto v = lambda_map_verdict(ghz_noisy(3, 4, 0.95), ghz(3, 4).density(), 1);
  CHECK(v.negative);
  CHECK(v.r_op >= 2);
  CHECK(v.genuine_or_ac_schmidt_exceeds_r);
  const auto none = lambda_map_verdict(random_separable({2, 2, 2}, 1), ghz(3, 2).density(), 1);
  CHECK_FALSE(none.negative);
  CHECK(none.r_op == 0);
  CHECK(none.conclusion == "no conclusion");
}
