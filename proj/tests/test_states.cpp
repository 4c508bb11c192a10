#include <doctest.h>

#include <cmath>

#include "ipc/criteria.hpp"
#include "ipc/errors.hpp"
#include "ipc/states.hpp"
#include "oracles.hpp"

using namespace ipc;

TEST_CASE("isotropic fidelity and PSD boundary") {
  for (int d = 2; d <= 5; ++d) {
    const Vector psi = max_entangled(d).vec();
    for (double x : {1.0 / (d * d), 0.3, 0.77, 1.0}) {
      const State rho = isotropic(d, x);
      CHECK(psi.dot(rho.matrix() * psi).real() == doctest::Approx(x).epsilon(1e-12));
    }
    CHECK(eigenvalues_min(isotropic(d, 1.0 / (d * d)).matrix()) > -1e-14);
    CHECK_THROWS_AS(isotropic(d, 1.0 / (d * d) - 1e-6), ValidationError);
    CHECK_THROWS_AS(isotropic(d, 1.0 + 1e-6), ValidationError);
  }
}

TEST_CASE("isotropic family is affine in x") {
  const int d = 3;
  const double a = 0.2, b = 0.9, t = 0.35;
  const Matrix mix = (1 - t) * isotropic(d, a).matrix() + t * isotropic(d, b).matrix();
  CHECK((mix - isotropic(d, (1 - t) * a + t * b).matrix()).norm() < 1e-14);
}

TEST_CASE("example2 family") {
  for (int d = 3; d <= 6; ++d)
    for (double x : {0.0, 0.25, 0.6, 1.0}) {
      const State rho = example2(d, x);
      const Vector psi = max_entangled(d).vec();
      CHECK(psi.dot(rho.matrix() * psi).real() ==
            doctest::Approx(x + (1 - x) / (d * (d - 1.0))).epsilon(1e-12));
      const Matrix ra = oracle::ptrace(rho.matrix(), {d, d}, {true, false});
      const double local = oracle::hs(ra, ra).real();
      const double expect = (1 - x) * (1 - x) / (d - 1) + x * x / d + 2 * (1 - x) * x / d;
      CHECK(local == doctest::Approx(expect).epsilon(1e-12));
    }
  CHECK_THROWS_AS(example2(2, 0.5), DimensionError);
}

TEST_CASE("theta state reaches the maximally entangled state") {
  const int d = 4;
  const Pure t = theta_state(d, 1.0 / std::sqrt(d));
  CHECK(std::abs(t.vec().dot(max_entangled(d).vec())) == doctest::Approx(1.0));
  CHECK_THROWS(theta_state(d, 1.0));
}

TEST_CASE("noisy GHZ cut overlaps") {
  for (int n = 3; n <= 5; ++n)
    for (double p : {0.0, 0.3, 1.0}) {
      const State rho = ghz_noisy(n, 2, p);
      const State sigma = ghz(n, 2).density();
      std::vector<int> dims(n, 2);
      for (int k = 1; k < n; ++k) {
        std::vector<bool> keep(n, false);
        for (int i = 0; i < k; ++i) keep[i] = true;
        const auto rs = oracle::ptrace(rho.matrix(), dims, keep);
        const auto ss = oracle::ptrace(sigma.matrix(), dims, keep);
        CHECK(oracle::hs(rs, ss).real() ==
              doctest::Approx((1 - p) / std::pow(2.0, k) + p / 2).epsilon(1e-12));
      }
    }
}

TEST_CASE("example3 state spectrum and probe") {
  const auto e = eig_hermitian(example3_state().matrix());
  CHECK(e.values(15) == doctest::Approx(0.5));
  CHECK(e.values(14) == doctest::Approx(0.5));
  CHECK(std::abs(e.values(13)) < 1e-12);
  CHECK(schmidt_decompose(example3_probe(0.0)).rank() == 3);
  CHECK(schmidt_decompose(example3_probe(1.0 / 6.0)).rank() == 2);
  CHECK_THROWS_AS(example3_probe(0.2), ValidationError);
}

TEST_CASE("verifier state of a rank-k vector gives overlap ratio k") {
  std::mt19937_64 rng(4);
  for (int k = 1; k <= 3; ++k) {
    const Pure v = random_schmidt_limited(3, 4, k, rng);
    const State sigma = verifier_state(v).density();
    CHECK(overlap_ratio(v.density(), sigma).s == doctest::Approx(double(k)).epsilon(1e-9));
  }
}

TEST_CASE("random generators are seeded and well formed") {
  const State a = random_mixed({2, 3}, 3, 99), b = random_mixed({2, 3}, 3, 99);
  CHECK(a.matrix() == b.matrix());
  CHECK(random_mixed({2, 3}, 3, 100).matrix() != a.matrix());
  const auto e = eig_hermitian(a.matrix());
  CHECK(std::abs(e.values(2)) < 1e-12);  // rank 3 of 6
  // Separable samples have a positive partial transpose.
  for (std::uint64_t s = 0; s < 20; ++s) {
    const State sep = random_separable({3, 3}, s);
    CHECK(eigenvalues_min(oracle::ptranspose(sep.matrix(), {3, 3}, 0)) > -1e-12);
  }
  std::mt19937_64 rng(1);
  for (int r = 1; r <= 3; ++r) CHECK(schmidt_decompose(random_schmidt_limited(4, 4, r, rng)).rank() <= std::size_t(r));
}

TEST_CASE("build_state from specs") {
  const State iso = build_state({"isotropic", {{"d", 3}, {"x", 0.5}}, 0});
  CHECK((iso.matrix() - isotropic(3, 0.5).matrix()).norm() < 1e-15);
  const State g = build_state({"ghz-noisy", {{"n", 3}, {"d", 2}, {"p", 0.4}}, 0});
  CHECK(g.dims() == Dims{2, 2, 2});
  const State rm = build_state({"random-mixed", {{"dims0", 2}, {"dims1", 2}, {"rank", 2}}, 5});
  CHECK((rm.matrix() - random_mixed({2, 2}, 2, 5).matrix()).norm() == 0.0);
  CHECK_THROWS_AS(build_state({"nope", {}, 0}), ValidationError);
  CHECK_THROWS(build_state({"isotropic", {{"d", 3}}, 0}));
}
