#include <doctest.h>

#include <cmath>
#include <random>

#include "ipc/criteria.hpp"
#include "ipc/errors.hpp"
#include "ipc/random.hpp"
#include "ipc/states.hpp"
#include "oracles.hpp"

using namespace ipc;

TEST_CASE("sn bound from ratio") {
  CHECK(sn_bound_from_ratio(0.3) == 1);
  CHECK(sn_bound_from_ratio(1.0) == 1);
  CHECK(sn_bound_from_ratio(1.0 + 1e-12) == 1);
  CHECK(sn_bound_from_ratio(1.01) == 2);
  CHECK(sn_bound_from_ratio(2.4) == 3);
  CHECK(sn_bound_from_ratio(3.0) == 3);
}

TEST_CASE("isotropic pair against the maximally entangled state gives d x") {
  for (int d = 2; d <= 6; ++d)
    for (double x : {1.0 / (d * d), 0.4, 0.9, 1.0}) {
      const auto o = overlap_ratio(isotropic(d, x), isotropic(d, 1.0));
      CHECK(o.s == doctest::Approx(d * x).epsilon(1e-12));
      CHECK(o.s_a == doctest::Approx(o.s_b).epsilon(1e-12));
    }
  const auto v = ipc_bound(isotropic(4, 0.9), isotropic(4, 1.0));
  CHECK(v.detected);
  CHECK(v.sn_bound == 4);
}

TEST_CASE("overlap ratio against an explicit oracle") {
  const State rho = random_mixed({2, 3}, 6, 1), sigma = random_mixed({2, 3}, 2, 2);
  const Dims dims{2, 3};
  const double g = oracle::hs(rho.matrix(), sigma.matrix()).real();
  const double la = oracle::hs(oracle::ptrace(rho.matrix(), dims, {true, false}),
                               oracle::ptrace(sigma.matrix(), dims, {true, false})).real();
  const double lb = oracle::hs(oracle::ptrace(rho.matrix(), dims, {false, true}),
                               oracle::ptrace(sigma.matrix(), dims, {false, true})).real();
  const auto o = overlap_ratio(rho, sigma);
  CHECK(o.s == doctest::Approx(std::max(g / la, g / lb)).epsilon(1e-12));
  CHECK_THROWS_AS(overlap_ratio(rho, random_mixed({3, 2}, 2, 2)), DimensionError);
}

TEST_CASE("soundness: separable and rank-limited states stay below their bound") {
  std::mt19937_64 rng(77);
  for (std::uint64_t s = 0; s < 300; ++s) {
    const Dims dims{2 + int(s % 3), 2 + int((s / 3) % 3)};
    const State sep = random_separable(dims, s);
    const State sigma = random_mixed(dims, 1 + int(s % 4), 1000 + s);
    CHECK(overlap_ratio(sep, sigma).s <= 1.0 + 1e-9);
    CHECK(overlap_ratio(sigma, sep).s <= 1.0 + 1e-9);
  }
  for (std::uint64_t s = 0; s < 100; ++s) {
    const State r2 = random_schmidt_mixture(3, 4, 2, 3, s);
    CHECK(overlap_ratio(r2, random_mixed({3, 4}, 2, 5000 + s)).s <= 2.0 + 1e-9);
  }
}

TEST_CASE("reduction criterion on isotropic states: detected iff x > r/d") {
  for (int d = 3; d <= 4; ++d)
    for (int r = 1; r < d; ++r)
      for (double x : {double(r) / d - 0.05, double(r) / d + 0.05}) {
        const State rho = isotropic(d, x);
        const auto v = reduction_check(rho, r);
        CHECK(v.detected == (x > double(r) / d));
        const auto w = extract_ipc_witness(rho, r);
        CHECK(w.has_value() == v.detected);
        if (w) CHECK(overlap_ratio(rho, *w).s > r + 1e-9);
      }
}

TEST_CASE("reduction operator entries") {
  const State rho = random_mixed({2, 3}, 4, 3);
  const Matrix rb = oracle::ptrace(rho.matrix(), {2, 3}, {false, true});
  const Matrix expect = 2.0 * oracle::kron(Matrix::Identity(2, 2), rb) - rho.matrix();
  CHECK((reduction_operator(rho, 2, ReductionSide::b) - expect).norm() < 1e-13);
  CHECK_THROWS_AS(reduction_check(rho, 0), ValidationError);
}

TEST_CASE("purity criterion is the sigma = rho specialization") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const State rho = random_mixed({3, 3}, 1 + int(s % 3), s);
    const auto pc = purity_check(rho);
    const auto ipc = overlap_ratio(rho, rho);
    CHECK(pc.detected == (ipc.s > 1.0 + 1e-9));
  }
  // Pure state with k equal Schmidt coefficients: Rényi-gap bound k.
  for (int k = 1; k <= 3; ++k) {
    Vector v = Vector::Zero(9);
    for (int i = 0; i < k; ++i) v(i * 3 + i) = 1.0 / std::sqrt(k);
    CHECK(purity_check(Pure({3, 3}, v).density()).sn_bound == k);
  }
}

TEST_CASE("fidelity witness value") {
  const int d = 4;
  const Pure psi = max_entangled(d);
  for (int r = 1; r < d; ++r) {
    const auto v = fbc_witness_value(isotropic(d, 0.8), psi, r);
    CHECK(v.values.at("value") == doctest::Approx(double(r) / d - 0.8));
    CHECK(v.detected == (0.8 > double(r) / d));
  }
  Vector prod = Vector::Zero(16);
  prod(0) = 1.0;
  CHECK_THROWS_AS(fbc_witness_value(isotropic(d, 0.8), Pure({4, 4}, prod), 2), InvalidWitness);
}

TEST_CASE("spectral bound makes every rank-r fidelity witness fail") {
  std::mt19937_64 rng(5);
  int bounded = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    const State rho = random_mixed({3, 3}, 4 + int(s % 6), s);
    for (int r = 1; r <= 2; ++r) {
      if (!fbc_spectrum_bound(rho, r)) continue;
      ++bounded;
      for (int t = 0; t < 10; ++t) {
        const Pure phi = random_pure({3, 3}, rng);
        CHECK_FALSE(fbc_witness_value(rho, phi, r).detected);
      }
    }
  }
  CHECK(bounded > 20);
}

TEST_CASE("partial-transpose moments against powers of the loop transpose") {
  const State rho = random_mixed({2, 3}, 3, 12);
  const Matrix pt = oracle::ptranspose(rho.matrix(), {2, 3}, 0);
  const auto p = pt_moments(rho, 4);
  Matrix pk = pt;
  for (int k = 1; k <= 4; ++k) {
    CHECK(p[k - 1] == doctest::Approx(pk.trace().real()).epsilon(1e-12));
    pk = pk * pt;
  }
  CHECK(p[0] == doctest::Approx(1.0));
}

TEST_CASE("p3-PPT") {
  CHECK(p3_ppt_check(max_entangled(3).density()).detected);
  for (std::uint64_t s = 0; s < 30; ++s) CHECK_FALSE(p3_ppt_check(random_separable({2, 3}, s)).detected);
}

TEST_CASE("d x d family closed forms") {
  for (int d = 3; d <= 6; ++d)
    for (double x : {0.05, 0.35, 0.65, 0.95}) {
      const State rho = example2(d, x);
      const auto cf = example2_closed_forms(d, x);
      CHECK(eigenvalues_max(rho.matrix()) == doctest::Approx(cf.delta).epsilon(1e-12));
      const Matrix pt = oracle::ptranspose(rho.matrix(), {d, d}, 0);
      const double p2 = (pt * pt).trace().real(), p3 = (pt * pt * pt).trace().real();
      CHECK(p2 * p2 - p3 == doctest::Approx(cf.p2sq_minus_p3).epsilon(1e-10));
      CHECK((p2 * p2 - p3 > 0) == (example2_p3_cubic(d, x) > 0));
      const Matrix ra = oracle::ptrace(rho.matrix(), {d, d}, {true, false});
      CHECK(example2_purity_gap(d, x) ==
            doctest::Approx(rho.purity() - oracle::hs(ra, ra).real()).epsilon(1e-12));
      CHECK(cf.fbc_psi_threshold == doctest::Approx(double(d - 2) / (d * d - d - 1)));
      const double fid = max_entangled(d).vec().dot(rho.matrix() * max_entangled(d).vec()).real();
      CHECK(example2_psi_witness_gap(d, x, 1) == doctest::Approx(fid - 1.0 / d).epsilon(1e-12));
    }
}

TEST_CASE("FBC detections are IPC detections, PC detections likewise") {
  std::mt19937_64 rng(9);
  int fbc = 0, pc = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const State rho = random_mixed({3, 3}, 1 + int(s % 3), 300 + s);
    // Random witness near the top eigenvector, so that detections actually occur.
    const auto e = eig_hermitian(rho.matrix());
    const double eta = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const Pure phi = Pure::normalized(
        {3, 3}, Vector(e.vectors.col(8) + eta * random_pure({3, 3}, rng).vec()));
    if (fbc_witness_value(rho, phi, 1).detected) {
      ++fbc;
      CHECK(ipc_bound(rho, phi.density()).detected);
    }
    if (purity_check(rho).detected) {
      ++pc;
      CHECK(ipc_bound(rho, rho).detected);
    }
  }
  CHECK(fbc > 0);
  CHECK(pc > 0);
}
