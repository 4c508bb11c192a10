#include "ipc/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ipc/random.hpp"
#include "ipc/states.hpp"

namespace ipc {

Matrix givens_unitary(int d, const Eigen::VectorXd& params) {
  if (params.size() != givens_param_count(d))
    throw DimensionError("givens_unitary: expected " + std::to_string(givens_param_count(d)) +
                         " parameters");
  const int pairs = d * (d - 1) / 2;
  Matrix u = Matrix::Identity(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j, ++k) {
      const double c = std::cos(params(k)), s = std::sin(params(k));
      const std::complex<double> ph = std::polar(1.0, params(pairs + k));
      // u <- u * G where G acts on rows/cols (i, j)
      for (int r = 0; r < d; ++r) {
        const std::complex<double> ui = u(r, i), uj = u(r, j);
        u(r, i) = ui * c + uj * std::conj(ph) * s;
        u(r, j) = -ui * ph * s + uj * c;
      }
    }
  for (int r = 0; r < d; ++r) u.row(r) *= std::polar(1.0, params(2 * pairs + r));
  return u;
}

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double step) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    y(i) = x(i) + step;
    const double up = f(y);
    y(i) = x(i) - step;
    const double down = f(y);
    y(i) = x(i);
    g(i) = (up - down) / (2.0 * step);
  }
  return g;
}

OptResult maximize(const Objective& f, const Eigen::VectorXd& start, const OptConfig& cfg) {
  const Eigen::Index n = start.size();
  OptResult res;
  Eigen::VectorXd x = start;
  double fx = f(x);
  res.value = fx;
  if (n == 0) {
    res.converged = true;
    res.trajectory.push_back(fx);
    return res;
  }
  Eigen::VectorXd g = fd_gradient(f, x, cfg.fd_step);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);  // inverse Hessian of -f
  bool fresh = true;
  for (int it = 0; it < cfg.max_iters; ++it) {
    if (g.norm() < 1e-9) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd p = h * g;
    double slope = g.dot(p);
    if (!(slope > 0.0)) {
      h.setIdentity();
      p = g;
      slope = g.squaredNorm();
      fresh = true;
    }
    double alpha = 1.0, fnew = f(x + p);
    while (fnew < fx + 1e-4 * alpha * slope && alpha > 1e-12) {
      alpha *= 0.5;
      fnew = f(x + alpha * p);
    }
    if (!(fnew > fx)) {
      if (fresh) {
        res.converged = true;  // no ascent along the gradient either
        break;
      }
      h.setIdentity();
      fresh = true;
      continue;
    }
    const Eigen::VectorXd s = alpha * p;
    x += s;
    fx = fnew;
    const Eigen::VectorXd gnew = fd_gradient(f, x, cfg.fd_step);
    const Eigen::VectorXd y = g - gnew;
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left = Eigen::MatrixXd::Identity(n, n) - rho * s * y.transpose();
      h = left * h * left.transpose() + rho * s * s.transpose();
      fresh = false;
    }
    g = gnew;
    res.trajectory.push_back(fx);
    const auto len = static_cast<int>(res.trajectory.size());
    if (len > cfg.patience &&
        res.trajectory.back() - res.trajectory[len - 1 - cfg.patience] < cfg.tol) {
      res.converged = true;
      break;
    }
  }
  res.value = fx;
  res.params.theta = x;
  if (res.trajectory.empty()) res.trajectory.push_back(fx);
  return res;
}

namespace {

Eigen::VectorXd random_start(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = angle(rng);
  return x;
}

// Runs every start and keeps the overall best; the trajectory is best-so-far across runs.
OptResult multistart(const std::vector<Objective>& branches, Eigen::Index n, const OptConfig& cfg,
                     std::uint64_t stream) {
  OptResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < std::max(1, cfg.restarts); ++k) {
    const Eigen::VectorXd start =
        k == 0 ? Eigen::VectorXd::Zero(n) : random_start(n, split_seed(cfg.seed ^ stream, k));
    for (const auto& f : branches) {
      OptResult run = maximize(f, start, cfg);
      for (double v : run.trajectory) {
        const double prev = best.trajectory.empty() ? v : best.trajectory.back();
        best.trajectory.push_back(std::max(prev, v));
      }
      if (run.value > best.value) {
        best.value = run.value;
        best.params = run.params;
        best.converged = run.converged;
      }
    }
    best.restarts_used = k + 1;
  }
  return best;
}

}  // namespace

OptResult s_hat(const State& rho, const State& sigma, const OptConfig& cfg,
                const CriteriaConfig& ccfg) {
  if (rho.parties() != 2 || rho.dims() != sigma.dims())
    throw DimensionError("s_hat: needs two bipartite states with equal dims");
  const int da = rho.dims()[0], db = rho.dims()[1];
  const Eigen::Index na = cfg.optimize_a ? givens_param_count(da) : 0;
  const Eigen::Index nb = cfg.optimize_b ? givens_param_count(db) : 0;
  const Matrix sa = partial_trace(sigma.matrix(), sigma.dims(), Bipartition{{0}});
  const Matrix sb = partial_trace(sigma.matrix(), sigma.dims(), Bipartition{{1}});

  auto rotated = [&, na, nb](const Eigen::VectorXd& x) {
    const Matrix u = na ? givens_unitary(da, x.head(na)) : Matrix::Identity(da, da);
    const Matrix v = nb ? givens_unitary(db, x.segment(na, nb)) : Matrix::Identity(db, db);
    const Matrix w = Eigen::kroneckerProduct(u, v).eval();
    return Matrix(w * rho.matrix() * w.adjoint());
  };
  // sup max(S_A, S_B) = max(sup S_A, sup S_B); each branch is smooth.
  auto branch = [&](int keep, const Matrix& local) -> Objective {
    return [&, keep](const Eigen::VectorXd& x) {
      const Matrix r = rotated(x);
      const double den = hs_inner(partial_trace(r, rho.dims(), Bipartition{{keep}}), local);
      return den != 0.0 ? hs_inner(r, sigma.matrix()) / den : 0.0;
    };
  };
  OptResult res = multistart({branch(0, sa), branch(1, sb)}, na + nb, cfg, 0x5A17ULL);
  const Eigen::VectorXd x = res.params.theta;
  res.params.theta = na ? Eigen::VectorXd(x.head(na)) : Eigen::VectorXd::Zero(givens_param_count(da));
  res.params.xi = nb ? Eigen::VectorXd(x.segment(na, nb)) : Eigen::VectorXd::Zero(givens_param_count(db));
  res.value = std::max(res.value, overlap_ratio(rho, sigma).s);
  res.sn_bound = sn_bound_from_ratio(res.value, ccfg.epsilon);
  return res;
}

OptResult fully_entangled_fraction(const State& rho, const OptConfig& cfg) {
  if (rho.parties() != 2 || rho.dims()[0] != rho.dims()[1])
    throw DimensionError("fully_entangled_fraction: needs equal local dimensions");
  const int d = rho.dims()[0];
  const Vector psi = max_entangled(d).vec();
  const Matrix id = Matrix::Identity(d, d);
  Objective f = [&](const Eigen::VectorXd& x) {
    const Vector v = Eigen::kroneckerProduct(id, givens_unitary(d, x)).eval() * psi;
    return (v.adjoint() * rho.matrix() * v)(0, 0).real();
  };
  OptResult res = multistart({f}, givens_param_count(d), cfg, 0xFEF0ULL);
  res.params.xi = res.params.theta;
  res.params.theta = Eigen::VectorXd::Zero(givens_param_count(d));
  return res;
}

FefIdentityReport verify_shat_fef_identity(const State& rho, const OptConfig& cfg) {
  if (rho.parties() != 2 || rho.dims()[0] != rho.dims()[1])
    throw DimensionError("verify_shat_fef_identity: needs equal local dimensions");
  const int d = rho.dims()[0];
  OptConfig b_only = cfg;
  b_only.optimize_a = false;
  b_only.optimize_b = true;
  OptConfig fef_cfg = cfg;
  fef_cfg.seed = split_seed(cfg.seed, 0xF);
  FefIdentityReport rep;
  rep.s_hat = s_hat(rho, max_entangled(d).density(), b_only).value;
  rep.fef = fully_entangled_fraction(rho, fef_cfg).value;
  rep.d_times_fef = d * rep.fef;
  rep.relative_deviation = std::abs(rep.s_hat - rep.d_times_fef) / rep.d_times_fef;
  return rep;
}

}  // namespace ipc
