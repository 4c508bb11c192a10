#include "ipc/states.hpp"

#include <cmath>

#include "ipc/random.hpp"

namespace ipc {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

// Hermitian part with trace renormalized; removes roundoff from sums of projectors.
Matrix tidy(Matrix m) {
  m = (m + m.adjoint().eval()) / 2.0;
  return m / m.trace().real();
}

double param(const StateSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end())
    throw ValidationError("state spec '" + spec.family + "' is missing parameter '" + key + "'");
  return it->second;
}

int int_param(const StateSpec& spec, const std::string& key) {
  return static_cast<int>(std::lround(param(spec, key)));
}

Dims dims_param(const StateSpec& spec) {
  Dims dims;
  for (int i = 0;; ++i) {
    auto it = spec.params.find("dims" + std::to_string(i));
    if (it == spec.params.end()) break;
    dims.push_back(static_cast<int>(std::lround(it->second)));
  }
  if (dims.empty()) {
    const int d = int_param(spec, "d");
    dims = {d, d};
  }
  return dims;
}

}  // namespace

Pure max_entangled(int d) {
  if (d < 2) throw DimensionError("max_entangled: d must be at least 2");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return Pure::normalized({d, d}, v);
}

State isotropic(int d, double x) {
  if (d < 2) throw DimensionError("isotropic: d must be at least 2");
  require(x >= 0.0 && x <= 1.0, "isotropic: x must lie in [0, 1]");
  const double d2 = static_cast<double>(d) * d;
  if (x < 1.0 / d2 - 1e-15)
    throw ValidationError("isotropic: x below 1/d^2 gives a non-positive operator");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  const Matrix psi = max_entangled(d).projector();
  Matrix m = (1.0 - x) / (d2 - 1.0) * Matrix::Identity(n, n) + (d2 * x - 1.0) / (d2 - 1.0) * psi;
  return State({d, d}, tidy(std::move(m)));
}

State example2(int d, double x) {
  if (d < 3) throw DimensionError("example2: d must be at least 3");
  require(x >= 0.0 && x <= 1.0, "example2: x must lie in [0, 1]");
  const double block = static_cast<double>(d - 1) * (d - 1);
  Matrix m = x * max_entangled(d).projector();
  for (int i = 0; i < d - 1; ++i)
    for (int j = 0; j < d - 1; ++j) m(i * d + j, i * d + j) += (1.0 - x) / block;
  return State({d, d}, tidy(std::move(m)));
}

Pure theta_state(int d, double y) {
  if (d < 2) throw DimensionError("theta_state: d must be at least 2");
  const double ymax = 1.0 / std::sqrt(static_cast<double>(d - 1));
  require(y >= 0.0 && y <= ymax + 1e-15, "theta_state: y must lie in [0, 1/sqrt(d-1)]");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d - 1; ++i) v(i * d + i) = y;
  v((d - 1) * d + (d - 1)) = std::sqrt(std::max(0.0, 1.0 - (d - 1) * y * y));
  return Pure::normalized({d, d}, v);
}

Pure ghz(int n, int d) {
  if (n < 2) throw DimensionError("ghz: need at least two parties");
  Dims dims(static_cast<std::size_t>(n), d);
  Vector v = Vector::Zero(total_dim(dims));
  for (int j = 0; j < d; ++j) {
    Eigen::Index idx = 0;
    for (int k = 0; k < n; ++k) idx = idx * d + j;
    v(idx) = 1.0;
  }
  return Pure::normalized(std::move(dims), v);
}

State ghz_noisy(int n, int d, double p) {
  require(p >= 0.0 && p <= 1.0, "ghz_noisy: p must lie in [0, 1]");
  const Pure g = ghz(n, d);
  const Eigen::Index side = total_dim(g.dims());
  Matrix m = p * g.projector() + (1.0 - p) / static_cast<double>(side) * Matrix::Identity(side, side);
  return State(g.dims(), tidy(std::move(m)));
}

State example3_state() {
  Vector psi3 = Vector::Zero(16), phi = Vector::Zero(16);
  for (int i = 0; i < 3; ++i) psi3(i * 4 + i) = 1.0;
  phi(2 * 4 + 3) = 1.0;
  phi(3 * 4 + 2) = 1.0;
  psi3.normalize();
  phi.normalize();
  Matrix m = 0.5 * psi3 * psi3.adjoint() + 0.5 * phi * phi.adjoint();
  return State({4, 4}, tidy(std::move(m)));
}

Pure example3_probe(double t) {
  require(t >= -1.0 / 3.0 - 1e-15 && t <= 1.0 / 6.0 + 1e-15,
          "example3_probe: parameter must lie in [-1/3, 1/6]");
  Vector v = Vector::Zero(16);
  v(0) = v(5) = std::sqrt(std::max(0.0, 1.0 / 3.0 + t));
  v(10) = std::sqrt(std::max(0.0, 1.0 / 3.0 - 2.0 * t));
  return Pure::normalized({4, 4}, v);
}

Pure verifier_state(const Pure& v) {
  const Schmidt sd = schmidt_decompose(v);
  const Eigen::Index na = sd.left.rows(), nb = sd.right.rows();
  Vector out = Vector::Zero(na * nb);
  for (std::size_t k = 0; k < sd.rank(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    out += (1.0 / std::sqrt(sd.coeffs[k])) *
           Eigen::kroneckerProduct(sd.left.col(kk), sd.right.col(kk)).eval();
  }
  return Pure::normalized(v.dims(), out);
}

State random_mixed(const Dims& dims, int rank, std::uint64_t seed) {
  check_dims(dims);
  const Eigen::Index n = total_dim(dims);
  if (rank < 1 || rank > n) throw ValidationError("random_mixed: rank must lie in [1, dim]");
  std::mt19937_64 rng(seed);
  const Matrix g = complex_gaussian(n, rank, rng);
  return State(dims, tidy(g * g.adjoint()));
}

Pure random_pure(const Dims& dims, std::mt19937_64& rng) {
  check_dims(dims);
  return Pure::normalized(dims, complex_gaussian(total_dim(dims), 1, rng).col(0));
}

Pure random_pure(const Dims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pure(dims, rng);
}

State random_separable(const Dims& dims, std::uint64_t seed) {
  check_dims(dims);
  std::mt19937_64 rng(seed);
  const Eigen::Index n = total_dim(dims);
  const auto terms = static_cast<std::size_t>(2 * n);
  const auto w = dirichlet_weights(terms, rng);
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t t = 0; t < terms; ++t) {
    Vector v = Vector::Ones(1);
    for (int d : dims) v = Eigen::kroneckerProduct(v, random_pure(Dims{d}, rng).vec()).eval();
    m += w[t] * v * v.adjoint();
  }
  return State(dims, tidy(std::move(m)));
}

Pure random_schmidt_limited(int da, int db, int rank, std::mt19937_64& rng) {
  const Pure v = random_pure(Dims{da, db}, rng);
  Schmidt sd = schmidt_decompose(v);
  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(rank), sd.rank());
  sd.coeffs.resize(keep);
  sd.left = sd.left.leftCols(static_cast<Eigen::Index>(keep)).eval();
  sd.right = sd.right.leftCols(static_cast<Eigen::Index>(keep)).eval();
  return Pure::normalized({da, db}, schmidt_reconstruct(sd));
}

State random_schmidt_mixture(int da, int db, int rank, int terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto w = dirichlet_weights(static_cast<std::size_t>(terms), rng);
  const Eigen::Index n = static_cast<Eigen::Index>(da) * db;
  Matrix m = Matrix::Zero(n, n);
  for (int t = 0; t < terms; ++t) m += w[t] * random_schmidt_limited(da, db, rank, rng).projector();
  return State({da, db}, tidy(std::move(m)));
}

State build_state(const StateSpec& spec) {
  const auto& f = spec.family;
  if (f == "isotropic") return isotropic(int_param(spec, "d"), param(spec, "x"));
  if (f == "example2") return example2(int_param(spec, "d"), param(spec, "x"));
  if (f == "theta") return theta_state(int_param(spec, "d"), param(spec, "y")).density();
  if (f == "ghz-noisy")
    return ghz_noisy(int_param(spec, "n"), int_param(spec, "d"), param(spec, "p"));
  if (f == "ghz-pure") return ghz(int_param(spec, "n"), int_param(spec, "d")).density();
  if (f == "max-entangled") return max_entangled(int_param(spec, "d")).density();
  if (f == "example3") return example3_state();
  if (f == "verifier") return verifier_state(random_pure(dims_param(spec), spec.seed)).density();
  if (f == "random-mixed") return random_mixed(dims_param(spec), int_param(spec, "rank"), spec.seed);
  if (f == "random-pure") return random_pure(dims_param(spec), spec.seed).density();
  throw ValidationError("unknown state family '" + f + "'");
}

}  // namespace ipc
