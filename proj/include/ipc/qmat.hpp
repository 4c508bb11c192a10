#pragma once

// Dense complex linear algebra over multi-qudit Hilbert spaces.
//
// Subsystem ordering is row-major throughout: for dims {d0, d1, ..., dn-1}
// the basis index of |i0 i1 ... in-1> is i0*d1*...*dn-1 + ... + in-1, i.e. the
// leftmost subsystem varies slowest. Every Kronecker product, reshape and
// partial operation below follows this convention.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "ipc/errors.hpp"

namespace ipc {

using Dims = std::vector<int>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Numerical tolerances of the state types.
struct Tolerance {
  static constexpr double hermitian = 1e-10;
  static constexpr double trace = 1e-10;
  static constexpr double psd = 1e-9;
  static constexpr double norm = 1e-12;
  static constexpr double schmidt_cutoff = 1e-12;
};

inline Eigen::Index total_dim(const Dims& dims) {
  Eigen::Index n = 1;
  for (int d : dims) n *= d;
  return n;
}

inline std::string dims_string(const Dims& dims) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ']';
  return os.str();
}

inline void check_dims(const Dims& dims) {
  if (dims.empty()) throw DimensionError("empty subsystem layout");
  for (int d : dims)
    if (d < 2) throw DimensionError("subsystem dimension below 2 in " + dims_string(dims));
}

/// The kept side S of a cut S|S̄; the complement is implied by the layout.
struct Bipartition {
  std::vector<int> kept;

  static Bipartition first(int count = 1) {
    Bipartition b;
    b.kept.resize(static_cast<std::size_t>(count));
    std::iota(b.kept.begin(), b.kept.end(), 0);
    return b;
  }

  /// Sorted, deduplicated kept indices, validated against `n` subsystems.
  std::vector<int> normalized(std::size_t n) const {
    std::vector<int> k = kept;
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    for (int i : k)
      if (i < 0 || static_cast<std::size_t>(i) >= n)
        throw DimensionError("subsystem index " + std::to_string(i) + " out of range for " +
                             std::to_string(n) + " subsystems");
    return k;
  }

  std::vector<int> complement(std::size_t n) const {
    const auto k = normalized(n);
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(n); ++i)
      if (!std::binary_search(k.begin(), k.end(), i)) out.push_back(i);
    return out;
  }

  /// Throws unless S is nonempty and proper.
  void require_proper(std::size_t n) const {
    const auto k = normalized(n);
    if (k.empty() || k.size() == n)
      throw DimensionError("bipartition must keep a nonempty proper subset of subsystems");
  }
};

namespace detail {

inline std::vector<Eigen::Index> strides(const Dims& dims) {
  std::vector<Eigen::Index> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

/// Full-space index for every (group A index, group B index) pair.
/// Group indices are row-major over the listed subsystems in their listed order.
inline std::vector<Eigen::Index> index_table(const Dims& dims, const std::vector<int>& a,
                                             const std::vector<int>& b) {
  const auto st = strides(dims);
  Eigen::Index na = 1, nb = 1;
  for (int i : a) na *= dims[i];
  for (int i : b) nb *= dims[i];
  std::vector<Eigen::Index> table(static_cast<std::size_t>(na * nb));
  auto offset = [&](const std::vector<int>& group, Eigen::Index idx) {
    Eigen::Index off = 0;
    for (int g = static_cast<int>(group.size()) - 1; g >= 0; --g) {
      const int sub = group[g];
      off += (idx % dims[sub]) * st[sub];
      idx /= dims[sub];
    }
    return off;
  };
  std::vector<Eigen::Index> boff(static_cast<std::size_t>(nb));
  for (Eigen::Index j = 0; j < nb; ++j) boff[j] = offset(b, j);
  for (Eigen::Index i = 0; i < na; ++i) {
    const Eigen::Index ao = offset(a, i);
    for (Eigen::Index j = 0; j < nb; ++j) table[i * nb + j] = ao + boff[j];
  }
  return table;
}

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace detail

template <typename Real>
struct EigenDecomp {
  RVector<Real> values;   // ascending
  CMatrix<Real> vectors;  // columns, orthonormal
};

/// Hermitian eigendecomposition. Rejects inputs that are not Hermitian to 1e-10 (relative to
/// the largest entry when that exceeds one).
template <typename Derived>
EigenDecomp<typename Derived::RealScalar> eig_hermitian(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  if (m.rows() != m.cols()) throw DimensionError("eig_hermitian: matrix is not square");
  const Real scale = std::max<Real>(Real(1), m.cwiseAbs().maxCoeff());
  if (detail::hermiticity_defect(m) > Real(Tolerance::hermitian) * scale)
    throw ValidationError("eig_hermitian: matrix is not Hermitian");
  const CMatrix<Real> h = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

template <typename Derived>
typename Derived::RealScalar eigenvalues_min(const Eigen::MatrixBase<Derived>& m) {
  return eig_hermitian(m).values(0);
}

template <typename Derived>
typename Derived::RealScalar eigenvalues_max(const Eigen::MatrixBase<Derived>& m) {
  const auto e = eig_hermitian(m);
  return e.values(e.values.size() - 1);
}

/// Hilbert-Schmidt inner product Tr[a† b] of two Hermitian operators; real by construction.
template <typename DA, typename DB>
typename DA::RealScalar hs_inner(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Real = typename DA::RealScalar;
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("hs_inner: operand shapes differ");
  // Tr[a† b] = sum conj(a_ij) b_ij
  const std::complex<Real> v = a.conjugate().cwiseProduct(b).sum();
  const Real scale = std::max<Real>(Real(1), std::abs(v));
  if (std::abs(v.imag()) > Real(Tolerance::hermitian) * scale)
    throw ValidationError("hs_inner: complex value for Hermitian operands");
  return v.real();
}

/// Density operator with an explicit subsystem layout.
template <typename Real>
class QState {
 public:
  using Matrix = CMatrix<Real>;

  QState(Dims dims, Matrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    validate();
  }

  const Dims& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }
  Eigen::Index side() const { return matrix_.rows(); }
  std::size_t parties() const { return dims_.size(); }

  Real purity() const { return hs_inner(matrix_, matrix_); }

  static QState maximally_mixed(const Dims& dims) {
    const auto n = total_dim(dims);
    return QState(dims, Matrix::Identity(n, n) / Real(n));
  }

 private:
  void validate() const {
    check_dims(dims_);
    const auto n = total_dim(dims_);
    if (matrix_.rows() != n || matrix_.cols() != n)
      throw DimensionError("state matrix side does not match dims " + dims_string(dims_));
    if (detail::hermiticity_defect(matrix_) > Real(Tolerance::hermitian))
      throw ValidationError("state matrix is not Hermitian");
    if (std::abs(matrix_.trace() - std::complex<Real>(1)) > Real(Tolerance::trace))
      throw ValidationError("state matrix does not have unit trace");
    if (eigenvalues_min(matrix_) < -Real(Tolerance::psd))
      throw ValidationError("state matrix is not positive semidefinite");
  }

  Dims dims_;
  Matrix matrix_;
};

/// Unit vector with an explicit subsystem layout.
template <typename Real>
class PureVec {
 public:
  using Vector = CVector<Real>;

  PureVec(Dims dims, Vector vec) : dims_(std::move(dims)), vec_(std::move(vec)) {
    check_dims(dims_);
    if (vec_.size() != total_dim(dims_))
      throw DimensionError("vector length does not match dims " + dims_string(dims_));
    if (std::abs(vec_.norm() - Real(1)) > Real(Tolerance::norm))
      throw ValidationError("pure state is not normalized");
  }

  /// Normalizes `vec` first; rejects the zero vector.
  static PureVec normalized(Dims dims, Vector vec) {
    const Real n = vec.norm();
    if (!(n > Real(0))) throw ValidationError("cannot normalize the zero vector");
    vec /= n;
    return PureVec(std::move(dims), std::move(vec));
  }

  static PureVec basis(Dims dims, Eigen::Index index) {
    Vector v = Vector::Zero(total_dim(dims));
    v(index) = 1;
    return PureVec(std::move(dims), std::move(v));
  }

  const Dims& dims() const { return dims_; }
  const Vector& vec() const { return vec_; }

  CMatrix<Real> projector() const { return vec_ * vec_.adjoint(); }
  QState<Real> density() const { return QState<Real>(dims_, projector()); }

 private:
  Dims dims_;
  Vector vec_;
};

template <typename Real>
struct SchmidtDecomp {
  std::vector<Real> coeffs;  // squared Schmidt coefficients, descending
  CMatrix<Real> left;        // columns |e_k>
  CMatrix<Real> right;       // columns |f_k>

  std::size_t rank() const { return coeffs.size(); }
};

template <typename Real>
QState<Real> tensor(const QState<Real>& a, const QState<Real>& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return QState<Real>(std::move(dims), Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

template <typename Real>
PureVec<Real> tensor(const PureVec<Real>& a, const PureVec<Real>& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return PureVec<Real>(std::move(dims), Eigen::kroneckerProduct(a.vec(), b.vec()).eval());
}

/// Tr over the complement of `part` for an arbitrary square operator on `dims`.
template <typename Derived>
CMatrix<typename Derived::RealScalar> partial_trace(const Eigen::MatrixBase<Derived>& m,
                                                    const Dims& dims, const Bipartition& part) {
  using Real = typename Derived::RealScalar;
  check_dims(dims);
  if (m.rows() != total_dim(dims) || m.cols() != m.rows())
    throw DimensionError("partial_trace: operator does not match dims " + dims_string(dims));
  const auto kept = part.normalized(dims.size());
  const auto traced = part.complement(dims.size());
  const auto table = detail::index_table(dims, kept, traced);
  Eigen::Index nk = 1;
  for (int i : kept) nk *= dims[i];
  const Eigen::Index nt = total_dim(dims) / nk;
  CMatrix<Real> out = CMatrix<Real>::Zero(nk, nk);
  for (Eigen::Index r = 0; r < nk; ++r)
    for (Eigen::Index c = 0; c < nk; ++c) {
      std::complex<Real> acc(0);
      for (Eigen::Index t = 0; t < nt; ++t) acc += m(table[r * nt + t], table[c * nt + t]);
      out(r, c) = acc;
    }
  return out;
}

inline Dims restrict_dims(const Dims& dims, const std::vector<int>& kept) {
  Dims out;
  for (int i : kept) out.push_back(dims[i]);
  return out;
}

/// Reduced state on the kept subsystems (in layout order). Keeping everything is the identity.
template <typename Real>
QState<Real> partial_trace(const QState<Real>& s, const Bipartition& part) {
  const auto kept = part.normalized(s.parties());
  if (kept.empty()) throw DimensionError("partial_trace: nothing kept");
  CMatrix<Real> red = partial_trace(s.matrix(), s.dims(), part);
  red = (red + red.adjoint().eval()) / Real(2);
  return QState<Real>(restrict_dims(s.dims(), kept), std::move(red));
}

/// Transposes the indices of the subsystems in `part` only.
template <typename Derived>
CMatrix<typename Derived::RealScalar> partial_transpose(const Eigen::MatrixBase<Derived>& m,
                                                        const Dims& dims, const Bipartition& part) {
  using Real = typename Derived::RealScalar;
  check_dims(dims);
  const Eigen::Index n = total_dim(dims);
  if (m.rows() != n || m.cols() != n)
    throw DimensionError("partial_transpose: operator does not match dims " + dims_string(dims));
  const auto sel = part.normalized(dims.size());
  const auto st = detail::strides(dims);
  CMatrix<Real> out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      Eigen::Index rr = r, cc = c;
      for (int i : sel) {
        const Eigen::Index dr = (r / st[i]) % dims[i];
        const Eigen::Index dc = (c / st[i]) % dims[i];
        rr += (dc - dr) * st[i];
        cc += (dr - dc) * st[i];
      }
      out(rr, cc) = m(r, c);
    }
  return out;
}

template <typename Real>
CMatrix<Real> partial_transpose(const QState<Real>& s, const Bipartition& part) {
  return partial_transpose(s.matrix(), s.dims(), part);
}

/// Coefficient matrix of `v` across the cut: rows index the kept side, columns the rest.
template <typename Real>
CMatrix<Real> coefficient_matrix(const PureVec<Real>& v, const Bipartition& part) {
  part.require_proper(v.dims().size());
  const auto a = part.normalized(v.dims().size());
  const auto b = part.complement(v.dims().size());
  const auto table = detail::index_table(v.dims(), a, b);
  Eigen::Index na = 1;
  for (int i : a) na *= v.dims()[i];
  const Eigen::Index nb = v.vec().size() / na;
  CMatrix<Real> c(na, nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < nb; ++j) c(i, j) = v.vec()(table[i * nb + j]);
  return c;
}

/// Schmidt decomposition across `part` by SVD of the coefficient matrix.
/// Coefficients at or below `cutoff` are dropped.
template <typename Real>
SchmidtDecomp<Real> schmidt_decompose(const PureVec<Real>& v, const Bipartition& part,
                                      Real cutoff = Real(Tolerance::schmidt_cutoff)) {
  const CMatrix<Real> c = coefficient_matrix(v, part);
  Eigen::JacobiSVD<CMatrix<Real>> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();  // descending
  SchmidtDecomp<Real> out;
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) * sv(r) > cutoff) ++r;
  out.coeffs.resize(static_cast<std::size_t>(r));
  for (Eigen::Index k = 0; k < r; ++k) out.coeffs[k] = sv(k) * sv(k);
  const Real total = std::accumulate(out.coeffs.begin(), out.coeffs.end(), Real(0));
  for (auto& x : out.coeffs) x /= total;
  out.left = svd.matrixU().leftCols(r);
  // c = U S V†, so the right Schmidt vectors are the conjugated columns of V.
  out.right = svd.matrixV().leftCols(r).conjugate();
  return out;
}

/// Two-party default cut for Schmidt decompositions of a bipartite vector.
template <typename Real>
SchmidtDecomp<Real> schmidt_decompose(const PureVec<Real>& v) {
  if (v.dims().size() != 2) throw DimensionError("schmidt_decompose: expected two subsystems");
  return schmidt_decompose(v, Bipartition::first());
}

/// Σ_k √λ_k |e_k>⊗|f_k> laid out for a two-party vector.
template <typename Real>
CVector<Real> schmidt_reconstruct(const SchmidtDecomp<Real>& s) {
  const Eigen::Index na = s.left.rows(), nb = s.right.rows();
  CVector<Real> v = CVector<Real>::Zero(na * nb);
  for (std::size_t k = 0; k < s.rank(); ++k)
    v += std::sqrt(s.coeffs[k]) *
         Eigen::kroneckerProduct(s.left.col(static_cast<Eigen::Index>(k)),
                                 s.right.col(static_cast<Eigen::Index>(k)))
             .eval();
  return v;
}

// Double-precision aliases used by the rest of the library.
using Matrix = CMatrix<double>;
using Vector = CVector<double>;
using State = QState<double>;
using Pure = PureVec<double>;
using Schmidt = SchmidtDecomp<double>;

}  // namespace ipc
