#include "qlb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlb/error.hpp"

namespace qlb {

Caps& caps() {
  static Caps c;
  return c;
}

void require_size(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap)
    throw SizeError(std::string(what) + ": " + std::to_string(n) + " exceeds cap " +
                    std::to_string(cap));
}

namespace {

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

// Eigen 3.4.0's BDCSVD returns wrong subspaces on some degenerate complex
// inputs, so everything here goes through Hermitian eigendecompositions.
Eigen::SelfAdjointEigenSolver<CMatrix> gram_eig(const CMatrix& g, bool vectors) {
  CMatrix h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("eigensolver did not converge");
  return es;
}

// right null space of k (columns of the returned matrix), singular values <= thresh
CMatrix null_space(const CMatrix& k, Eigen::Index n, double thresh) {
  if (k.rows() == 0) return CMatrix::Identity(n, n);
  auto es = gram_eig(k.adjoint() * k, true);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < n; ++j)
    if (es.eigenvalues()(j) <= thresh * thresh) keep.push_back(j);
  CMatrix out(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return out;
}

}  // namespace

Isometry::Isometry(Eigen::Index ambient) : ambient_(ambient), basis_(ambient, 0) {}

Isometry::Isometry(CMatrix basis, bool check) : ambient_(basis.rows()), basis_(std::move(basis)) {
  if (check && basis_.cols() > 0) {
    CMatrix g = basis_.adjoint() * basis_;
    g -= CMatrix::Identity(g.rows(), g.cols());
    if (max_abs(g) > 1e-10) throw ContractError("Isometry: columns are not orthonormal");
  }
}

Isometry Isometry::identity(Eigen::Index n) { return Isometry(CMatrix::Identity(n, n), false); }

Isometry Isometry::coordinates(Eigen::Index ambient, const std::vector<Eigen::Index>& idx) {
  CMatrix b = CMatrix::Zero(ambient, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) b(idx[c], static_cast<Eigen::Index>(c)) = 1.0;
  return Isometry(std::move(b), false);
}

Isometry Isometry::complement(double) const {
  if (rank() == 0) return identity(ambient_);
  if (rank() == ambient_) return Isometry(ambient_);
  Eigen::HouseholderQR<CMatrix> qr(basis_);
  CMatrix q = qr.householderQ();
  return Isometry(q.rightCols(ambient_ - rank()), false);
}

Isometry Isometry::minus(const Isometry& other, double tol) const {
  if (rank() == 0 || other.rank() == 0) return *this;
  CMatrix k = other.basis_.adjoint() * basis_;
  CMatrix nv = null_space(k, rank(), std::sqrt(tol));
  return Isometry(basis_ * nv, false);
}

Isometry Isometry::intersect(const Isometry& other, double tol) const {
  if (rank() == 0 || other.rank() == 0) return Isometry(ambient_);
  CMatrix c = basis_ - other.basis_ * (other.basis_.adjoint() * basis_);
  CMatrix nv = null_space(c, rank(), std::sqrt(tol));
  return Isometry(basis_ * nv, false);
}

Isometry Isometry::join(const Isometry& other, double tol) const {
  CMatrix both(ambient_, rank() + other.rank());
  both << basis_, other.basis_;
  return span_isometry(both, tol);
}

double Isometry::excess(const Isometry& other) const {
  if (other.rank() == 0) return 0.0;
  if (rank() == 0) return 1.0;
  return spectral_norm(other.basis_ - basis_ * (basis_.adjoint() * other.basis_));
}

double Isometry::commutator_norm(const CMatrix& a) const {
  CMatrix p = projector();
  return spectral_norm(p * a - a * p);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  require_size(static_cast<std::size_t>(a.size()) * static_cast<std::size_t>(b.size()),
               caps().max_kron_entries, "kron");
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 || a.cols() == 1) return a.norm();
  CMatrix g = a.rows() < a.cols() ? CMatrix(a * a.adjoint()) : CMatrix(a.adjoint() * a);
  auto es = gram_eig(g, false);
  return std::sqrt(std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1)));
}

double holder_bound(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  double col = a.cwiseAbs().colwise().sum().maxCoeff();
  double row = a.cwiseAbs().rowwise().sum().maxCoeff();
  return std::sqrt(col * row);
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol * std::max(1.0, max_abs(a));
}

HermEig herm_eig(const CMatrix& a) {
  if (!is_hermitian(a)) throw ContractError("herm_eig: input is not Hermitian");
  CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw Error("herm_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

Isometry span_isometry(const std::vector<CVector>& vectors, double tol) {
  if (vectors.empty()) return Isometry(0);
  const Eigen::Index dim = vectors.front().size();
  CMatrix a(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    if (vectors[c].size() != dim) throw ContractError("span_isometry: mixed ambient dimensions");
    a.col(static_cast<Eigen::Index>(c)) = vectors[c];
  }
  return span_isometry(a, tol);
}

Isometry span_isometry(const CMatrix& columns, double tol) {
  const Eigen::Index dim = columns.rows();
  if (columns.cols() == 0) return Isometry(dim);
  // Gram eigenvalues are squared singular values; below 1e-12 relative they are
  // rounding noise, so tol is floored at 1e-6 in singular-value terms.
  const double rel = std::max(tol * tol, 1e-12);
  const bool wide = columns.cols() >= dim;
  auto es = gram_eig(wide ? CMatrix(columns * columns.adjoint()) : CMatrix(columns.adjoint() * columns), true);
  const RVector& ev = es.eigenvalues();
  const Eigen::Index k = ev.size();
  if (ev(k - 1) <= 0.0) return Isometry(dim);
  Eigen::Index r = 0;
  while (r < k && ev(k - 1 - r) > rel * ev(k - 1)) ++r;
  CMatrix u(dim, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    CVector v = es.eigenvectors().col(k - 1 - j);
    u.col(j) = wide ? v : CVector(columns * v / std::sqrt(ev(k - 1 - j)));
  }
  if (!wide) {
    // A V / sigma is orthonormal only up to rounding; one QR pass fixes it
    Eigen::HouseholderQR<CMatrix> qr(u);
    u = qr.householderQ() * CMatrix::Identity(dim, r);
  }
  return Isometry(std::move(u), false);
}

namespace {

void require_state(const CMatrix& m, const char* what) {
  if (!is_hermitian(m, 1e-9)) throw ContractError(std::string(what) + ": not Hermitian");
  HermEig e = herm_eig(m);
  if (e.values.size() && e.values(0) < -1e-9) throw ContractError(std::string(what) + ": not PSD");
  if (std::abs(m.trace().real() - 1.0) > 1e-9)
    throw ContractError(std::string(what) + ": trace differs from 1");
}

CMatrix psd_sqrt(const HermEig& e) {
  RVector r = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * r.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

}  // namespace

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
  require_state(rho, "fidelity(rho)");
  require_state(sigma, "fidelity(sigma)");
  CMatrix sr = psd_sqrt(herm_eig(rho));
  CMatrix c = sr * sigma * sr;
  c = 0.5 * (c + c.adjoint());
  HermEig e = herm_eig(c);
  double f = 0.0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) f += std::sqrt(std::max(0.0, e.values(i)));
  return f;
}

CMatrix mat_sqrt(const CMatrix& a) {
  HermEig e = herm_eig(a);
  if (e.values.size() && e.values(0) < -1e-9 * std::max(1.0, std::abs(e.values(e.values.size() - 1))))
    throw ContractError("mat_sqrt: input is not PSD");
  return psd_sqrt(e);
}

CMatrix mat_inv_sqrt(const CMatrix& a) {
  HermEig e = herm_eig(a);
  if (e.values.size() == 0) return a;
  if (e.values(0) <= 1e-12) throw SingularityError("mat_inv_sqrt: minimum eigenvalue <= 1e-12");
  RVector r = e.values.cwiseSqrt().cwiseInverse();
  return e.vectors * r.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

double sandwich_norm(const Isometry& l, const CVector& diag, const Isometry& r) {
  if (l.rank() == 0 || r.rank() == 0) return 0.0;
  return spectral_norm(l.basis().adjoint() * (diag.asDiagonal() * r.basis()));
}

double sandwich_norm(const Isometry& l, const CMatrix& op, const Isometry& r) {
  if (l.rank() == 0 || r.rank() == 0) return 0.0;
  return spectral_norm(l.basis().adjoint() * (op * r.basis()));
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

}  // namespace qlb
