#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qlb {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Global caps. Exceeding either is always an explicit SizeError.
struct Caps {
  std::size_t max_kron_entries = std::size_t{1} << 20;
  std::size_t max_state_dim = std::size_t{1} << 18;
};
Caps& caps();

void require_size(std::size_t n, std::size_t cap, const char* what);

// Orthonormal column basis of a subspace; the projector is V V^dag.
class Isometry {
 public:
  Isometry() = default;
  explicit Isometry(Eigen::Index ambient);  // rank 0
  Isometry(CMatrix basis, bool check = true);

  static Isometry identity(Eigen::Index n);
  static Isometry coordinates(Eigen::Index ambient, const std::vector<Eigen::Index>& idx);

  Eigen::Index ambient() const { return ambient_; }
  Eigen::Index rank() const { return basis_.cols(); }
  const CMatrix& basis() const { return basis_; }
  CMatrix projector() const { return basis_ * basis_.adjoint(); }

  // orthonormal complement within the ambient space
  Isometry complement(double tol = 1e-9) const;
  // part of this subspace orthogonal to other
  Isometry minus(const Isometry& other, double tol = 1e-9) const;
  Isometry intersect(const Isometry& other, double tol = 1e-9) const;
  Isometry join(const Isometry& other, double tol = 1e-9) const;

  // ||(I - P_this) P_other||: zero iff other is contained in this
  double excess(const Isometry& other) const;
  // ||P_this A - A P_this|| for a square operator
  double commutator_norm(const CMatrix& a) const;

 private:
  Eigen::Index ambient_ = 0;
  CMatrix basis_;
};

struct HermEig {
  RVector values;   // ascending
  CMatrix vectors;  // columns orthonormal
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
double spectral_norm(const CMatrix& a);
double holder_bound(const CMatrix& a);
bool is_hermitian(const CMatrix& a, double tol = 1e-10);
HermEig herm_eig(const CMatrix& a);
Isometry span_isometry(const std::vector<CVector>& vectors, double tol = 1e-9);
Isometry span_isometry(const CMatrix& columns, double tol = 1e-9);
double fidelity(const CMatrix& rho, const CMatrix& sigma);
CMatrix mat_sqrt(const CMatrix& a);
CMatrix mat_inv_sqrt(const CMatrix& a);

// ||L^dag diag(d) R||, i.e. the norm of P_L D P_R for orthonormal bases
double sandwich_norm(const Isometry& l, const CVector& diag, const Isometry& r);
double sandwich_norm(const Isometry& l, const CMatrix& op, const Isometry& r);

double frobenius_distance(const CMatrix& a, const CMatrix& b);

}  // namespace qlb
