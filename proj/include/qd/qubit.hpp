#pragma once

#include <array>

#include "qd/linalg.hpp"

namespace qd {

// Pauli matrices, index order (x, y, z); |0> is the +1 eigenvector of sigma_z.
const Mat& sigma_x();
const Mat& sigma_y();
const Mat& sigma_z();
const Mat& identity2();
const Mat& pauli(int i);  // 0 = x, 1 = y, 2 = z

// Validated density matrix: Hermitian to 1e-12, unit trace to 1e-12,
// smallest eigenvalue >= -1e-10.
class DensityMatrix {
  public:
    static DensityMatrix from(const Mat& m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Mat& mat() const { return mat_; }

  private:
    explicit DensityMatrix(Mat m) : mat_(std::move(m)) {}
    Mat mat_;
};

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;
    double norm() const;
};

// Permutation-invariant two-qubit state
//   rho = 1/4 (1 + eta (sz x 1 + 1 x sz) - sum_ij lam_ij si x sj),
// lam symmetric. Construction rejects parameters whose realization is
// not positive semidefinite.
class TwoQubitPauliState {
  public:
    // lam given as a full symmetric 3x3 matrix (x, y, z order).
    TwoQubitPauliState(double eta, const Eigen::Matrix3d& lam);

    // Diagonal-lambda convenience (lam_xx, lam_yy, lam_zz).
    static TwoQubitPauliState diagonal(double eta, double lxx, double lyy, double lzz);

    double eta() const { return eta_; }
    const Eigen::Matrix3d& lam() const { return lam_; }
    double big_lambda() const { return lam_.trace(); }

  private:
    double eta_;
    Eigen::Matrix3d lam_;
};

DensityMatrix to_density(const TwoQubitPauliState& s);

// Unvalidated realization of the Pauli form; used where the parameters are
// allowed to lie outside the state space.
Mat pauli_form_matrix(double eta, const Eigen::Matrix3d& lam);

// Inverse of to_density: read (eta, lam) off a 4x4 matrix via Pauli traces.
std::pair<double, Eigen::Matrix3d> pauli_extract(const Mat& rho);

enum class Subsystem { A, B };

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);
Mat partial_trace_raw(const Mat& rho, Subsystem keep);

BlochVector bloch_vector(const Mat& rho2x2);

// Uhlmann fidelity, squared convention: F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity_raw(const Mat& rho, const Mat& sigma);

struct ProductCheck {
    bool is_product = false;
    double residual = 0.0;  // max |rho - rho_A x rho_B|
};

ProductCheck is_product(const DensityMatrix& rho, double tol = 1e-8);
ProductCheck is_product_raw(const Mat& rho, double tol = 1e-8);

// Double-ket calculus: vec(A) = sum_mn A_mn |m>|n>, so
// (A x C) vec(B) = vec(A B C^T) and <vec(A), vec(B)> = Tr[A^dag B].
Vec vec(const Mat& a);
Mat unvec(const Vec& v);

// Singlet projector 1/4 (1 - sx sx - sy sy - sz sz) and its complement.
const Mat& projector_singlet();
const Mat& projector_triplet();

}  // namespace qd
