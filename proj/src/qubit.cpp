#include "qd/qubit.hpp"

#include <cmath>

namespace qd {

namespace {

Mat make_pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat make_pauli_y() {
    Mat m(2, 2);
    m << 0, cdouble(0, -1), cdouble(0, 1), 0;
    return m;
}

Mat make_pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace

const Mat& sigma_x() {
    static const Mat m = make_pauli_x();
    return m;
}

const Mat& sigma_y() {
    static const Mat m = make_pauli_y();
    return m;
}

const Mat& sigma_z() {
    static const Mat m = make_pauli_z();
    return m;
}

const Mat& identity2() {
    static const Mat m = Mat::Identity(2, 2);
    return m;
}

const Mat& pauli(int i) {
    switch (i) {
        case 0: return sigma_x();
        case 1: return sigma_y();
        default: return sigma_z();
    }
}

DensityMatrix DensityMatrix::from(const Mat& m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw DimensionMismatch("DensityMatrix: square matrix required");
    if (hermiticity_deviation(m) > kHermTol)
        throw InvalidState("DensityMatrix: not Hermitian within 1e-12");
    if (std::abs(m.trace().real() - 1.0) > kTraceTol || std::abs(m.trace().imag()) > kTraceTol)
        throw InvalidState("DensityMatrix: trace differs from 1 beyond 1e-12");
    if (min_eigenvalue(m) < -kPsdTol)
        throw NotPositive("DensityMatrix: smallest eigenvalue below -1e-10");
    return DensityMatrix(m);
}

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

Mat pauli_form_matrix(double eta, const Eigen::Matrix3d& lam) {
    Mat m = Mat::Identity(4, 4);
    m += eta * (kron(sigma_z(), identity2()) + kron(identity2(), sigma_z()));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m -= lam(i, j) * kron(pauli(i), pauli(j));
    return 0.25 * m;
}

TwoQubitPauliState::TwoQubitPauliState(double eta, const Eigen::Matrix3d& lam)
    : eta_(eta), lam_(lam) {
    if (max_abs_real(lam - lam.transpose()) > 0.0)
        throw InvalidState("TwoQubitPauliState: lam must be symmetric");
    if (std::abs(eta) > 1.0)
        throw InvalidState("TwoQubitPauliState: |eta| > 1");
    if (min_eigenvalue(pauli_form_matrix(eta_, lam_)) < -kPsdTol)
        throw NotPositive("TwoQubitPauliState: realization not positive semidefinite");
}

TwoQubitPauliState TwoQubitPauliState::diagonal(double eta, double lxx, double lyy, double lzz) {
    Eigen::Matrix3d lam = Eigen::Matrix3d::Zero();
    lam(0, 0) = lxx;
    lam(1, 1) = lyy;
    lam(2, 2) = lzz;
    return TwoQubitPauliState(eta, lam);
}

DensityMatrix to_density(const TwoQubitPauliState& s) {
    return DensityMatrix::from(pauli_form_matrix(s.eta(), s.lam()));
}

std::pair<double, Eigen::Matrix3d> pauli_extract(const Mat& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DimensionMismatch("pauli_extract: 4x4 matrix required");
    double eta = 0.5 * ((kron(sigma_z(), identity2()) * rho).trace().real() +
                        (kron(identity2(), sigma_z()) * rho).trace().real());
    Eigen::Matrix3d lam;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            lam(i, j) = -(kron(pauli(i), pauli(j)) * rho).trace().real();
    return {eta, lam};
}

Mat partial_trace_raw(const Mat& rho, Subsystem keep) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DimensionMismatch("partial_trace: 4x4 matrix required");
    return keep == Subsystem::A ? partial_trace_second(rho, 2, 2)
                                : partial_trace_first(rho, 2, 2);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    return DensityMatrix::from(partial_trace_raw(rho.mat(), keep));
}

BlochVector bloch_vector(const Mat& rho2x2) {
    if (rho2x2.rows() != 2 || rho2x2.cols() != 2)
        throw DimensionMismatch("bloch_vector: 2x2 matrix required");
    BlochVector b;
    b.x = (sigma_x() * rho2x2).trace().real();
    b.y = (sigma_y() * rho2x2).trace().real();
    b.z = (sigma_z() * rho2x2).trace().real();
    return b;
}

double fidelity_raw(const Mat& rho, const Mat& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw DimensionMismatch("fidelity: dimension mismatch");
    Mat s = psd_sqrt(rho);
    double f = psd_sqrt(s * sigma * s).trace().real();
    return f * f;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return fidelity_raw(rho.mat(), sigma.mat());
}

ProductCheck is_product_raw(const Mat& rho, double tol) {
    Mat a = partial_trace_raw(rho, Subsystem::A);
    Mat b = partial_trace_raw(rho, Subsystem::B);
    ProductCheck res;
    res.residual = max_abs(rho - kron(a, b));
    res.is_product = res.residual <= tol;
    return res;
}

ProductCheck is_product(const DensityMatrix& rho, double tol) {
    return is_product_raw(rho.mat(), tol);
}

Vec vec(const Mat& a) {
    Vec v(a.rows() * a.cols());
    for (Eigen::Index m = 0; m < a.rows(); ++m)
        for (Eigen::Index n = 0; n < a.cols(); ++n)
            v(m * a.cols() + n) = a(m, n);
    return v;
}

Mat unvec(const Vec& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size())
        throw DimensionMismatch("unvec: length is not a perfect square");
    Mat a(d, d);
    for (Eigen::Index m = 0; m < d; ++m)
        for (Eigen::Index n = 0; n < d; ++n)
            a(m, n) = v(m * d + n);
    return a;
}

const Mat& projector_singlet() {
    static const Mat p = 0.25 * (Mat::Identity(4, 4) - kron(sigma_x(), sigma_x()) -
                                 kron(sigma_y(), sigma_y()) - kron(sigma_z(), sigma_z()));
    return p;
}

const Mat& projector_triplet() {
    static const Mat p = Mat::Identity(4, 4) - projector_singlet();
    return p;
}

}  // namespace qd
