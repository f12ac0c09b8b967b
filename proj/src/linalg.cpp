#include "qd/linalg.hpp"

#include <cmath>

namespace qd {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

RMat kron_real(const RMat& a, const RMat& b) {
    RMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double max_abs(const Mat& m) {
    return m.cwiseAbs().maxCoeff();
}

double max_abs_real(const RMat& m) {
    return m.cwiseAbs().maxCoeff();
}

double hermiticity_deviation(const Mat& m) {
    return max_abs(m - m.adjoint());
}

double min_eigenvalue(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double operator_norm(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

Mat psd_sqrt(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
    RVec vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

Mat partial_trace_first(const Mat& m, int dim_a, int dim_b) {
    if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
        throw DimensionMismatch("partial_trace_first: matrix does not match dims");
    Mat out = Mat::Zero(dim_b, dim_b);
    for (int a = 0; a < dim_a; ++a)
        for (int i = 0; i < dim_b; ++i)
            for (int j = 0; j < dim_b; ++j)
                out(i, j) += m(a * dim_b + i, a * dim_b + j);
    return out;
}

Mat partial_trace_second(const Mat& m, int dim_a, int dim_b) {
    if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
        throw DimensionMismatch("partial_trace_second: matrix does not match dims");
    Mat out = Mat::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_a; ++j)
            for (int b = 0; b < dim_b; ++b)
                out(i, j) += m(i * dim_b + b, j * dim_b + b);
    return out;
}

Mat permute_qubit_systems(const Mat& m, const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    const int dim = 1 << n;
    if (m.rows() != dim || m.cols() != dim)
        throw DimensionMismatch("permute_qubit_systems: matrix does not match slot count");
    // p[src] = destination index in the reordered basis.
    std::vector<int> p(dim);
    for (int src = 0; src < dim; ++src) {
        int dst = 0;
        for (int slot = 0; slot < n; ++slot) {
            int bit = (src >> (n - 1 - perm[slot])) & 1;
            dst |= bit << (n - 1 - slot);
        }
        p[src] = dst;
    }
    Mat out(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            out(p[r], p[c]) = m(r, c);
    return out;
}

double Rng::uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

cdouble Rng::normal_complex() {
    double re = normal();
    double im = normal();
    return {re, im};
}

}  // namespace qd
