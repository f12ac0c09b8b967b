#include "qd/choi.hpp"

#include <cmath>

namespace qd {

namespace {

const Mat& sy_sy() {
    static const Mat s = kron(sigma_y(), sigma_y());
    return s;
}

void check_2q(const ChoiOperator& r, const char* who) {
    if (r.dim_in != 4 || r.dim_out != 4)
        throw DimensionMismatch(std::string(who) + ": 2-qubit in/out Choi required");
}

}  // namespace

ChoiOperator choi_identity_2q() {
    Vec psi = Vec::Zero(16);
    for (int i = 0; i < 4; ++i) psi(i * 4 + i) = 1.0;
    ChoiOperator r;
    r.dim_in = 4;
    r.dim_out = 4;
    r.matrix = psi * psi.adjoint();
    return r;
}

ChoiOperator choi_fixed_output(const Mat& sigma, int dim_in) {
    ChoiOperator r;
    r.dim_in = dim_in;
    r.dim_out = static_cast<int>(sigma.rows());
    r.matrix = kron(sigma, Mat::Identity(dim_in, dim_in));
    return r;
}

Mat choi_apply(const ChoiOperator& r, const Mat& rho) {
    if (rho.rows() != r.dim_in || rho.cols() != r.dim_in)
        throw DimensionMismatch("choi_apply: input dimension mismatch");
    Mat weighted = r.matrix * kron(Mat::Identity(r.dim_out, r.dim_out), rho.transpose());
    return partial_trace_second(weighted, r.dim_out, r.dim_in);
}

DensityMatrix choi_apply(const ChoiOperator& r, const DensityMatrix& rho) {
    return DensityMatrix::from(choi_apply(r, rho.mat()));
}

CpCheck is_cp(const ChoiOperator& r) {
    CpCheck c;
    c.min_eig = min_eigenvalue(r.matrix);
    c.is_cp = c.min_eig >= -kPsdTol;
    return c;
}

TpCheck is_tp(const ChoiOperator& r) {
    TpCheck t;
    Mat reduced = partial_trace_first(r.matrix, r.dim_out, r.dim_in);
    t.residual = max_abs(reduced - Mat::Identity(r.dim_in, r.dim_in));
    t.is_tp = t.residual <= 1e-10;
    return t;
}

ChoiOperator conjugate_flip(const ChoiOperator& r) {
    check_2q(r, "conjugate_flip");
    Mat flip = kron(Mat::Identity(4, 4), sy_sy());
    ChoiOperator out = r;
    out.matrix = flip * r.matrix * flip;
    return out;
}

Mat interleave_2q(const Mat& m) {
    // out-major slots (out1 out2 in1 in2) -> (out1 in1 out2 in2)
    return permute_qubit_systems(m, {0, 2, 1, 3});
}

Mat deinterleave_2q(const Mat& m) {
    return permute_qubit_systems(m, {0, 2, 1, 3});  // the permutation is self-inverse
}

Mat haar_su2(Rng& rng) {
    double a = rng.normal(), b = rng.normal(), c = rng.normal(), d = rng.normal();
    double n = std::sqrt(a * a + b * b + c * c + d * d);
    a /= n;
    b /= n;
    c /= n;
    d /= n;
    Mat u(2, 2);
    u << cdouble(a, b), cdouble(c, d), cdouble(-c, d), cdouble(a, -b);
    return u;
}

Mat haar_su2(std::uint64_t seed) {
    Rng rng(seed);
    return haar_su2(rng);
}

namespace {

Mat group_element(Rng& rng, SignalMode mode) {
    Mat u1 = haar_su2(rng);
    Mat u2 = mode == SignalMode::Identical ? u1 : haar_su2(rng);
    return kron(kron(u1, u2), kron(u1.conjugate(), u2.conjugate()));
}

}  // namespace

double covariance_residual(const ChoiOperator& r, int samples, SignalMode mode,
                           std::uint64_t seed) {
    check_2q(r, "covariance_residual");
    if (samples < 1) throw Error("covariance_residual: samples >= 1 required");
    Rng rng(seed);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Mat wv = group_element(rng, mode);
        worst = std::max(worst, operator_norm(r.matrix * wv - wv * r.matrix));
    }
    return worst;
}

ChoiOperator twirl(const ChoiOperator& r, int samples, SignalMode mode, std::uint64_t seed) {
    check_2q(r, "twirl");
    if (samples < 1) throw Error("twirl: samples >= 1 required");
    Rng rng(seed);
    Mat acc = Mat::Zero(16, 16);
    for (int k = 0; k < samples; ++k) {
        Mat u1 = haar_su2(rng);
        Mat u2 = mode == SignalMode::Identical ? u1 : haar_su2(rng);
        Mat u = kron(u1, u2);
        // Choi of rho -> U^dag D(U rho U^dag) U is (U^dag x U^T) R (U x U*).
        Mat left = kron(u.adjoint(), u.transpose());
        acc += left * r.matrix * left.adjoint();
    }
    ChoiOperator out = r;
    out.matrix = acc / static_cast<double>(samples);
    return out;
}

}  // namespace qd
