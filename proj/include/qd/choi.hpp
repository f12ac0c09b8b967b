#pragma once

#include "qd/linalg.hpp"
#include "qd/qubit.hpp"

namespace qd {

// Choi-Jamiolkowski operator of a channel, R = (D x I)(|Psi><Psi|) with the
// unnormalized reference |Psi> = sum_i |i>|i>. Hilbert-space ordering is
// out (x) in with qubit-major index order, so Choi(identity) has trace dim_in.
struct ChoiOperator {
    int dim_in = 0;
    int dim_out = 0;
    Mat matrix;  // (dim_out * dim_in) square

    int total_dim() const { return dim_in * dim_out; }
};

ChoiOperator choi_identity_2q();

// Choi of the constant channel rho -> sigma (any input dimension).
ChoiOperator choi_fixed_output(const Mat& sigma, int dim_in);

// D(rho) = Tr_in[R (1_out x rho^T)].
Mat choi_apply(const ChoiOperator& r, const Mat& rho);
DensityMatrix choi_apply(const ChoiOperator& r, const DensityMatrix& rho);

struct CpCheck {
    bool is_cp = false;
    double min_eig = 0.0;
};

struct TpCheck {
    bool is_tp = false;
    double residual = 0.0;  // max |Tr_out(R) - 1_in|
};

CpCheck is_cp(const ChoiOperator& r);
TpCheck is_tp(const ChoiOperator& r);

// R -> (1_out x sy x sy) R (1_out x sy x sy); an involution on 2-qubit-input
// operators. Removes the conjugate representation from the covariance
// condition (the channel then pairs with rho_bar = sy^x2 rho^T sy^x2).
ChoiOperator conjugate_flip(const ChoiOperator& r);

// Index permutation between qubit-major out (x) in ordering
// (out1 out2 in1 in2) and the interleaved ordering (out1 in1 out2 in2).
Mat interleave_2q(const Mat& m);
Mat deinterleave_2q(const Mat& m);

enum class SignalMode { Different, Identical };

// max over Haar samples of || [R, W_g x V_g] ||_op, with
//   Different: W x V = U_g1 x U_g2 x U*_g1 x U*_g2,
//   Identical: W x V = U_g^x2 x U*_g^x2.
double covariance_residual(const ChoiOperator& r, int samples, SignalMode mode,
                           std::uint64_t seed = 42);

// Monte-Carlo group average of the channel; fixed seed for reproducibility.
ChoiOperator twirl(const ChoiOperator& r, int samples, SignalMode mode,
                   std::uint64_t seed = 42);

// Haar-distributed SU(2) element (unit-quaternion construction).
Mat haar_su2(Rng& rng);
Mat haar_su2(std::uint64_t seed);

}  // namespace qd
