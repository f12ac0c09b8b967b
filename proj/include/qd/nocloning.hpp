#pragma once

#include <vector>

#include "qd/choi.hpp"

namespace qd {

// Phase orbit |phi> = sqrt(p)|0> + sqrt(1-p) e^{i phi} |1> sampled on a
// uniform grid; M > N clones demanded from N input copies.
struct PhaseOrbitSpec {
    double p = 0.5;
    int n_in = 1;
    int m_out = 2;
    int phi_samples = 0;  // 0: choose 4(M+1) rounded up to a power of two

    PhaseOrbitSpec(double p_, int n_, int m_, int phi_samples_ = 0);
};

Vec phase_state(double p, double phi);

// Largest |n| carrying a Fourier coefficient above tol (relative to the
// largest coefficient over all matrix entries) along the phi grid.
// Throws GridTooCoarse when significant weight sits at the Nyquist bin,
// i.e. the grid cannot certify the degree it found.
int fourier_degree(const std::vector<Mat>& samples, double tol = 1e-9);

struct ContradictionReport {
    int degree_out = 0;                    // degree of Lambda(psi^xN); <= N for any channel
    std::vector<bool> marginal_informative;  // per clone: marginal degree >= 1
    int degree_product = 0;                // degree of the tensor product of marginals
    double decorrelation_gap = 0.0;        // max_phi |Lambda(psi^xN) - prod marginals|_max
};

// Evaluates the no-cloning-without-correlations witness for a channel with
// dim_in = 2^N and dim_out = 2^M. With renormalize set, trace-nonincreasing
// maps are admitted and outputs are renormalized per phase point.
ContradictionReport contradiction_report(const PhaseOrbitSpec& spec, const ChoiOperator& channel,
                                         bool renormalize = false);

// Choi operator of the optimal universal 1 -> 2 qubit cloner
// T(rho) = (2/3) S (rho x 1) S, S the two-qubit symmetric projector.
ChoiOperator universal_cloner_choi();

// Marginal of clone k from an M-qubit output.
Mat clone_marginal(const Mat& rho, int m_qubits, int k);

}  // namespace qd
