#pragma once

#include <array>
#include <vector>

#include "qd/choi.hpp"

namespace qd {

// Covariant two-qubit channel family for independently encoded signals.
// Coefficients live on the cone q_i >= 0 with trace constraint
// q0 + 6 q1 + 9 q2 = 4.
class DiffSignalChannel {
  public:
    DiffSignalChannel(double q0, double q1, double q2);

    double q0() const { return q0_; }
    double q1() const { return q1_; }
    double q2() const { return q2_; }

  private:
    double q0_, q1_, q2_;
};

// Assembles q0 P0xP0 + q1 (P0xP1 + P1xP0) + q2 P1xP1 in the interleaved
// (out1 in1 out2 in2) ordering, permutes to out x in and un-flips.
ChoiOperator build_choi_diff(const DiffSignalChannel& c);

struct DiffComponents {
    Mat d0, d1, d2;  // each trace 1
};

// D0(rho) = rho, D1 = 1/3 (rho_A x 1 + 1 x rho_B - rho),
// D2 = 1/9 (4 1x1 - 2 rho_A x 1 - 2 1 x rho_B + rho); the full channel is
// (q0/4) D0 + (3 q1/2) D1 + (9 q2/4) D2.
DiffComponents apply_components(const Mat& rho);
Mat apply_diff_channel(const DiffSignalChannel& c, const Mat& rho);

// Closed-form coefficients decorrelating the seed (eta, lambda = lam_zz)
// to target Bloch length eta_tilde. Caller passes eta_tilde signed with
// sgn(eta_tilde) = sgn(eta).
DiffSignalChannel solve_q_diff(double eta, double lambda, double eta_tilde);

// As above but without the nonnegativity gate; used for feasibility probes.
std::array<double, 3> solve_q_diff_unchecked(double eta, double lambda, double eta_tilde);

// Maximal achievable |eta_tilde| (four-branch closed form, branch boundaries
// lambda in {-eta^2, 0, eta^2/3}). Returns 0 when eta = 0 or lambda = 0.
double optimal_eta_diff(double eta, double lambda);

// Bisection over the feasibility of solve_q_diff; independent of the
// closed form above.
double oracle_optimal_diff(double eta, double lambda);

// | sum_n (3^n / 2^N) C(N,n) q_n - 1 |, the general-N trace constraint.
double trace_constraint_diff_general(int n_parties, const std::vector<double>& q);

}  // namespace qd
