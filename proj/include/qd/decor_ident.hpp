#pragma once

#include <array>
#include <map>
#include <tuple>
#include <vector>

#include "qd/choi.hpp"

namespace qd {

// Covariant permutation-invariant channel family for identically encoded
// signals: six angular-momentum sector coefficients
//   q0 = s^0_{0,0}, q1 = s^1_{1,0}, q2 = s^1_{0,1},
//   q3 = s^0_{1,1}, q4 = s^1_{1,1}, q5 = s^2_{1,1},
// constrained by q0 + 3 q1 = 1 and q2 + q3/3 + q4 + 5 q5/3 = 1.
class IdentSignalChannel {
  public:
    IdentSignalChannel(double q0, double q1, double q2, double q3, double q4, double q5);

    double q(int k) const { return q_[static_cast<std::size_t>(k)]; }
    const std::array<double, 6>& coeffs() const { return q_; }

  private:
    std::array<double, 6> q_;
};

// The six sector projectors on out (x) in, built from the double-ket
// expressions; ranks (1, 3, 3, 1, 3, 5), mutually orthogonal, summing to 1.
std::array<Mat, 6> projectors_jl();

// Normalized component maps D^0_00 ... D^2_11 evaluated on rho.
std::array<Mat, 6> component_maps(const Mat& rho);

// Full channel q0 D^0_00 + 3 q1 D^1_10 + q2 D^1_01 + q3/3 D^0_11
//            + q4 D^1_11 + 5 q5/3 D^2_11.
Mat apply_ident_channel(const IdentSignalChannel& c, const Mat& rho);

ChoiOperator build_choi_ident(const IdentSignalChannel& c);

// Closed-form output state for permutation-invariant input.
Mat output_state_ident(const IdentSignalChannel& c, const TwoQubitPauliState& s);

// Input must have lam_ij = 0 off the diagonal and lam_xx = lam_yy for the
// channel family to produce a product output.
bool decorrelable_family_check(const TwoQubitPauliState& s, double tol = 1e-10);

// Symmetric-subspace seed in the (eta, lambda) coordinates of
//   rho_sym = 1/4 [1 + eta (sz 1 + 1 sz) + (1+lambda)/2 (sx sx + sy sy)
//             - lambda sz sz],
// i.e. lam_xx = lam_yy = -(1+lambda)/2 and lam_zz = lambda.
TwoQubitPauliState symmetric_seed(double eta, double lambda);
Mat symmetric_seed_matrix(double eta, double lambda);

// Permutation-invariant seed with a singlet fraction:
// rho = p |Psi-><Psi-| + (1-p) rho_sym(eta, lambda).
class GeneralSeed {
  public:
    GeneralSeed(double p, double eta, double lambda);

    double p() const { return p_; }
    double eta() const { return eta_; }
    double lambda() const { return lambda_; }
    Mat realized() const;

  private:
    double p_, eta_, lambda_;
};

// q2 = (1 - eta_tilde^2)/4 and the closed forms for q3, q4, q5; the unused
// (0,0)/(1,0) sectors default to q0 = 1, q1 = 0.
IdentSignalChannel solve_q_symmetric(double eta, double lambda, double eta_tilde);
std::array<double, 4> solve_q_symmetric_unchecked(double eta, double lambda, double eta_tilde);

// Four-branch optimum over the symmetric family; boundaries
// lambda_1 = (2 sqrt(4-3 eta^2) - 5)/3 and lambda_2 = (7 - 2 sqrt(16-3 eta^2))/3.
double optimal_eta_symmetric(double eta, double lambda);

// Feasibility-bisection oracle over solve_q_symmetric.
double oracle_optimal_symmetric(double eta, double lambda);

double optimal_eta_general(const GeneralSeed& seed);
// Raw-parameter form: evaluates the closed forms without requiring the
// realization to be a physical state.
double optimal_eta_general(double p, double eta, double lambda);

// Oracle for the singlet-fraction case: per eta_tilde, solve the four
// decorrelation equations for (q2..q5) as an affine function of the free
// sector weight q0 and test the nonnegativity window on q0 in [0, 1].
double oracle_optimal_general(const GeneralSeed& seed);
double oracle_optimal_general(double p, double eta, double lambda);

// Coefficients of the solved general-seed channel at a given eta_tilde
// (smallest feasible q0 chosen); throws Infeasible if the window is empty.
IdentSignalChannel solve_q_general(const GeneralSeed& seed, double eta_tilde);
IdentSignalChannel solve_q_general(double p, double eta, double lambda, double eta_tilde);

// General-N trace-preserving residuals, one per total-spin sector l.
// Keys are doubled indices (2j, 2l, 2J); missing entries count as zero.
using IdentGeneralTable = std::map<std::tuple<int, int, int>, double>;
std::vector<double> trace_constraint_ident_general(int n_parties, const IdentGeneralTable& s);

double kappa_multiplicity(int n_parties, int two_j);

}  // namespace qd
