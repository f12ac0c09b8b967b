#include "qd/decor_diff.hpp"

#include <algorithm>
#include <cmath>

namespace qd {

namespace {

constexpr double kCoeffTol = 1e-12;

double safe_sqrt(double x) {
    return std::sqrt(std::max(x, 0.0));
}

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= static_cast<double>(n - k + i) / i;
    return v;
}

bool feasible_diff(double eta, double lambda, double t) {
    auto q = solve_q_diff_unchecked(eta, lambda, t);
    return q[0] >= -kCoeffTol && q[1] >= -kCoeffTol && q[2] >= -kCoeffTol;
}

}  // namespace

DiffSignalChannel::DiffSignalChannel(double q0, double q1, double q2)
    : q0_(q0), q1_(q1), q2_(q2) {
    if (q0 < -kCoeffTol || q1 < -kCoeffTol || q2 < -kCoeffTol)
        throw NegativeCoefficient("DiffSignalChannel: coefficients must be nonnegative");
    if (std::abs(q0 + 6.0 * q1 + 9.0 * q2 - 4.0) > 1e-12)
        throw InvalidState("DiffSignalChannel: q0 + 6 q1 + 9 q2 = 4 violated");
}

ChoiOperator build_choi_diff(const DiffSignalChannel& c) {
    const Mat& p0 = projector_singlet();
    const Mat& p1 = projector_triplet();
    Mat interleaved = c.q0() * kron(p0, p0) +
                      c.q1() * (kron(p0, p1) + kron(p1, p0)) +
                      c.q2() * kron(p1, p1);
    ChoiOperator flipped;
    flipped.dim_in = 4;
    flipped.dim_out = 4;
    flipped.matrix = deinterleave_2q(interleaved);
    return conjugate_flip(flipped);
}

DiffComponents apply_components(const Mat& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DimensionMismatch("apply_components: 4x4 input required");
    Mat rho_a = partial_trace_raw(rho, Subsystem::A);
    Mat rho_b = partial_trace_raw(rho, Subsystem::B);
    Mat a1 = kron(rho_a, identity2());
    Mat b1 = kron(identity2(), rho_b);
    DiffComponents d;
    d.d0 = rho;
    d.d1 = (a1 + b1 - rho) / 3.0;
    d.d2 = (4.0 * Mat::Identity(4, 4) - 2.0 * a1 - 2.0 * b1 + rho) / 9.0;
    return d;
}

Mat apply_diff_channel(const DiffSignalChannel& c, const Mat& rho) {
    DiffComponents d = apply_components(rho);
    return (c.q0() / 4.0) * d.d0 + (1.5 * c.q1()) * d.d1 + (2.25 * c.q2()) * d.d2;
}

std::array<double, 3> solve_q_diff_unchecked(double eta, double lambda, double eta_tilde) {
    const double r = eta_tilde / eta;
    const double s = eta_tilde * eta_tilde / lambda;
    return {0.25 * (1.0 + 6.0 * r - 9.0 * s),
            0.25 * (1.0 + 2.0 * r + 3.0 * s),
            0.25 * (1.0 - 2.0 * r - s)};
}

DiffSignalChannel solve_q_diff(double eta, double lambda, double eta_tilde) {
    if (eta == 0.0 || lambda == 0.0)
        throw SingularParameter("solve_q_diff: eta and lambda must be nonzero");
    auto q = solve_q_diff_unchecked(eta, lambda, eta_tilde);
    if (q[0] < -kCoeffTol || q[1] < -kCoeffTol || q[2] < -kCoeffTol)
        throw Infeasible("solve_q_diff: negative coefficient at requested eta_tilde");
    return DiffSignalChannel(q[0], q[1], q[2]);
}

double optimal_eta_diff(double eta, double lambda) {
    const double a = std::abs(eta);
    if (a > 1.0 || lambda < -1.0 || lambda > 1.0)
        throw InvalidState("optimal_eta_diff: |eta| <= 1 and lambda in [-1, 1] required");
    if (eta == 0.0 || lambda == 0.0) return 0.0;
    if (lambda <= -a * a)
        return (-lambda - safe_sqrt(a * a * lambda + lambda * lambda)) / a;
    if (lambda <= 0.0)
        return (-lambda + safe_sqrt(lambda * lambda - 3.0 * a * a * lambda)) / (3.0 * a);
    if (lambda <= a * a / 3.0)
        return (lambda + safe_sqrt(a * a * lambda + lambda * lambda)) / (3.0 * a);
    return (-lambda + safe_sqrt(a * a * lambda + lambda * lambda)) / a;
}

double oracle_optimal_diff(double eta, double lambda) {
    const double a = std::abs(eta);
    if (a > 1.0 || lambda < -1.0 || lambda > 1.0)
        throw InvalidState("oracle_optimal_diff: |eta| <= 1 and lambda in [-1, 1] required");
    if (eta == 0.0 || lambda == 0.0) return 0.0;

    // Coarse scan for the last feasible grid point (the coefficient cone is
    // quadratic in eta_tilde, so the feasible set need not touch t = 1),
    // then bisection on the enclosing bracket.
    const int scan = 512;
    int last = 0;
    for (int k = scan; k >= 1; --k) {
        if (feasible_diff(a, lambda, static_cast<double>(k) / scan)) {
            last = k;
            break;
        }
    }
    if (last == scan) return 1.0;
    double lo = static_cast<double>(last) / scan;
    double hi = static_cast<double>(last + 1) / scan;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (feasible_diff(a, lambda, mid) ? lo : hi) = mid;
    }
    return lo;  // feasible end of the final bracket
}

double trace_constraint_diff_general(int n_parties, const std::vector<double>& q) {
    if (n_parties < 1 || q.size() != static_cast<std::size_t>(n_parties) + 1)
        throw DimensionMismatch("trace_constraint_diff_general: need N+1 coefficients");
    double sum = 0.0;
    const double scale = std::pow(2.0, -n_parties);
    for (int n = 0; n <= n_parties; ++n)
        sum += std::pow(3.0, n) * scale * binom(n_parties, n) * q[n];
    return std::abs(sum - 1.0);
}

}  // namespace qd
