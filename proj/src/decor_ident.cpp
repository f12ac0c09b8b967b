#include "qd/decor_ident.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qd {

namespace {

constexpr double kCoeffTol = 1e-12;

double safe_sqrt(double x) {
    return std::sqrt(std::max(x, 0.0));
}

const Mat& sy_sy() {
    static const Mat s = kron(sigma_y(), sigma_y());
    return s;
}

Mat bar_state(const Mat& rho) {
    return sy_sy() * rho.transpose() * sy_sy();
}

// sigma_0, sigma_x, sigma_z with signs s(0) = 1, s(x) = s(z) = -1.
const std::array<const Mat*, 3>& sym_paulis() {
    static const std::array<const Mat*, 3> p = {&identity2(), &sigma_x(), &sigma_z()};
    return p;
}

double sym_sign(int i) {
    return i == 0 ? 1.0 : -1.0;
}

std::array<Mat, 6> make_projectors() {
    const Mat& p0 = projector_singlet();
    const Mat& p1 = projector_triplet();
    std::array<Mat, 6> out;
    out[0] = kron(p0, p0);
    out[1] = kron(p1, p0);
    out[2] = kron(p0, p1);

    std::array<Vec, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = vec(*sym_paulis()[i]);

    Vec w = Vec::Zero(16);
    for (int i = 0; i < 3; ++i) w += sym_sign(i) * kron(Mat(v[i]), Mat(v[i])).col(0);
    out[3] = (w * w.adjoint()) / 12.0;

    Mat anti = Mat::Zero(16, 16);
    Mat symm = Mat::Zero(16, 16);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Vec vij = kron(Mat(v[i]), Mat(v[j])).col(0);
            Vec vji = kron(Mat(v[j]), Mat(v[i])).col(0);
            Vec minus = vij - vji;
            Vec plus = vij + vji;
            anti += minus * minus.adjoint();
            symm += plus * plus.adjoint();
        }
    }
    out[4] = anti / 16.0;
    out[5] = symm / 16.0 - out[3];
    return out;
}

struct SeedCoordinates {
    double eta_local;   // marginal Bloch length of the seed
    double lxx, lzz;    // lam entries of the realized state
    double big_lambda;  // lam_xx + lam_yy + lam_zz
    double singlet_weight;
};

SeedCoordinates general_coords(double p, double eta, double lam) {
    SeedCoordinates c;
    c.eta_local = (1.0 - p) * eta;
    c.lxx = p - (1.0 - p) * (1.0 + lam) / 2.0;
    c.lzz = p + (1.0 - p) * lam;
    c.big_lambda = 4.0 * p - 1.0;
    c.singlet_weight = p;
    return c;
}

// Decorrelation equations for the singlet-fraction seed: given eta_tilde
// and the free weight q0, the vector (q2, q3, q4, q5) solves a 4x4 linear
// system (target-Bloch, correlation-difference, cross-term cancellation,
// trace preservation).
Eigen::Vector4d solve_general_linear(const SeedCoordinates& c, double p, double eta_tilde,
                                     double q0) {
    Eigen::Matrix4d m;
    Eigen::Vector4d rhs;
    const double denom = c.lzz - c.lxx;
    if (c.eta_local == 0.0 || denom == 0.0)
        throw SingularParameter("solve_general_linear: degenerate seed");
    // row 0: q3/3 + q4/2 - 5 q5/6 = eta_tilde / eta_local
    m.row(0) << 0.0, 1.0 / 3.0, 0.5, -5.0 / 6.0;
    rhs(0) = eta_tilde / c.eta_local;
    // row 1: q3/3 - q4/2 + q5/6 = -eta_tilde^2 / (lzz - lxx)
    m.row(1) << 0.0, 1.0 / 3.0, -0.5, 1.0 / 6.0;
    rhs(1) = -eta_tilde * eta_tilde / denom;
    // row 2: cancellation of the xx correlation in the output
    const double f = c.lxx - p;
    m.row(2) << (1.0 - p), f / 3.0, -f / 2.0 - (1.0 - p) / 2.0, f / 6.0 - (1.0 - p) / 2.0;
    rhs(2) = p * (1.0 - 4.0 * q0) / 3.0;
    // row 3: trace constraint on the l = 1 sector
    m.row(3) << 1.0, 1.0 / 3.0, 1.0, 5.0 / 3.0;
    rhs(3) = 1.0;
    return m.colPivHouseholderQr().solve(rhs);
}

// Feasible iff some q0 in [0, 1] keeps all solved coefficients nonnegative;
// the solution is affine in q0, so the admissible q0 window is an interval.
struct GeneralFeasibility {
    bool feasible = false;
    double q0 = 0.0;
    Eigen::Vector4d coeffs = Eigen::Vector4d::Zero();
};

GeneralFeasibility feasibility_general(double p, double eta, double lambda, double eta_tilde) {
    const SeedCoordinates c = general_coords(p, eta, lambda);
    GeneralFeasibility out;
    Eigen::Vector4d at0 = solve_general_linear(c, p, eta_tilde, 0.0);
    Eigen::Vector4d at1 = solve_general_linear(c, p, eta_tilde, 1.0);
    if (!at0.allFinite() || !at1.allFinite()) return out;
    Eigen::Vector4d slope = at1 - at0;
    // Admissible q0 window for a given coefficient floor.
    auto window = [&](double floor, double& lo, double& hi) {
        lo = 0.0;
        hi = 1.0;
        for (int i = 0; i < 4; ++i) {
            const double a = at0(i), b = slope(i);
            if (std::abs(b) < 1e-15) {
                if (a < floor) hi = lo - 1.0;
                continue;
            }
            const double root = (floor - a) / b;
            if (b > 0.0)
                lo = std::max(lo, root);
            else
                hi = std::min(hi, root);
        }
        return lo <= hi;
    };
    double lo, hi;
    if (!window(-kCoeffTol, lo, hi)) return out;
    out.feasible = true;
    // For the returned coefficients prefer the interior of the strictly
    // nonnegative window; the tolerance window only decides feasibility.
    double lo0, hi0;
    if (window(0.0, lo0, hi0)) {
        lo = lo0;
        hi = hi0;
    }
    out.q0 = 0.5 * (lo + hi);
    out.coeffs = at0 + out.q0 * slope;
    return out;
}

// The linear solve leaves noise on the scale of 1e-12 on boundary
// coefficients; clamp at zero and rebalance the excess inside the same
// constraint row so the channel constructor sees exact sums.
IdentSignalChannel make_ident_channel(double q0, const Eigen::Vector4d& raw) {
    const double weights[4] = {1.0, 1.0 / 3.0, 1.0, 5.0 / 3.0};
    Eigen::Vector4d q = raw.cwiseMax(0.0);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += weights[i] * q(i);
    const double excess = sum - 1.0;
    if (std::abs(excess) > 1e-9)
        throw Infeasible("make_ident_channel: solved coefficients off the constraint surface");
    int biggest = 0;
    for (int i = 1; i < 4; ++i)
        if (q(i) > q(biggest)) biggest = i;
    q(biggest) -= excess / weights[biggest];
    const double q0c = std::min(std::max(q0, 0.0), 1.0);
    return IdentSignalChannel(q0c, (1.0 - q0c) / 3.0, q(0), q(1), q(2), q(3));
}

double bisect_last_feasible(const std::function<bool(double)>& feasible) {
    const int scan = 512;
    int last = 0;
    for (int k = scan; k >= 1; --k) {
        if (feasible(static_cast<double>(k) / scan)) {
            last = k;
            break;
        }
    }
    if (last == scan) return 1.0;
    double lo = static_cast<double>(last) / scan;
    double hi = static_cast<double>(last + 1) / scan;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;  // feasible end of the final bracket
}

}  // namespace

IdentSignalChannel::IdentSignalChannel(double q0, double q1, double q2, double q3, double q4,
                                       double q5)
    : q_{q0, q1, q2, q3, q4, q5} {
    for (double v : q_)
        if (v < -kCoeffTol)
            throw NegativeCoefficient("IdentSignalChannel: coefficients must be nonnegative");
    if (std::abs(q0 + 3.0 * q1 - 1.0) > 1e-12)
        throw InvalidState("IdentSignalChannel: q0 + 3 q1 = 1 violated");
    if (std::abs(q2 + q3 / 3.0 + q4 + 5.0 * q5 / 3.0 - 1.0) > 1e-12)
        throw InvalidState("IdentSignalChannel: q2 + q3/3 + q4 + 5 q5/3 = 1 violated");
}

std::array<Mat, 6> projectors_jl() {
    static const std::array<Mat, 6> p = make_projectors();
    return p;
}

std::array<Mat, 6> component_maps(const Mat& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DimensionMismatch("component_maps: 4x4 input required");
    const Mat& p0 = projector_singlet();
    const Mat& p1 = projector_triplet();
    const double t0 = (p0 * rho).trace().real();
    const double t1 = (p1 * rho).trace().real();
    const Mat bar = bar_state(rho);
    const Mat proj = p1 * rho * p1;
    const Mat proj_bar = p1 * bar * p1;
    std::array<Mat, 6> d;
    d[0] = p0 * t0;
    d[1] = p1 * (t0 / 3.0);
    d[2] = p0 * t1;
    d[3] = proj;
    d[4] = 0.5 * (p1 * t1 - proj_bar);
    d[5] = 0.3 * (p1 * t1 + proj_bar) - 0.2 * proj;
    return d;
}

Mat apply_ident_channel(const IdentSignalChannel& c, const Mat& rho) {
    auto d = component_maps(rho);
    return c.q(0) * d[0] + 3.0 * c.q(1) * d[1] + c.q(2) * d[2] + (c.q(3) / 3.0) * d[3] +
           c.q(4) * d[4] + (5.0 * c.q(5) / 3.0) * d[5];
}

ChoiOperator build_choi_ident(const IdentSignalChannel& c) {
    auto p = projectors_jl();
    Mat acc = Mat::Zero(16, 16);
    for (int k = 0; k < 6; ++k) acc += c.q(k) * p[static_cast<std::size_t>(k)];
    ChoiOperator flipped;
    flipped.dim_in = 4;
    flipped.dim_out = 4;
    flipped.matrix = acc;
    return conjugate_flip(flipped);
}

Mat output_state_ident(const IdentSignalChannel& c, const TwoQubitPauliState& s) {
    const Mat rho = pauli_form_matrix(s.eta(), s.lam());
    const double lam_sum = s.big_lambda();
    const double c_rho = c.q(3) / 3.0 - c.q(4) / 2.0 + c.q(5) / 6.0;
    const Mat zz_pair = kron(sigma_z(), identity2()) + kron(identity2(), sigma_z());
    Mat out = c_rho * rho;
    out += (c.q(4) - c.q(5)) * (s.eta() / 4.0) * zz_pair;
    out += 0.25 * (c.q(0) - c_rho) * (1.0 + lam_sum) * projector_singlet();
    out += 0.25 * 0.5 * (c.q(4) + c.q(5)) * (3.0 - lam_sum) * projector_triplet();
    out += 0.25 * c.q(2) * (3.0 - lam_sum) * projector_singlet();
    out += 0.25 * c.q(1) * (1.0 + lam_sum) * projector_triplet();
    return out;
}

bool decorrelable_family_check(const TwoQubitPauliState& s, double tol) {
    const Eigen::Matrix3d& l = s.lam();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && std::abs(l(i, j)) > tol) return false;
    return std::abs(l(0, 0) - l(1, 1)) <= tol;
}

Mat symmetric_seed_matrix(double eta, double lambda) {
    Eigen::Matrix3d lam = Eigen::Matrix3d::Zero();
    lam(0, 0) = lam(1, 1) = -(1.0 + lambda) / 2.0;
    lam(2, 2) = lambda;
    return pauli_form_matrix(eta, lam);
}

TwoQubitPauliState symmetric_seed(double eta, double lambda) {
    Eigen::Matrix3d lam = Eigen::Matrix3d::Zero();
    lam(0, 0) = lam(1, 1) = -(1.0 + lambda) / 2.0;
    lam(2, 2) = lambda;
    return TwoQubitPauliState(eta, lam);
}

GeneralSeed::GeneralSeed(double p, double eta, double lambda)
    : p_(p), eta_(eta), lambda_(lambda) {
    if (p < 0.0 || p > 1.0) throw InvalidState("GeneralSeed: p must lie in [0, 1]");
    if (min_eigenvalue(realized()) < -kPsdTol)
        throw NotPositive("GeneralSeed: realization not positive semidefinite");
}

Mat GeneralSeed::realized() const {
    return p_ * projector_singlet() + (1.0 - p_) * symmetric_seed_matrix(eta_, lambda_);
}

std::array<double, 4> solve_q_symmetric_unchecked(double eta, double lambda, double eta_tilde) {
    const double t = eta_tilde;
    const double alpha = 1.0 + 3.0 * lambda;
    const double q2 = (1.0 - t * t) / 4.0;
    const double q3 = (3.0 + t * (t - 40.0 * t / alpha + 12.0 / eta)) / 12.0;
    const double q4 = (3.0 + t * (t + 20.0 * t / alpha + 6.0 / eta)) / 12.0;
    const double q5 = (3.0 + t * (t - 4.0 * t / alpha - 6.0 / eta)) / 12.0;
    return {q2, q3, q4, q5};
}

IdentSignalChannel solve_q_symmetric(double eta, double lambda, double eta_tilde) {
    if (eta == 0.0 || lambda == -1.0 / 3.0)
        throw SingularParameter("solve_q_symmetric: eta = 0 or lambda = -1/3");
    auto q = solve_q_symmetric_unchecked(eta, lambda, eta_tilde);
    for (double v : q)
        if (v < -kCoeffTol)
            throw Infeasible("solve_q_symmetric: negative coefficient at requested eta_tilde");
    return IdentSignalChannel(1.0, 0.0, q[0], q[1], q[2], q[3]);
}

double optimal_eta_symmetric(double eta, double lambda) {
    const double a = std::abs(eta);
    if (a > 1.0 || lambda < -1.0 || lambda > 1.0)
        throw InvalidState("optimal_eta_symmetric: |eta| <= 1 and lambda in [-1, 1] required");
    if (eta == 0.0 || lambda == -1.0 / 3.0) return 0.0;
    const double a2 = a * a;
    const double alpha = 1.0 + 3.0 * lambda;
    const double lambda1 = (2.0 * std::sqrt(4.0 - 3.0 * a2) - 5.0) / 3.0;
    const double lambda2 = (7.0 - 2.0 * std::sqrt(16.0 - 3.0 * a2)) / 3.0;
    if (lambda <= lambda1)
        return (-alpha - safe_sqrt(alpha * alpha + a2 * alpha * (1.0 - lambda))) /
               (a * (1.0 - lambda));
    if (lambda <= -1.0 / 3.0)
        return (-alpha + safe_sqrt(alpha * (alpha - a2 * (7.0 + lambda)))) /
               (a * (7.0 + lambda));
    if (lambda <= lambda2)
        return (2.0 * alpha + safe_sqrt(alpha * (a2 * (13.0 - lambda) + 4.0 * alpha))) /
               (a * (13.0 - lambda));
    // Branch 4 in rationalized form; the printed formula divides by (1 - lambda),
    // which vanishes at lambda = 1.
    const double disc = safe_sqrt(alpha * alpha + a2 * alpha * (1.0 - lambda));
    return a * alpha / (disc + alpha);
}

double oracle_optimal_symmetric(double eta, double lambda) {
    const double a = std::abs(eta);
    if (a > 1.0 || lambda < -1.0 || lambda > 1.0)
        throw InvalidState("oracle_optimal_symmetric: |eta| <= 1 and lambda in [-1, 1] required");
    if (eta == 0.0 || lambda == -1.0 / 3.0) return 0.0;
    auto feasible = [&](double t) {
        auto q = solve_q_symmetric_unchecked(a, lambda, t);
        return q[0] >= -kCoeffTol && q[1] >= -kCoeffTol && q[2] >= -kCoeffTol &&
               q[3] >= -kCoeffTol;
    };
    return bisect_last_feasible(feasible);
}

double optimal_eta_general(const GeneralSeed& seed) {
    return optimal_eta_general(seed.p(), seed.eta(), seed.lambda());
}

double optimal_eta_general(double p, double eta, double lambda) {
    if (p == 1.0 || eta == 0.0 || lambda == -1.0 / 3.0) return 0.0;
    const double eta_sym = optimal_eta_symmetric(eta, lambda);
    if (p == 0.0) return eta_sym;
    if (1.0 - eta_sym * eta_sym - 4.0 * p >= 0.0) return eta_sym;
    const double a2 = eta * eta;
    const double b = a2 * (1.0 - p);
    const double alpha = 1.0 + 3.0 * lambda;
    const double lp1 = -(1.0 + 2.0 * b) / 3.0;
    const double lp2 = -(1.0 - b) / 3.0;
    // The nested radicals are written as sqrt(alpha) * sqrt(alpha (...)); for
    // alpha < 0 the consistent complex branch flips the inner root's sign
    // (checked against the feasibility oracle on both sides of -1/3).
    const double inner_sign = alpha < 0.0 ? -1.0 : 1.0;
    double t2;
    if (lambda <= lp1 || lambda >= lp2) {
        const double s = inner_sign * safe_sqrt(alpha * (9.0 * alpha + 16.0 * b));
        t2 = alpha * (9.0 * alpha + 8.0 * b - 3.0 * s) / (8.0 * a2);
    } else if (lambda <= -1.0 / 3.0) {
        const double s = inner_sign * safe_sqrt(alpha * (9.0 * alpha - 80.0 * b));
        t2 = alpha * (9.0 * alpha - 40.0 * b + 3.0 * s) / (200.0 * a2);
    } else {
        const double s = inner_sign * safe_sqrt(alpha * (9.0 * alpha + 40.0 * b));
        t2 = alpha * (9.0 * alpha + 20.0 * b + 3.0 * s) / (200.0 * a2);
    }
    return safe_sqrt(t2);
}

double oracle_optimal_general(const GeneralSeed& seed) {
    return oracle_optimal_general(seed.p(), seed.eta(), seed.lambda());
}

double oracle_optimal_general(double p, double eta, double lambda) {
    if (p == 1.0 || eta == 0.0 || lambda == -1.0 / 3.0) return 0.0;
    if (p == 0.0) return oracle_optimal_symmetric(eta, lambda);
    auto feasible = [&](double t) { return feasibility_general(p, eta, lambda, t).feasible; };
    return bisect_last_feasible(feasible);
}

IdentSignalChannel solve_q_general(const GeneralSeed& seed, double eta_tilde) {
    return solve_q_general(seed.p(), seed.eta(), seed.lambda(), eta_tilde);
}

IdentSignalChannel solve_q_general(double p, double eta, double lambda, double eta_tilde) {
    if (p == 0.0) return solve_q_symmetric(eta, lambda, eta_tilde);
    GeneralFeasibility f = feasibility_general(p, eta, lambda, eta_tilde);
    if (!f.feasible)
        throw Infeasible("solve_q_general: no admissible q0 window at requested eta_tilde");
    return make_ident_channel(f.q0, f.coeffs);
}

double kappa_multiplicity(int n_parties, int two_j) {
    const int half = (n_parties + two_j) / 2;
    double binom = 1.0;
    for (int i = 1; i <= half; ++i)
        binom *= static_cast<double>(n_parties - half + i) / i;
    return (two_j + 1.0) / (0.5 * n_parties + 0.5 * two_j + 1.0) * binom;
}

std::vector<double> trace_constraint_ident_general(int n_parties, const IdentGeneralTable& s) {
    if (n_parties < 1) throw DimensionMismatch("trace_constraint_ident_general: N >= 1 required");
    const int two_s = n_parties % 2;
    std::vector<double> residuals;
    for (int two_l = two_s; two_l <= n_parties; two_l += 2) {
        double sum = 0.0;
        for (int two_j = two_s; two_j <= n_parties; two_j += 2) {
            const double kappa = kappa_multiplicity(n_parties, two_j);
            for (int two_cap = std::abs(two_j - two_l); two_cap <= two_j + two_l; two_cap += 2) {
                auto it = s.find({two_j, two_l, two_cap});
                if (it == s.end()) continue;
                sum += (two_cap + 1.0) / (two_l + 1.0) * kappa * it->second;
            }
        }
        residuals.push_back(sum - 1.0);
    }
    return residuals;
}

}  // namespace qd
