#include "doctest.h"

#include <cmath>

#include "support/testutil.hpp"

using namespace qd;
using qdtest::closeness;

namespace {

Mat product_target(double eta_tilde) {
    Mat q = 0.5 * (Mat::Identity(2, 2) + eta_tilde * sigma_z());
    return kron(q, q);
}

Mat zz_seed(double eta, double lambda) {
    return pauli_form_matrix(eta, Eigen::Vector3d(0, 0, lambda).asDiagonal());
}

}  // namespace

TEST_SUITE_BEGIN("decor_diff");

TEST_CASE("coefficient validation") {
    CHECK_THROWS_AS(DiffSignalChannel(-0.1, 0.5, 4.1 / 9.0), NegativeCoefficient);
    CHECK_THROWS_AS(DiffSignalChannel(1.0, 1.0, 1.0), InvalidState);
    CHECK_NOTHROW(DiffSignalChannel(4.0, 0.0, 0.0));
    CHECK_NOTHROW(DiffSignalChannel(0.25, 0.25, 0.25));
}

TEST_CASE("build_choi_diff legality") {
    for (auto c : {DiffSignalChannel(4, 0, 0), DiffSignalChannel(0.25, 0.25, 0.25),
                   DiffSignalChannel(1.0, 0.5, 0.0)}) {
        ChoiOperator r = build_choi_diff(c);
        CHECK(is_cp(r).min_eig >= -1e-10);
        CHECK(is_tp(r).residual <= 1e-10);
        CHECK(covariance_residual(r, 25, SignalMode::Different) <= 1e-10);
    }
}

TEST_CASE("component maps") {
    Mat prod = product_target(0.5);
    auto d = apply_components(prod);
    CHECK(d.d1.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hermiticity_deviation(d.d1) <= 1e-12);
    CHECK(closeness(apply_components(0.25 * Mat::Identity(4, 4)).d2,
                    0.25 * Mat::Identity(4, 4)) <= 1e-14);
}

TEST_CASE("channel decomposition equals the Choi action") {
    Rng rng(30);
    for (int k = 0; k < 50; ++k) {
        DiffSignalChannel c = qdtest::random_diff_channel(rng);
        ChoiOperator r = build_choi_diff(c);
        Mat rho = qdtest::random_density(rng, 4);
        CHECK(closeness(apply_diff_channel(c, rho), choi_apply(r, rho)) <= 1e-10);
    }
}

TEST_CASE("solve_q_diff closed forms") {
    // eta_tilde = 0 always gives the completely mixing coefficients.
    DiffSignalChannel mixing = solve_q_diff(0.7, -0.2, 0.0);
    CHECK(mixing.q0() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(mixing.q1() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(mixing.q2() == doctest::Approx(0.25).epsilon(1e-12));

    // Product seed: full Bloch length survives, channel leaves the seed alone.
    const double eta = 0.6;
    DiffSignalChannel keep = solve_q_diff(eta, -eta * eta, eta);
    Mat seed = zz_seed(eta, -eta * eta);
    CHECK(closeness(choi_apply(build_choi_diff(keep), seed), seed) <= 1e-10);

    CHECK_THROWS_AS(solve_q_diff(0.0, 0.5, 0.1), SingularParameter);
    CHECK_THROWS_AS(solve_q_diff(0.5, 0.0, 0.1), SingularParameter);
    CHECK_THROWS_AS(solve_q_diff(0.6, 0.5, 0.99), Infeasible);
}

TEST_CASE("active constraint at the optimum") {
    const double eta = 0.6, lambda = 0.5;
    double best = optimal_eta_diff(eta, lambda);
    DiffSignalChannel c = solve_q_diff(eta, lambda, best);
    double smallest = std::min({c.q0(), c.q1(), c.q2()});
    CHECK(smallest <= 1e-9);
}

TEST_CASE("trace constraint holds identically") {
    Rng rng(32);
    for (int k = 0; k < 200; ++k) {
        double eta = rng.uniform(-1.0, 1.0);
        double lambda = rng.uniform(-1.0, 1.0);
        double t = rng.uniform(0.0, 1.0);
        if (eta == 0.0 || lambda == 0.0) continue;
        auto q = solve_q_diff_unchecked(eta, lambda, t);
        CHECK(std::abs(q[0] + 6.0 * q[1] + 9.0 * q[2] - 4.0) <= 1e-12);
    }
}

TEST_CASE("decorrelation: solved channel produces the product target") {
    Rng rng(34);
    int done = 0;
    while (done < 40) {
        double eta = rng.uniform(-0.95, 0.95);
        if (std::abs(eta) < 0.05) continue;
        double lambda = rng.uniform(-1.0, 1.0 - 2.0 * std::abs(eta));
        if (std::abs(lambda) < 1e-3) continue;
        double best = optimal_eta_diff(eta, lambda);
        if (best <= 1e-6) continue;
        double t = best * rng.uniform(0.1, 0.95) * (eta > 0 ? 1.0 : -1.0);
        DiffSignalChannel c = solve_q_diff(eta, lambda, t);
        Mat out = choi_apply(build_choi_diff(c), zz_seed(eta, lambda));
        CHECK(closeness(out, product_target(t)) <= 1e-10);
        ++done;
    }
}

TEST_CASE("optimal_eta_diff fixed points") {
    CHECK(optimal_eta_diff(0.6, -0.36) == doctest::Approx(0.6).epsilon(1e-12));
    // Branch 3/4 boundary at lambda = eta^2/3: both closed forms give |eta|/3.
    CHECK(optimal_eta_diff(0.6, 0.12) == doctest::Approx(0.2).epsilon(1e-12));
    const double just_below = optimal_eta_diff(0.6, 0.12 - 1e-10);
    const double just_above = optimal_eta_diff(0.6, 0.12 + 1e-10);
    CHECK(std::abs(just_below - just_above) <= 1e-9);
    CHECK(optimal_eta_diff(0.0, 0.4) == 0.0);
    CHECK(optimal_eta_diff(0.5, 0.0) == 0.0);
    CHECK_THROWS_AS(optimal_eta_diff(1.2, 0.0), InvalidState);
}

TEST_CASE("continuity across the parabola and at lambda -> 0") {
    for (double eta : {0.3, 0.7}) {
        double lo = optimal_eta_diff(eta, -eta * eta - 1e-10);
        double hi = optimal_eta_diff(eta, -eta * eta + 1e-10);
        CHECK(std::abs(lo - hi) <= 1e-4);  // sqrt-type kink at the boundary
        CHECK(optimal_eta_diff(eta, -eta * eta) == doctest::Approx(eta).epsilon(1e-12));
    }
    // The lambda -> 0 limit vanishes like sqrt(|lambda|/3): tiny at 1e-12,
    // but about 0.018 already at |lambda| = 1e-3.
    CHECK(optimal_eta_diff(0.6, 1e-12) <= 1e-4);
    CHECK(optimal_eta_diff(0.6, -1e-12) <= 1e-4);
    CHECK(optimal_eta_diff(0.6, -1e-3) == doctest::Approx(oracle_optimal_diff(0.6, -1e-3)).epsilon(1e-5));
    CHECK(optimal_eta_diff(0.6, -1e-3) > 0.01);
}

TEST_CASE("formula matches the feasibility oracle on a coarse grid") {
    for (int i = 1; i <= 12; ++i) {
        double eta = -0.96 + 1.92 * i / 12.0;
        if (std::abs(eta) < 0.02) continue;
        for (int j = 0; j <= 12; ++j) {
            double lambda = -1.0 + 2.0 * j / 12.0;
            if (std::abs(lambda) < 0.02) continue;
            double formula = optimal_eta_diff(eta, lambda);
            double oracle = oracle_optimal_diff(eta, lambda);
            CAPTURE(eta);
            CAPTURE(lambda);
            CHECK(std::abs(formula - oracle) <= 1e-6);
            CHECK(formula <= std::abs(eta) + 1e-9);  // Bloch vector only shrinks
        }
    }
}

TEST_CASE("oracle optimum validates end to end") {
    for (auto [eta, lambda] : {std::pair{0.6, 0.5}, {0.4, -0.7}, {0.8, -0.3}}) {
        double best = oracle_optimal_diff(eta, lambda);
        REQUIRE(best > 1e-3);
        double t = best - 1e-9;  // just inside the feasible set
        Mat out = choi_apply(build_choi_diff(solve_q_diff(eta, lambda, t)), zz_seed(eta, lambda));
        CHECK(is_product_raw(out, 1e-8).is_product);
        double len = bloch_vector(partial_trace_raw(out, Subsystem::A)).norm();
        CHECK(std::abs(len - best) <= 1e-8);
    }
}

TEST_CASE("oracle fixed points") {
    CHECK(oracle_optimal_diff(0.6, -0.36) == doctest::Approx(0.6).epsilon(1e-8));
    // (eta, lambda) = (2/3, -1/3) is a valid state on branch 2.
    const double eta = 2.0 / 3.0, lambda = -1.0 / 3.0;
    CHECK_NOTHROW(TwoQubitPauliState::diagonal(eta, 0, 0, lambda));
    double expect = (1.0 + std::sqrt(5.0)) / 6.0;
    CHECK(optimal_eta_diff(eta, lambda) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(oracle_optimal_diff(eta, lambda) == doctest::Approx(expect).epsilon(1e-7));
}

TEST_CASE("no decorrelation away from the zz family") {
    Rng rng(36);
    int seeds_checked = 0;
    while (seeds_checked < 20) {
        auto s = qdtest::random_pauli_state(rng);
        Eigen::Matrix3d lam = s.lam();
        // Any lam entry other than zz breaks the decorrelable family.
        double off_family = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!(i == 2 && j == 2)) off_family = std::max(off_family, std::abs(lam(i, j)));
        if (off_family < 0.05) continue;
        Mat rho = pauli_form_matrix(s.eta(), lam);
        for (int k = 0; k < 30; ++k) {
            Mat out = apply_diff_channel(qdtest::random_diff_channel(rng), rho);
            auto check = is_product_raw(out, 1e-8);
            if (check.is_product) {
                double len = bloch_vector(partial_trace_raw(out, Subsystem::A)).norm();
                CHECK(len <= 1e-6);
            }
        }
        ++seeds_checked;
    }
}

TEST_CASE("general-N trace constraint") {
    // N = 2 uses the same normalization as the two-qubit constraint.
    CHECK(trace_constraint_diff_general(2, {0.25, 0.25, 0.25}) <= 1e-12);
    CHECK(trace_constraint_diff_general(2, {4.0, 0.0, 0.0}) <= 1e-12);
    Rng rng(38);
    for (int k = 0; k < 10; ++k) {
        DiffSignalChannel c = qdtest::random_diff_channel(rng);
        CHECK(trace_constraint_diff_general(2, {c.q0(), c.q1(), c.q2()}) <= 1e-12);
    }
    // N = 1: (1/2) q0 + (3/2) q1 = 1.
    CHECK(trace_constraint_diff_general(1, {2.0, 0.0}) <= 1e-12);
    CHECK(trace_constraint_diff_general(1, {1.0, 1.0 / 3.0}) <= 1e-12);
    CHECK(trace_constraint_diff_general(1, {2.0, 2.0 / 3.0}) == doctest::Approx(1.0));
    CHECK(trace_constraint_diff_general(3, {0.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(trace_constraint_diff_general(2, {1.0, 1.0}), DimensionMismatch);
}

TEST_SUITE_END();
