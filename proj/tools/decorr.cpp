// Command-line front end: decorrelation surfaces as CSV, single solves,
// Gaussian examples, the no-cloning witness and the CV cloning ledger,
// all as deterministic JSON/CSV.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "qd/decor_diff.hpp"
#include "qd/decor_ident.hpp"
#include "qd/gaussian.hpp"
#include "qd/nocloning.hpp"
#include "qd/qubit.hpp"

using json = nlohmann::ordered_json;
using namespace qd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInfeasible = 4;

json matrix_to_json(const RMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

struct SurfaceOptions {
    std::string mode;
    int eta_steps = 0;
    int lambda_steps = 0;
    double p = 0.0;
    std::string out_path;
};

bool state_valid_for_mode(const std::string& mode, double eta, double lambda, double p) {
    try {
        if (mode == "diff") {
            TwoQubitPauliState::diagonal(eta, 0.0, 0.0, lambda);
        } else if (mode == "ident") {
            symmetric_seed(eta, lambda);
        } else {
            GeneralSeed(p, eta, lambda);
        }
        return true;
    } catch (const Error&) {
        return false;
    }
}

int run_surface(const SurfaceOptions& opt) {
    if (opt.eta_steps < 2 || opt.lambda_steps < 2) {
        std::cerr << "surface: eta-steps and lambda-steps must be >= 2\n";
        return kExitUsage;
    }
    std::ofstream out(opt.out_path);
    if (!out) {
        std::cerr << "surface: cannot open " << opt.out_path << "\n";
        return kExitIo;
    }
    out << "eta,lambda,eta_tilde,feasible\n";
    char buf[128];
    for (int i = 0; i < opt.eta_steps; ++i) {
        double eta = -1.0 + 2.0 * i / (opt.eta_steps - 1);
        for (int j = 0; j < opt.lambda_steps; ++j) {
            double lambda = -1.0 + 2.0 * j / (opt.lambda_steps - 1);
            bool valid = state_valid_for_mode(opt.mode, eta, lambda, opt.p);
            if (!valid) {
                std::snprintf(buf, sizeof(buf), "%.10g,%.10g,nan,0\n", eta, lambda);
                out << buf;
                continue;
            }
            double value = 0.0;
            if (opt.mode == "diff")
                value = optimal_eta_diff(eta, lambda);
            else if (opt.mode == "ident")
                value = optimal_eta_symmetric(eta, lambda);
            else
                value = opt.p == 0.0 ? optimal_eta_symmetric(eta, lambda)
                                     : optimal_eta_general(opt.p, eta, lambda);
            std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.12g,1\n", eta, lambda, value);
            out << buf;
        }
    }
    out.flush();
    if (!out.good()) {
        std::cerr << "surface: write failure on " << opt.out_path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

struct DecorrelateOptions {
    std::string mode;
    double eta = 0.0;
    double lambda = 0.0;
    double p = 0.0;
    bool apply = false;
    std::uint64_t seed = 42;
    double tol = 1e-8;
};

int run_decorrelate(const DecorrelateOptions& opt) {
    if (std::abs(opt.eta) > 1.0 || opt.lambda < -1.0 || opt.lambda > 1.0 || opt.p < 0.0 ||
        opt.p > 1.0) {
        std::cerr << "decorrelate: need |eta| <= 1, lambda in [-1,1], p in [0,1]\n";
        return kExitUsage;
    }

    const bool symmetric_path = opt.mode == "ident" || opt.p == 0.0;
    double eta_tilde = 0.0;
    json coefficients;
    std::optional<ChoiOperator> choi;
    SignalMode cov_mode = SignalMode::Different;

    if (opt.mode == "diff") {
        eta_tilde = optimal_eta_diff(opt.eta, opt.lambda);
        if (eta_tilde > 0.0) {
            double signed_t = opt.eta > 0 ? eta_tilde : -eta_tilde;
            DiffSignalChannel c = solve_q_diff(opt.eta, opt.lambda, signed_t);
            coefficients = {{"q0", c.q0()}, {"q1", c.q1()}, {"q2", c.q2()}};
            choi = build_choi_diff(c);
        }
    } else {
        cov_mode = SignalMode::Identical;
        eta_tilde = symmetric_path ? optimal_eta_symmetric(opt.eta, opt.lambda)
                                   : optimal_eta_general(opt.p, opt.eta, opt.lambda);
        if (eta_tilde > 0.0) {
            double signed_t = opt.eta > 0 ? eta_tilde : -eta_tilde;
            IdentSignalChannel c = symmetric_path
                                       ? solve_q_symmetric(opt.eta, opt.lambda, signed_t)
                                       : solve_q_general(opt.p, opt.eta, opt.lambda, signed_t);
            coefficients = {{"q0", c.q(0)}, {"q1", c.q(1)}, {"q2", c.q(2)},
                            {"q3", c.q(3)}, {"q4", c.q(4)}, {"q5", c.q(5)}};
            choi = build_choi_ident(c);
        }
    }

    json result;
    result["eta_tilde"] = eta_tilde > 0.0 ? json(opt.eta > 0 ? eta_tilde : -eta_tilde)
                                          : json(nullptr);
    result["coefficients"] = eta_tilde > 0.0 ? coefficients : json(nullptr);

    if (opt.apply && eta_tilde > 0.0) {
        Mat seed_state;
        if (opt.mode == "diff")
            seed_state = pauli_form_matrix(opt.eta,
                                           Eigen::Vector3d(0, 0, opt.lambda).asDiagonal());
        else if (symmetric_path)
            seed_state = symmetric_seed_matrix(opt.eta, opt.lambda);
        else
            seed_state = GeneralSeed(opt.p, opt.eta, opt.lambda).realized();
        if (min_eigenvalue(seed_state) < -1e-10) {
            std::cerr << "decorrelate: seed state is not positive semidefinite\n";
            return kExitUsage;
        }
        Mat out_state = choi_apply(*choi, seed_state);
        auto product = is_product_raw(out_state, opt.tol);
        BlochVector b = bloch_vector(partial_trace_raw(out_state, Subsystem::A));
        json verify;
        verify["tp_residual"] = is_tp(*choi).residual;
        verify["cp_min_eig"] = is_cp(*choi).min_eig;
        verify["covariance_residual"] = covariance_residual(*choi, 50, cov_mode, opt.seed);
        verify["product_residual"] = product.residual;
        verify["output_bloch"] = b.norm();
        result["verify"] = verify;
        std::cout << result.dump(2) << "\n";
        return product.residual <= opt.tol ? kExitOk : kExitInfeasible;
    }

    std::cout << result.dump(2) << "\n";
    return eta_tilde > 0.0 ? kExitOk : kExitInfeasible;
}

int run_gaussian(const std::string& kind, double lambda, double delta2, const std::string& file,
                 double eps) {
    if (eps <= 0.0) {
        std::cerr << "gaussian: eps must be > 0\n";
        return kExitUsage;
    }
    TwoModeGaussian state = TwoModeGaussian::from(RMat::Identity(4, 4));
    if (kind == "twin-beam") {
        state = twin_beam(lambda);
    } else if (kind == "coherent") {
        state = correlated_coherent(delta2);
    } else {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "gaussian custom: cannot open " << file << "\n";
            return kExitIo;
        }
        RMat m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!(in >> m(i, j))) {
                    std::cerr << "gaussian custom: expected 16 whitespace-separated reals\n";
                    return kExitUsage;
                }
        if (max_abs_real(RMat(m - m.transpose())) > 1e-9) {
            std::cerr << "gaussian custom: matrix not symmetric within 1e-9\n";
            return kExitUsage;
        }
        m = 0.5 * (m + m.transpose());
        state = TwoModeGaussian::from(m);
    }

    auto [w, z] = default_wz(state, eps);
    GaussianNoiseMap map = decorrelator_for(state, w, z);
    TwoModeGaussian out = apply_noise(state, map);

    json result;
    result["M_in"] = matrix_to_json(state.matrix());
    result["Ginv"] = matrix_to_json(map.ginv());
    result["M_out"] = matrix_to_json(out.matrix());
    result["nbar_per_mode"] = json::array({thermal_photons(out.matrix()(0, 0)),
                                           thermal_photons(out.matrix()(2, 2))});
    result["C_residual"] = max_abs_real(out.block_c());
    std::cout << result.dump(2) << "\n";
    return kExitOk;
}

std::optional<ChoiOperator> load_choi_file(const std::string& path, bool& io_error) {
    io_error = false;
    std::ifstream in(path);
    if (!in) {
        io_error = true;
        std::cerr << "choi file: cannot open " << path << "\n";
        return std::nullopt;
    }
    json j;
    try {
        in >> j;
        ChoiOperator r;
        r.dim_in = j.at("dim_in").get<int>();
        r.dim_out = j.at("dim_out").get<int>();
        const auto& rows = j.at("matrix");
        const int dim = r.dim_in * r.dim_out;
        if (static_cast<int>(rows.size()) != dim) throw Error("bad row count");
        r.matrix = Mat(dim, dim);
        for (int i = 0; i < dim; ++i) {
            if (static_cast<int>(rows[i].size()) != dim) throw Error("bad column count");
            for (int k = 0; k < dim; ++k)
                r.matrix(i, k) = cdouble(rows[i][k][0].get<double>(), rows[i][k][1].get<double>());
        }
        return r;
    } catch (const std::exception& e) {
        std::cerr << "choi file: " << e.what() << "\n";
        return std::nullopt;
    }
}

int run_nocloning(int n, int m, double p, const std::string& choi_file) {
    ChoiOperator channel;
    if (choi_file.empty()) {
        if (n != 1 || m != 2) {
            std::cerr << "nocloning: the built-in universal cloner is 1 -> 2\n";
            return kExitUsage;
        }
        channel = universal_cloner_choi();
    } else {
        bool io_error = false;
        auto loaded = load_choi_file(choi_file, io_error);
        if (!loaded) return io_error ? kExitIo : kExitUsage;
        channel = *loaded;
        if (channel.dim_in != (1 << n) || channel.dim_out != (1 << m)) {
            std::cerr << "nocloning: Choi dims do not match 2^N -> 2^M\n";
            return kExitUsage;
        }
        if (!is_cp(channel).is_cp) {
            std::cerr << "nocloning: Choi operator is not completely positive\n";
            return kExitUsage;
        }
    }
    PhaseOrbitSpec spec(p, n, m);
    bool renormalize = !is_tp(channel).is_tp;
    auto rep = contradiction_report(spec, channel, renormalize);

    json result;
    result["degree_out"] = rep.degree_out;
    result["degree_product"] = rep.degree_product;
    json informative = json::array();
    for (bool b : rep.marginal_informative) informative.push_back(b);
    result["marginal_informative"] = informative;
    result["decorrelation_gap"] = rep.decorrelation_gap;
    result["renormalized"] = renormalize;
    std::cout << result.dump(2) << "\n";
    return kExitOk;
}

int run_cvclone(int n, int m, double noise, bool decorrelated) {
    if (m <= n || n < 1) {
        std::cerr << "cv-clone: M > N >= 1 required\n";
        return kExitUsage;
    }
    std::vector<double> noises(static_cast<std::size_t>(n), noise);
    CloneNoiseLedger ledger =
        decorrelated ? decorrelated_clone_pipeline(n, m, noises) : clone_pipeline(n, m, noises);
    json stages = json::array();
    for (const auto& s : ledger.stages)
        stages.push_back({{"stage", s.name}, {"amplitude", s.amplitude}, {"noise", s.noise}});
    json result;
    result["N"] = ledger.n_in;
    result["M"] = ledger.m_out;
    result["stages"] = stages;
    result["clone_amplitude"] = ledger.clone_amplitude;
    result["clone_noise"] = ledger.clone_noise;
    if (decorrelated) result["cross_correlation"] = ledger.cross_correlation;
    std::cout << result.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-state decorrelation toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    double tol = 1e-8;
    app.add_option("--seed", seed, "RNG seed for sampled verifications");
    app.add_option("--tol", tol, "product-residual tolerance");

    SurfaceOptions surf;
    auto* surface = app.add_subcommand("surface", "maximal eta_tilde over an (eta, lambda) grid");
    surface->add_option("--mode", surf.mode, "diff | ident | ident-general")
        ->required()
        ->check(CLI::IsMember({"diff", "ident", "ident-general"}));
    surface->add_option("--eta-steps", surf.eta_steps)->required();
    surface->add_option("--lambda-steps", surf.lambda_steps)->required();
    surface->add_option("--p", surf.p, "singlet fraction (ident-general)");
    surface->add_option("--out", surf.out_path)->required();

    DecorrelateOptions dec;
    auto* decorrelate = app.add_subcommand("decorrelate", "solve one decorrelation instance");
    decorrelate->add_option("--mode", dec.mode)
        ->required()
        ->check(CLI::IsMember({"diff", "ident", "ident-general"}));
    decorrelate->add_option("--eta", dec.eta)->required();
    decorrelate->add_option("--lambda", dec.lambda)->required();
    decorrelate->add_option("--p", dec.p);
    decorrelate->add_flag("--apply", dec.apply, "build the Choi operator and verify end to end");

    auto* gaussian = app.add_subcommand("gaussian", "continuous-variable decorrelation");
    gaussian->require_subcommand(1);
    double g_lambda = 0.5, g_delta2 = 1.0, g_eps = 0.1;
    std::string g_file;
    auto* twin = gaussian->add_subcommand("twin-beam");
    twin->add_option("--lambda", g_lambda)->required();
    twin->add_option("--eps", g_eps)->required();
    auto* coh = gaussian->add_subcommand("coherent");
    coh->add_option("--delta2", g_delta2)->required();
    coh->add_option("--eps", g_eps)->required();
    auto* custom = gaussian->add_subcommand("custom");
    custom->add_option("--file", g_file)->required();
    custom->add_option("--eps", g_eps)->required();

    int nc_n = 1, nc_m = 2;
    double nc_p = 0.5;
    std::string nc_choi;
    auto* nocl = app.add_subcommand("nocloning", "no-cloning-without-correlations witness");
    nocl->add_option("--n", nc_n)->required();
    nocl->add_option("--m", nc_m)->required();
    nocl->add_option("--p", nc_p)->required();
    nocl->add_option("--choi", nc_choi, "Choi JSON file (default: universal 1->2 cloner)");

    int cv_n = 1, cv_m = 2;
    double cv_noise = 0.5;
    bool cv_dec = false;
    auto* cv = app.add_subcommand("cv-clone", "N -> M continuous-variable cloning ledger");
    cv->add_option("--n", cv_n)->required();
    cv->add_option("--m", cv_m)->required();
    cv->add_option("--noise", cv_noise)->required();
    cv->add_flag("--decorrelated", cv_dec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (surface->parsed()) return run_surface(surf);
        if (decorrelate->parsed()) {
            dec.seed = seed;
            dec.tol = tol;
            return run_decorrelate(dec);
        }
        if (gaussian->parsed()) {
            if (twin->parsed()) return run_gaussian("twin-beam", g_lambda, 0, "", g_eps);
            if (coh->parsed()) return run_gaussian("coherent", 0, g_delta2, "", g_eps);
            return run_gaussian("custom", 0, 0, g_file, g_eps);
        }
        if (nocl->parsed()) return run_nocloning(nc_n, nc_m, nc_p, nc_choi);
        if (cv->parsed()) return run_cvclone(cv_n, cv_m, cv_noise, cv_dec);
    } catch (const Infeasible& e) {
        std::cerr << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
