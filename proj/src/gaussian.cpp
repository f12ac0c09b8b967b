#include "qd/gaussian.hpp"

#include <algorithm>
#include <cmath>

namespace qd {

namespace {

RMat omega4() {
    RMat w(2, 2);
    w << 0, 1, -1, 0;
    return kron_real(RMat::Identity(2, 2), w);
}

RMat real_j() {
    RMat j(2, 2);
    j << 0, -1, 1, 0;
    RMat out = RMat::Zero(4, 4);
    out.block(0, 0, 2, 2) = j;
    out.block(2, 2, 2, 2) = -j;
    return out;
}

RMat offdiag_sz() {
    RMat sz(2, 2);
    sz << 1, 0, 0, -1;
    RMat out = RMat::Zero(4, 4);
    out.block(0, 2, 2, 2) = sz;
    out.block(2, 0, 2, 2) = sz;
    return out;
}

double min_eig_sym(const RMat& m) {
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace

TwoModeGaussian TwoModeGaussian::from(const RMat& m) {
    if (m.rows() != 4 || m.cols() != 4)
        throw DimensionMismatch("TwoModeGaussian: 4x4 matrix required");
    if (max_abs_real(m - m.transpose()) > 1e-12)
        throw InvalidState("TwoModeGaussian: matrix must be symmetric");
    if (min_eig_sym(m) <= 0.0)
        throw NotPositiveDefinite("TwoModeGaussian: matrix must be positive definite");
    auto nu = symplectic_eigenvalues(m);
    for (double v : nu)
        if (v < 1.0 - 1e-9)
            throw NotPositive("TwoModeGaussian: symplectic eigenvalue below 1");
    return TwoModeGaussian(m);
}

GaussianNoiseMap GaussianNoiseMap::from_g(const RMat& g) {
    if (g.rows() != 4 || g.cols() != 4)
        throw DimensionMismatch("GaussianNoiseMap: 4x4 matrix required");
    if (max_abs_real(g - g.transpose()) > 1e-12)
        throw InvalidState("GaussianNoiseMap: G must be symmetric");
    if (min_eig_sym(g) < 1e-10)
        throw NotPositiveDefinite("GaussianNoiseMap: G must be positive definite");
    return GaussianNoiseMap(g, g.inverse());
}

GaussianNoiseMap GaussianNoiseMap::from_ginv(const RMat& ginv) {
    if (ginv.rows() != 4 || ginv.cols() != 4)
        throw DimensionMismatch("GaussianNoiseMap: 4x4 matrix required");
    if (max_abs_real(ginv - ginv.transpose()) > 1e-12)
        throw InvalidState("GaussianNoiseMap: G^-1 must be symmetric");
    if (min_eig_sym(ginv) < 1e-10)
        throw NotPositiveDefinite("GaussianNoiseMap: G^-1 must be positive definite");
    return GaussianNoiseMap(ginv.inverse(), ginv);
}

RMat GaussianNoiseMap::added_noise() const {
    const RMat j = real_j();
    return j * ginv_ * j.transpose();
}

RMat sigma_coupling() {
    return real_j();
}

TwoModeGaussian apply_noise(const TwoModeGaussian& state, const GaussianNoiseMap& map) {
    return TwoModeGaussian::from(state.matrix() + map.added_noise());
}

RMat sy_conjugate(const RMat& c) {
    RMat v(2, 2);
    v << c(1, 1), -c(1, 0), -c(0, 1), c(0, 0);
    return v;
}

GaussianNoiseMap decorrelator_for(const TwoModeGaussian& state, const RMat& w, const RMat& z) {
    if (w.rows() != 2 || w.cols() != 2 || z.rows() != 2 || z.cols() != 2)
        throw DimensionMismatch("decorrelator_for: W and Z must be 2x2");
    const RMat v = sy_conjugate(state.block_c());
    RMat ginv = RMat::Zero(4, 4);
    ginv.block(0, 0, 2, 2) = w;
    ginv.block(2, 2, 2, 2) = z;
    ginv.block(0, 2, 2, 2) = v;
    ginv.block(2, 0, 2, 2) = v.transpose();
    return GaussianNoiseMap::from_ginv(ginv);
}

std::pair<RMat, RMat> default_wz(const TwoModeGaussian& state, double eps) {
    if (eps <= 0.0) throw InvalidState("default_wz: eps must be positive");
    const RMat v = sy_conjugate(state.block_c());
    Eigen::JacobiSVD<RMat> svd(v);
    const double s = svd.singularValues()(0);
    const double scale = s > 1e-14 ? s * (1.0 + eps) : eps;
    RMat w = scale * RMat::Identity(2, 2);
    return {w, w};
}

TwoModeGaussian twin_beam(double lam) {
    if (lam < 0.0 || lam >= 1.0) throw InvalidState("twin_beam: lambda in [0, 1) required");
    const double d = 1.0 - lam * lam;
    RMat m = ((1.0 + lam * lam) / d) * RMat::Identity(4, 4) - (2.0 * lam / d) * offdiag_sz();
    return TwoModeGaussian::from(m);
}

TwoModeGaussian correlated_coherent(double delta2) {
    if (delta2 < 0.0) throw InvalidState("correlated_coherent: delta^2 >= 0 required");
    RMat m = (1.0 + 2.0 * delta2) * RMat::Identity(4, 4) + 2.0 * delta2 * offdiag_sz();
    return TwoModeGaussian::from(m);
}

double thermal_photons(double m_diag) {
    return (m_diag - 1.0) / 2.0;
}

std::vector<double> symplectic_eigenvalues(const RMat& m) {
    if (m.rows() != 4 || m.cols() != 4)
        throw DimensionMismatch("symplectic_eigenvalues: 4x4 matrix required");
    Eigen::EigenSolver<RMat> es(omega4() * m);
    std::vector<double> mods;
    for (int i = 0; i < 4; ++i) mods.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(mods.begin(), mods.end());
    return {mods[0], mods[2]};  // moduli come in equal pairs
}

double heisenberg_quarter_form(const RMat& m) {
    Mat h = m.cast<cdouble>() + cdouble(0.0, 0.25) * omega4().cast<cdouble>();
    return min_eigenvalue(h);
}

CloneNoiseLedger clone_pipeline(int n_in, int m_out, const std::vector<double>& input_noises) {
    if (m_out <= n_in || n_in < 1)
        throw InvalidState("clone_pipeline: M > N >= 1 required");
    if (input_noises.size() != static_cast<std::size_t>(n_in))
        throw DimensionMismatch("clone_pipeline: one noise value per input mode");
    double gamma = 0.0;
    for (double g : input_noises) {
        if (g < 0.5 - 1e-12)
            throw InvalidState("clone_pipeline: input noise below the Heisenberg floor 1/2");
        gamma += g;
    }
    gamma /= n_in;
    const double ratio = static_cast<double>(m_out) / n_in;
    const double gamma_prime = ratio * gamma + ratio / 2.0 - 0.5;
    const double big_gamma = (gamma_prime + 0.5 * (m_out - 1)) / m_out;

    CloneNoiseLedger ledger;
    ledger.n_in = n_in;
    ledger.m_out = m_out;
    ledger.stages = {{"concentration", std::sqrt(static_cast<double>(n_in)), gamma},
                     {"amplification", std::sqrt(static_cast<double>(m_out)), gamma_prime},
                     {"distribution", 1.0, big_gamma}};
    ledger.clone_amplitude = 1.0;
    ledger.clone_noise = big_gamma;
    for (const auto& s : ledger.stages)
        if (s.noise < 0.5 - 1e-12)
            throw NotPositive("clone_pipeline: stage noise below the Heisenberg floor");
    return ledger;
}

CloneNoiseLedger decorrelated_clone_pipeline(int n_in, int m_out,
                                             const std::vector<double>& input_noises) {
    CloneNoiseLedger ledger = clone_pipeline(n_in, m_out, input_noises);
    const double gamma_prime = ledger.stages[1].noise;
    ledger.stages[2] = {"distribution-thermal", 1.0, gamma_prime};
    ledger.clone_noise = gamma_prime;
    ledger.decorrelated = true;

    // Explicit covariance witness: all M splitter inputs carry noise gamma',
    // so the orthogonal mixing leaves the matrix proportional to identity.
    RMat cov = gamma_prime * RMat::Identity(2 * m_out, 2 * m_out);
    RMat out = msplitter_transform(cov, msplitter_matrix(m_out));
    double cross = 0.0;
    for (int i = 0; i < m_out; ++i)
        for (int j = 0; j < m_out; ++j)
            if (i != j) cross = std::max(cross, max_abs_real(out.block(2 * i, 2 * j, 2, 2)));
    ledger.cross_correlation = cross;
    return ledger;
}

RMat msplitter_transform(const RMat& cov, const RMat& mixing) {
    const auto m = mixing.rows();
    if (mixing.cols() != m || cov.rows() != 2 * m || cov.cols() != 2 * m)
        throw DimensionMismatch("msplitter_transform: cov must be 2M x 2M");
    if (max_abs_real(mixing * mixing.transpose() - RMat::Identity(m, m)) > 1e-10)
        throw InvalidState("msplitter_transform: mixing must be orthogonal");
    RMat s = kron_real(mixing, RMat::Identity(2, 2));
    return s * cov * s.transpose();
}

RMat msplitter_matrix(int m) {
    if (m < 1) throw DimensionMismatch("msplitter_matrix: M >= 1 required");
    RVec v = RVec::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
    RVec u = v;
    u(0) -= 1.0;
    const double nn = u.squaredNorm();
    if (nn < 1e-14) return RMat::Identity(m, m);
    return RMat::Identity(m, m) - (2.0 / nn) * (u * u.transpose());
}

}  // namespace qd
