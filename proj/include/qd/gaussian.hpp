#pragma once

#include <string>
#include <vector>

#include "qd/linalg.hpp"

namespace qd {

// Two-mode characteristic-function correlation matrix, quadrature order
// (x_A, y_A, x_B, y_B); vacuum = identity in this normalization.
// Physicality: all symplectic eigenvalues >= 1 - 1e-9.
class TwoModeGaussian {
  public:
    static TwoModeGaussian from(const RMat& m);

    const RMat& matrix() const { return m_; }
    RMat block_a() const { return m_.block(0, 0, 2, 2); }
    RMat block_b() const { return m_.block(2, 2, 2, 2); }
    RMat block_c() const { return m_.block(0, 2, 2, 2); }

  private:
    explicit TwoModeGaussian(RMat m) : m_(std::move(m)) {}
    RMat m_;
};

// Covariant Gaussian noise channel with kernel exp(-x^T G x / 2); adds
// U = Sigma G^-1 Sigma to the correlation matrix.
class GaussianNoiseMap {
  public:
    static GaussianNoiseMap from_g(const RMat& g);
    static GaussianNoiseMap from_ginv(const RMat& ginv);

    const RMat& g() const { return g_; }
    const RMat& ginv() const { return ginv_; }
    RMat added_noise() const;  // Sigma G^-1 Sigma in the real convention

  private:
    GaussianNoiseMap(RMat g, RMat ginv) : g_(std::move(g)), ginv_(std::move(ginv)) {}
    RMat g_, ginv_;
};

// The coupling matrix Sigma of the joint kernel, stored real: the complex
// diag(sy, -sy) equals i * diag(j, -j) with j = [[0,-1],[1,0]], and
// Sigma G^-1 Sigma = J G^-1 J^T for the real J returned here.
// Antisymmetric, squares to -1.
RMat sigma_coupling();

TwoModeGaussian apply_noise(const TwoModeGaussian& state, const GaussianNoiseMap& map);

// Real form of sy C sy: [[C22, -C21], [-C12, C11]].
RMat sy_conjugate(const RMat& c);

// Assembles G^-1 = [[W, V],[V^T, Z]] with V = sy C sy, which cancels the
// off-diagonal block of the state exactly.
GaussianNoiseMap decorrelator_for(const TwoModeGaussian& state, const RMat& w, const RMat& z);

// W = Z = s(V)(1+eps) 1 with s(V) the largest singular value of V; falls
// back to eps 1 when C = 0.
std::pair<RMat, RMat> default_wz(const TwoModeGaussian& state, double eps);

TwoModeGaussian twin_beam(double lam);
TwoModeGaussian correlated_coherent(double delta2);

// Mean photon number from a diagonal correlation-matrix entry:
// m = 1 + 2 nbar per mode.
double thermal_photons(double m_diag);

std::vector<double> symplectic_eigenvalues(const RMat& m);

// Smallest eigenvalue of M + (i/4) Omega, the quarter-normalized form of
// the uncertainty relation; kept for reference next to the symplectic test
// (the factor 1/4 is inconsistent with vacuum = identity, which forces
// symplectic eigenvalues >= 1, i.e. M + i Omega >= 0).
double heisenberg_quarter_form(const RMat& m);

struct CloneStage {
    std::string name;
    double amplitude;  // per-mode mean amplitude in units of the input alpha
    double noise;      // Delta x^2 + Delta y^2, coherent state = 1/2
};

struct CloneNoiseLedger {
    int n_in = 0;
    int m_out = 0;
    std::vector<CloneStage> stages;
    double clone_amplitude = 0.0;
    double clone_noise = 0.0;
    double cross_correlation = 0.0;  // only meaningful for the decorrelated variant
    bool decorrelated = false;
};

// Concentrate, amplify with gain M/N, distribute over an M-splitter with
// vacuum ancillas: per-clone noise Gamma = (gamma' + (M-1)/2) / M.
CloneNoiseLedger clone_pipeline(int n_in, int m_out, const std::vector<double>& input_noises);

// Distribution stage fed with M-1 thermal ancillas at noise gamma' instead
// of vacuum: per-clone noise gamma', zero cross-correlation.
CloneNoiseLedger decorrelated_clone_pipeline(int n_in, int m_out,
                                             const std::vector<double>& input_noises);

// cov -> S cov S^T with S = mixing (x) 1_2; mixing must be orthogonal.
RMat msplitter_transform(const RMat& cov, const RMat& mixing);

// Orthogonal M x M with balanced first row/column (Householder construction).
RMat msplitter_matrix(int m);

}  // namespace qd
