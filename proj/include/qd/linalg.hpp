#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qd/errors.hpp"

namespace qd {

using cdouble = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

Mat kron(const Mat& a, const Mat& b);
RMat kron_real(const RMat& a, const RMat& b);

// Largest |entry| of a matrix.
double max_abs(const Mat& m);
double max_abs_real(const RMat& m);

double hermiticity_deviation(const Mat& m);

// Smallest eigenvalue of a (nearly) Hermitian matrix.
double min_eigenvalue(const Mat& m);

// Largest singular value.
double operator_norm(const Mat& m);

// PSD square root via spectral mapping; eigenvalues clamped at zero.
Mat psd_sqrt(const Mat& m);

// Trace out one factor of a bipartite operator on dim_a (x) dim_b.
Mat partial_trace_first(const Mat& m, int dim_a, int dim_b);
Mat partial_trace_second(const Mat& m, int dim_a, int dim_b);

// Reorder tensor factors: slot i of the output takes input slot perm[i].
// All slots are qubits (dim 2); matrix dimension must be 2^perm.size().
Mat permute_qubit_systems(const Mat& m, const std::vector<int>& perm);

// Deterministic RNG: mt19937_64 with hand-rolled uniform / Box-Muller
// transforms so fixed seeds reproduce bit-identical streams everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);
    double normal();
    cdouble normal_complex();                // N(0,1) real and imaginary parts

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qd
