#include "qd/nocloning.hpp"

#include <algorithm>
#include <cmath>

namespace qd {

namespace {

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Radix-2 in-place FFT, length a power of two.
void fft(std::vector<cdouble>& a) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / len;
        const cdouble wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                cdouble u = a[i + k];
                cdouble v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

Mat tensor_power(const Mat& m, int n) {
    Mat out = m;
    for (int k = 1; k < n; ++k) out = kron(out, m);
    return out;
}

}  // namespace

PhaseOrbitSpec::PhaseOrbitSpec(double p_, int n_, int m_, int phi_samples_)
    : p(p_), n_in(n_), m_out(m_), phi_samples(phi_samples_) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidState("PhaseOrbitSpec: p must lie in (0, 1)");
    if (n_in < 1 || m_out <= n_in)
        throw InvalidState("PhaseOrbitSpec: M > N >= 1 required");
    if (phi_samples == 0) phi_samples = std::max(8, next_pow2(4 * (m_out + 1)));
    if (phi_samples < 8 || (phi_samples & (phi_samples - 1)) != 0)
        throw InvalidState("PhaseOrbitSpec: phi_samples must be a power of two >= 8");
    if (phi_samples < 4 * (m_out + 1))
        throw GridTooCoarse("PhaseOrbitSpec: phi grid below 4(M+1) samples");
}

Vec phase_state(double p, double phi) {
    Vec v(2);
    v(0) = std::sqrt(p);
    v(1) = std::sqrt(1.0 - p) * cdouble(std::cos(phi), std::sin(phi));
    return v;
}

int fourier_degree(const std::vector<Mat>& samples, double tol) {
    const int n = static_cast<int>(samples.size());
    if (n < 2 || (n & (n - 1)) != 0)
        throw GridTooCoarse("fourier_degree: sample count must be a power of two >= 2");
    const auto rows = samples[0].rows();
    const auto cols = samples[0].cols();

    // FFT each matrix entry along phi; find the largest coefficient first so
    // the degree threshold is relative.
    std::vector<std::vector<cdouble>> spectra;
    spectra.reserve(static_cast<std::size_t>(rows * cols));
    double peak = 0.0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            std::vector<cdouble> f(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) f[static_cast<std::size_t>(k)] = samples[static_cast<std::size_t>(k)](r, c);
            fft(f);
            for (const cdouble& z : f) peak = std::max(peak, std::abs(z));
            spectra.push_back(std::move(f));
        }
    }
    if (peak == 0.0) return 0;

    const double cut = tol * peak;
    int degree = 0;
    for (const auto& f : spectra) {
        if (std::abs(f[static_cast<std::size_t>(n / 2)]) > cut)
            throw GridTooCoarse("fourier_degree: weight at the Nyquist frequency");
        for (int k = 1; k < n / 2; ++k) {
            const int freq = k;
            if (std::abs(f[static_cast<std::size_t>(k)]) > cut ||
                std::abs(f[static_cast<std::size_t>(n - k)]) > cut)
                degree = std::max(degree, freq);
        }
    }
    return degree;
}

ContradictionReport contradiction_report(const PhaseOrbitSpec& spec, const ChoiOperator& channel,
                                         bool renormalize) {
    const int dim_in = 1 << spec.n_in;
    const int dim_out = 1 << spec.m_out;
    if (channel.dim_in != dim_in || channel.dim_out != dim_out)
        throw DimensionMismatch("contradiction_report: channel dims must be 2^N -> 2^M");

    const int n = spec.phi_samples;
    std::vector<Mat> outputs(static_cast<std::size_t>(n));
    std::vector<std::vector<Mat>> marginals(static_cast<std::size_t>(spec.m_out));
    std::vector<Mat> products(static_cast<std::size_t>(n));

    double gap = 0.0;
    for (int k = 0; k < n; ++k) {
        const double phi = 2.0 * M_PI * k / n;
        Vec psi = phase_state(spec.p, phi);
        Mat input = tensor_power(psi * psi.adjoint(), spec.n_in);
        Mat out = choi_apply(channel, input);
        if (renormalize) {
            const double tr = out.trace().real();
            if (tr <= 1e-14)
                throw InvalidState("contradiction_report: output trace vanished");
            out /= tr;
        }
        Mat prod = Mat::Identity(1, 1);
        for (int q = 0; q < spec.m_out; ++q) {
            Mat marg = clone_marginal(out, spec.m_out, q);
            marginals[static_cast<std::size_t>(q)].push_back(marg);
            prod = kron(prod, marg);
        }
        gap = std::max(gap, max_abs(out - prod));
        outputs[static_cast<std::size_t>(k)] = std::move(out);
        products[static_cast<std::size_t>(k)] = std::move(prod);
    }

    // Per-phase renormalization turns trigonometric polynomials into ratios
    // of them; degrees are then best-effort (-1 when the grid cannot resolve
    // the spectrum). The gap is the meaningful witness in that mode.
    auto degree_of = [&](const std::vector<Mat>& s) {
        if (!renormalize) return fourier_degree(s);
        try {
            return fourier_degree(s);
        } catch (const GridTooCoarse&) {
            return -1;
        }
    };

    ContradictionReport rep;
    rep.degree_out = degree_of(outputs);
    rep.degree_product = degree_of(products);
    rep.decorrelation_gap = gap;
    for (int q = 0; q < spec.m_out; ++q)
        rep.marginal_informative.push_back(degree_of(marginals[static_cast<std::size_t>(q)]) != 0);
    return rep;
}

ChoiOperator universal_cloner_choi() {
    // Symmetric projector on two qubits.
    Mat swap = Mat::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    Mat sym = 0.5 * (Mat::Identity(4, 4) + swap);

    ChoiOperator r;
    r.dim_in = 2;
    r.dim_out = 4;
    r.matrix = Mat::Zero(8, 8);
    // R = sum_ij T(|i><j|) x |i><j| with T(rho) = (2/3) S (rho x 1) S.
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Mat e = Mat::Zero(2, 2);
            e(i, j) = 1.0;
            Mat t = (2.0 / 3.0) * sym * kron(e, identity2()) * sym;
            Mat ej = Mat::Zero(2, 2);
            ej(i, j) = 1.0;
            r.matrix += kron(t, ej);
        }
    }
    return r;
}

Mat clone_marginal(const Mat& rho, int m_qubits, int k) {
    const int dim = 1 << m_qubits;
    if (rho.rows() != dim || rho.cols() != dim)
        throw DimensionMismatch("clone_marginal: dimension mismatch");
    if (k < 0 || k >= m_qubits) throw DimensionMismatch("clone_marginal: bad clone index");
    // Trace qubits before k, then qubits after k.
    const int before = 1 << k;
    const int after = 1 << (m_qubits - k - 1);
    Mat tail = partial_trace_first(rho, before, 2 * after);
    return partial_trace_second(tail, 2, after);
}

}  // namespace qd
