#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "srl/driving.hpp"
#include "srl/linalg.hpp"

namespace srl {

/// One-step generator of a linear cocycle over a driving system: a matrix
/// per symbol for the shift kinds, or a finite Fourier description of a
/// continuous matrix function for circle rotations.  Either way the
/// integrability condition on log+ ||A(x,1)|| holds by construction.
struct CocycleSpec {
    int dim = 0;
    std::vector<Matrix> generators;  // indexed by symbol

    struct Harmonic {
        int freq = 1;
        Matrix cos_coef;
        Matrix sin_coef;
    };
    Matrix fourier_constant;  // size 0 when the cocycle is symbol-driven
    std::vector<Harmonic> harmonics;

    bool uses_fourier() const { return fourier_constant.size() > 0; }

    void validate(const DrivingSystem& sys) const {
        if (dim <= 0) throw validation_error("CocycleSpec: dim must be positive");
        if (sys.kind == DrivingSystem::Kind::circle_rotation) {
            if (!uses_fourier())
                throw validation_error("CocycleSpec: rotation driver needs a fourier block");
            auto check = [&](const Matrix& m, const char* who) {
                if (m.rows() != dim || m.cols() != dim)
                    throw dimension_error(std::string("CocycleSpec: ") + who + " is not square of size dim");
                require_finite(m, "CocycleSpec");
            };
            check(fourier_constant, "fourier constant");
            for (const auto& h : harmonics) {
                check(h.cos_coef, "cos coefficient");
                check(h.sin_coef, "sin coefficient");
            }
        } else {
            if (generators.empty()) throw validation_error("CocycleSpec: no generators");
            if (static_cast<int>(generators.size()) != sys.symbol_count())
                throw validation_error("CocycleSpec: generator count does not match symbol count");
            for (const Matrix& g : generators) {
                if (g.rows() != dim || g.cols() != dim)
                    throw dimension_error("CocycleSpec: generator is not dim x dim");
                require_finite(g, "CocycleSpec");
            }
        }
    }

    /// A(T^k x, 1) along the realized orbit.
    Matrix step(const Orbit& orbit, int k) const {
        if (!uses_fourier()) return generators[static_cast<std::size_t>(orbit.symbol_at(k))];
        const double x = orbit.point_at(k);
        Matrix m = fourier_constant;
        for (const auto& h : harmonics) {
            const double phase = 2.0 * std::numbers::pi * h.freq * x;
            m += std::cos(phase) * h.cos_coef + std::sin(phase) * h.sin_coef;
        }
        return m;
    }
};

/// Per-orbit estimates.  Tracks are on the log scale:
/// lambda_track[k] = (1/(k+1)) log ||A(x,k+1)||, same layout for rho_track.
struct OrbitReport {
    int n_steps = 0;
    double lambda_top_hat = 0.0;
    std::vector<double> lambda_spectrum_hat;  // nonincreasing, -inf allowed
    std::vector<double> lambda_track;
    std::vector<double> rho_track;
    double rho_limsup_hat = 0.0;  // max of rho_track over the window [n/2, n]
    double gap = 0.0;             // lambda_top_hat - rho_limsup_hat

    // filled by the splitting/cone operations, see splitting.hpp
    long cone_returns = -1;
    std::vector<char> cone_return_flags;
    double growth_exponent_min = std::numeric_limits<double>::quiet_NaN();
    double recurrence_liminf = std::numeric_limits<double>::quiet_NaN();
    int recurrence_argmin = -1;
    std::vector<double> recurrence_running_min;
};

// Overflow guard: with renormalization every 32 steps, per-step exponents up
// to ~600/32 stay inside the double range between renormalizations.
inline constexpr int renorm_period = 32;

/// Top exponent, full Lyapunov spectrum, and the per-n norm/rho tracks.
///
/// The top track renormalizes an accumulated product against a log ledger;
/// the spectrum comes from repeated QR re-orthonormalization of a frame
/// (log-sums of the triangular diagonals).  rho(A(x,n)) is recovered from
/// the renormalized product's eigenvalues plus the same ledger, so the
/// pointwise bound rho_track <= lambda_track is inherited from rho <= ||.||.
inline OrbitReport lyapunov_estimates(const DrivingSystem& sys, const CocycleSpec& coc, int n) {
    coc.validate(sys);
    if (n < 1) throw validation_error("lyapunov_estimates: n must be >= 1");
    const Orbit orbit = generate_orbit(sys, n);
    const int d = coc.dim;

    OrbitReport rep;
    rep.n_steps = n;
    rep.lambda_track.reserve(static_cast<std::size_t>(n));
    rep.rho_track.reserve(static_cast<std::size_t>(n));

    Matrix product = Matrix::Identity(d, d);
    double ledger = 0.0;
    Matrix frame = Matrix::Identity(d, d);
    std::vector<double> diag_log_sums(static_cast<std::size_t>(d), 0.0);

    for (int k = 0; k < n; ++k) {
        const Matrix m = coc.step(orbit, k);
        product = m * product;
        if ((k + 1) % renorm_period == 0) {
            const double f = product.norm();  // Frobenius: cheap, norm-equivalent
            if (f == 0.0) {
                ledger = neg_infinity();
                product = Matrix::Identity(d, d);
            } else {
                ledger += std::log(f);
                product /= f;
            }
        }
        const double log_norm = ledger + std::log(operator_norm(product));
        rep.lambda_track.push_back(log_norm / (k + 1));
        const double rho = spectral_radius(product);
        rep.rho_track.push_back((rho == 0.0 ? neg_infinity() : ledger + std::log(rho)) / (k + 1));

        // frame re-orthonormalization for the full spectrum
        Eigen::HouseholderQR<Matrix> qr(m * frame);
        frame = qr.householderQ() * Matrix::Identity(d, d);
        const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int i = 0; i < d; ++i) {
            const double rd = std::abs(r(i, i));
            diag_log_sums[static_cast<std::size_t>(i)] += rd == 0.0 ? neg_infinity() : std::log(rd);
        }
    }

    rep.lambda_top_hat = rep.lambda_track.back();
    rep.lambda_spectrum_hat.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        rep.lambda_spectrum_hat[static_cast<std::size_t>(i)] =
            diag_log_sums[static_cast<std::size_t>(i)] / n;
    std::sort(rep.lambda_spectrum_hat.rbegin(), rep.lambda_spectrum_hat.rend());

    // limsup surrogate: max over the tail window [n/2, n]; the first half is
    // discarded as transient
    double tail_max = neg_infinity();
    for (int k = n / 2; k <= n; ++k)
        tail_max = std::max(tail_max, rep.rho_track[static_cast<std::size_t>(std::max(k - 1, 0))]);
    rep.rho_limsup_hat = tail_max;
    rep.gap = rep.lambda_top_hat - rep.rho_limsup_hat;
    return rep;
}

/// The Cohen-question check: along a typical orbit the limsup of
/// (1/n) log rho(A(x,n)) equals the norm growth rate; the report's gap
/// field is the finite-n residual of that equality.
inline OrbitReport cohen_gap(const DrivingSystem& sys, const CocycleSpec& coc, int n) {
    return lyapunov_estimates(sys, coc, n);
}

/// Raw (unrenormalized) cocycle product A(x, n) starting at position k.
/// Intended for short horizons and tests; overflows for long products.
inline Matrix cocycle_product(const CocycleSpec& coc, const Orbit& orbit, int k, int n) {
    Matrix p = Matrix::Identity(coc.dim, coc.dim);
    for (int j = 0; j < n; ++j) p = coc.step(orbit, k + j) * p;
    return p;
}

}  // namespace srl
