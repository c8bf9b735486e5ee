#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "srl/cocycle.hpp"
#include "srl/driving.hpp"
#include "srl/linalg.hpp"

namespace srl {

/// Raised when the estimated exponent gap is below threshold and the
/// splitting would be ill-conditioned.
class splitting_error : public std::runtime_error {
public:
    explicit splitting_error(const std::string& what) : std::runtime_error(what) {}
};

/// Finite-horizon estimate of the top Oseledets splitting at one orbit
/// position (d = 2): V spans the fast space, W the slow space, and P is the
/// projection onto V along W.
struct SplittingEstimate {
    Eigen::Vector2d v;
    Eigen::Vector2d w;
    Matrix p;            // 2x2, P^2 = P, P v = v, P w = 0
    double gap_estimate = 0.0;  // (log s1 - log s2)/H of the forward window
    int horizon = 0;
};

namespace detail {

inline Eigen::Vector2d perp2(const Eigen::Vector2d& v) { return {-v(1), v(0)}; }

/// Direction data of a length-H window product, renormalized stepwise so
/// only directions and the singular gap survive; absolute scale is dropped.
struct WindowProduct {
    Matrix unit_product;  // product with per-step normalization
    double log_gap = 0.0;  // log s1 - log s2 (ledger cancels)
};

inline WindowProduct window_product(const CocycleSpec& coc, const Orbit& orbit, int start,
                                    int len) {
    Matrix p = coc.step(orbit, start);
    double f = p.norm();
    if (f > 0.0) p /= f;
    for (int j = 1; j < len; ++j) {
        p = coc.step(orbit, start + j) * p;
        f = p.norm();
        if (f > 0.0) p /= f;
    }
    WindowProduct out;
    out.unit_product = p;
    const auto sv = singular_values(p);
    out.log_gap = sv.values[1] == 0.0 ? std::numeric_limits<double>::infinity()
                                      : std::log(sv.values[0]) - std::log(sv.values[1]);
    return out;
}

}  // namespace detail

/// Splitting estimate at orbit position k from horizon-H windows:
/// V is the dominant left-singular direction of the past window
/// A(T^{k-H}x, H) (the push-forward of the fast space), W the slow
/// right-singular direction of the forward window A(T^k x, H).
/// The orbit must hold at least H steps of past before position k.
inline SplittingEstimate splitting_at(const CocycleSpec& coc, const Orbit& orbit, int k, int horizon,
                                      double min_gap = 0.1) {
    if (coc.dim != 2) throw validation_error("splitting_at: implemented for d = 2 only");
    if (horizon < 1) throw validation_error("splitting_at: horizon must be >= 1");
    if (k - horizon < -orbit.past_length())
        throw validation_error("splitting_at: orbit window lacks past coordinates");
    if (k + horizon > orbit.length())
        throw validation_error("splitting_at: orbit window lacks forward coordinates");

    const auto forward = detail::window_product(coc, orbit, k, horizon);
    const double gap = forward.log_gap / horizon;
    if (!(gap >= min_gap))
        throw splitting_error("splitting_at: estimated exponent gap " + std::to_string(gap) +
                              " is below the threshold " + std::to_string(min_gap) +
                              "; splitting ill-conditioned");

    const auto past = detail::window_product(coc, orbit, k - horizon, horizon);

    Eigen::JacobiSVD<Matrix> past_svd(past.unit_product, Eigen::ComputeFullU);
    Eigen::JacobiSVD<Matrix> fwd_svd(forward.unit_product, Eigen::ComputeFullV);
    SplittingEstimate est;
    est.v = past_svd.matrixU().col(0);
    est.w = detail::perp2(fwd_svd.matrixV().col(0));  // slow right-singular direction
    est.horizon = horizon;
    est.gap_estimate = gap;

    const Eigen::Vector2d nw = detail::perp2(est.w);
    const double transversal = nw.dot(est.v);
    if (std::abs(transversal) < 1e-8)
        throw splitting_error("splitting_at: fast and slow directions nearly collinear");
    est.p = (est.v * nw.transpose()) / transversal;
    return est;
}

/// Convenience entry point matching the d = 2 module contract: estimate the
/// splitting at the orbit origin of a two-sided driving system.
inline SplittingEstimate oseledets_splitting_2d(const DrivingSystem& sys, const CocycleSpec& coc,
                                                int horizon, double min_gap = 0.1) {
    coc.validate(sys);
    const Orbit orbit = generate_orbit(sys, horizon, horizon);
    return splitting_at(coc, orbit, 0, horizon, min_gap);
}

struct RecurrenceReport {
    double min_difference = std::numeric_limits<double>::infinity();
    int argmin = -1;                       // n attaining the minimum
    std::vector<double> running_min;       // per n
    int skipped = 0;                       // positions where the splitting failed
};

/// min over 1 <= n <= n_max of ||P(x) - P(T^n x)|| in operator norm.
/// Splitting failures along the orbit leave flagged gaps in the track
/// rather than aborting the scan.
inline RecurrenceReport recurrence_liminf(const DrivingSystem& sys, const CocycleSpec& coc,
                                          int n_max, int horizon, double min_gap = 0.1) {
    coc.validate(sys);
    if (n_max < 1) throw validation_error("recurrence_liminf: n_max must be >= 1");
    const Orbit orbit = generate_orbit(sys, n_max + horizon, horizon);
    const SplittingEstimate base = splitting_at(coc, orbit, 0, horizon, min_gap);

    RecurrenceReport rep;
    rep.running_min.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        try {
            const SplittingEstimate at_n = splitting_at(coc, orbit, n, horizon, min_gap);
            const double diff = operator_norm(base.p - at_n.p);
            if (diff < rep.min_difference) {
                rep.min_difference = diff;
                rep.argmin = n;
            }
        } catch (const splitting_error&) {
            ++rep.skipped;
        }
        rep.running_min.push_back(rep.min_difference);
    }
    return rep;
}

struct ConeReport {
    long returns = 0;
    std::vector<char> return_flags;       // per n
    std::vector<double> growth_log;       // per n: log inf ||A(x,n)u|| over the test rays
    double growth_exponent_min = std::numeric_limits<double>::quiet_NaN();
    // min over return times of (1/n) * growth_log
    SplittingEstimate base;
};

/// Cone containment and growth certificate at the orbit origin.
///
/// K(x, delta) = { u : ||P(x)u|| >= delta^{-1} ||Q(x)u|| } is, for d = 2, the
/// double cone bounded by the rays V +- delta W.  A nonsingular map acts on
/// the projective line as a circle homeomorphism, so the image of the cone
/// is the projective arc between the two boundary images that contains the
/// image of the axis; containment is decided exactly from those three
/// directions.  Growth is tracked per ray on the log scale.
inline ConeReport cone_check(const DrivingSystem& sys, const CocycleSpec& coc, double delta,
                             int n_max, int horizon, double min_gap = 0.1) {
    coc.validate(sys);
    if (!(delta > 0.0) || delta > 1.0)
        throw validation_error("cone_check: delta must lie in (0, 1]");
    if (n_max < 1) throw validation_error("cone_check: n_max must be >= 1");

    const Orbit orbit = generate_orbit(sys, n_max + horizon, horizon);
    ConeReport rep;
    rep.base = splitting_at(coc, orbit, 0, horizon, min_gap);

    // oblique coordinates u = a V + b W; membership is delta |a| >= |b|
    Matrix frame(2, 2);
    frame.col(0) = rep.base.v;
    frame.col(1) = rep.base.w;
    const Matrix frame_inv = frame.inverse();
    const double gamma = std::atan(delta);  // projective half-aperture

    struct Ray {
        Eigen::Vector2d dir;
        double log_scale = 0.0;
    };
    std::vector<Ray> rays(3);
    rays[0].dir = (rep.base.v + delta * rep.base.w).normalized();  // boundary +
    rays[1].dir = (rep.base.v - delta * rep.base.w).normalized();  // boundary -
    rays[2].dir = rep.base.v;                                      // axis

    auto projective_angle = [&](const Eigen::Vector2d& y) {
        const Eigen::Vector2d ab = frame_inv * y;
        double theta = std::atan2(ab(1), ab(0));  // fold to (-pi/2, pi/2]
        if (theta > std::numbers::pi / 2.0) theta -= std::numbers::pi;
        if (theta <= -std::numbers::pi / 2.0) theta += std::numbers::pi;
        return theta;
    };

    rep.return_flags.reserve(static_cast<std::size_t>(n_max));
    rep.growth_log.reserve(static_cast<std::size_t>(n_max));
    double exp_min = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        const Matrix m = coc.step(orbit, n - 1);
        for (Ray& r : rays) {
            r.dir = m * r.dir;
            const double f = r.dir.norm();
            r.log_scale += f == 0.0 ? neg_infinity() : std::log(f);
            if (f > 0.0) r.dir /= f;
        }
        const double tp = projective_angle(rays[0].dir);
        const double tm = projective_angle(rays[1].dir);
        const double ta = projective_angle(rays[2].dir);
        const bool endpoints_in = std::abs(tp) <= gamma && std::abs(tm) <= gamma;
        const bool axis_between = ta >= std::min(tp, tm) && ta <= std::max(tp, tm);
        const bool contained = endpoints_in && axis_between;
        rep.return_flags.push_back(contained ? 1 : 0);
        if (contained) ++rep.returns;
        const double growth =
            std::min({rays[0].log_scale, rays[1].log_scale, rays[2].log_scale});
        rep.growth_log.push_back(growth);
        if (contained) exp_min = std::min(exp_min, growth / n);
    }
    if (rep.returns > 0) rep.growth_exponent_min = exp_min;
    return rep;
}

}  // namespace srl
