#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "srl/common.hpp"
#include "srl/linalg.hpp"

namespace srl {

/// Measure-preserving driving system: a Bernoulli full shift, a stationary
/// Markov shift, or a circle rotation.  All three support two-sided orbits,
/// so the invertible experiments can look into the past.
struct DrivingSystem {
    enum class Kind { full_shift, markov_shift, circle_rotation };

    Kind kind = Kind::full_shift;
    std::vector<double> probs;        // full_shift symbol distribution
    Matrix transition;                // markov_shift row-stochastic matrix
    std::vector<double> stationary;   // markov_shift stationary vector
    double angle = 0.0;               // circle_rotation, taken mod 1
    std::uint64_t seed = 0;

    int symbol_count() const {
        switch (kind) {
            case Kind::full_shift: return static_cast<int>(probs.size());
            case Kind::markov_shift: return static_cast<int>(stationary.size());
            case Kind::circle_rotation: return 0;
        }
        return 0;
    }

    void validate() const {
        switch (kind) {
            case Kind::full_shift: {
                if (probs.empty()) throw validation_error("DrivingSystem: empty probability vector");
                double sum = 0.0;
                for (double p : probs) {
                    if (!(p >= 0.0)) throw validation_error("DrivingSystem: negative probability");
                    sum += p;
                }
                if (std::abs(sum - 1.0) > 1e-12)
                    throw validation_error("DrivingSystem: probabilities sum to " + std::to_string(sum));
                break;
            }
            case Kind::markov_shift: {
                const int k = static_cast<int>(stationary.size());
                if (k == 0) throw validation_error("DrivingSystem: empty stationary vector");
                if (transition.rows() != k || transition.cols() != k)
                    throw dimension_error("DrivingSystem: transition matrix is not " +
                                          std::to_string(k) + "x" + std::to_string(k));
                double ssum = 0.0;
                for (double p : stationary) {
                    if (!(p > 0.0))
                        throw validation_error(
                            "DrivingSystem: stationary entries must be positive (two-sided sampling)");
                    ssum += p;
                }
                if (std::abs(ssum - 1.0) > 1e-12)
                    throw validation_error("DrivingSystem: stationary vector sums to " +
                                           std::to_string(ssum));
                for (int i = 0; i < k; ++i) {
                    double rsum = 0.0;
                    for (int j = 0; j < k; ++j) {
                        if (!(transition(i, j) >= 0.0))
                            throw validation_error("DrivingSystem: negative transition probability");
                        rsum += transition(i, j);
                    }
                    if (std::abs(rsum - 1.0) > 1e-12)
                        throw validation_error("DrivingSystem: transition row " + std::to_string(i) +
                                               " sums to " + std::to_string(rsum));
                }
                // stationarity pi P = pi
                for (int j = 0; j < k; ++j) {
                    double v = 0.0;
                    for (int i = 0; i < k; ++i) v += stationary[static_cast<std::size_t>(i)] * transition(i, j);
                    if (std::abs(v - stationary[static_cast<std::size_t>(j)]) > 1e-9)
                        throw validation_error("DrivingSystem: vector is not stationary for the chain");
                }
                break;
            }
            case Kind::circle_rotation:
                if (!std::isfinite(angle)) throw validation_error("DrivingSystem: non-finite angle");
                break;
        }
    }
};

inline DrivingSystem bernoulli_shift(std::vector<double> probs, std::uint64_t seed) {
    DrivingSystem sys;
    sys.kind = DrivingSystem::Kind::full_shift;
    sys.probs = std::move(probs);
    sys.seed = seed;
    sys.validate();
    return sys;
}

inline DrivingSystem circle_rotation(double angle, std::uint64_t seed) {
    DrivingSystem sys;
    sys.kind = DrivingSystem::Kind::circle_rotation;
    sys.angle = angle - std::floor(angle);
    sys.seed = seed;
    return sys;
}

/// A window of a two-sided orbit: forward coordinates 0..n-1 plus `past`
/// coordinates -1, -2, ..., -past.  Forward coordinates are drawn from the
/// seeded stream first, so they do not depend on how much past is requested.
struct Orbit {
    std::vector<int> symbols;        // forward, shift kinds
    std::vector<int> past_symbols;   // past_symbols[k] is the symbol at -(k+1)
    std::vector<double> points;      // forward, rotation kind
    std::vector<double> past_points;
    bool symbolic = true;

    int length() const { return static_cast<int>(symbolic ? symbols.size() : points.size()); }
    int past_length() const {
        return static_cast<int>(symbolic ? past_symbols.size() : past_points.size());
    }

    int symbol_at(int k) const {
        if (k >= 0) return symbols.at(static_cast<std::size_t>(k));
        return past_symbols.at(static_cast<std::size_t>(-k - 1));
    }
    double point_at(int k) const {
        if (k >= 0) return points.at(static_cast<std::size_t>(k));
        return past_points.at(static_cast<std::size_t>(-k - 1));
    }
};

namespace detail {

inline int sample_index(const std::vector<double>& weights, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

}  // namespace detail

inline Orbit generate_orbit(const DrivingSystem& sys, int n, int past = 0) {
    sys.validate();
    if (n < 1) throw validation_error("generate_orbit: n must be >= 1");
    if (past < 0) throw validation_error("generate_orbit: past must be >= 0");
    std::mt19937_64 gen(sys.seed);
    Orbit orbit;

    switch (sys.kind) {
        case DrivingSystem::Kind::full_shift: {
            orbit.symbolic = true;
            orbit.symbols.reserve(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k)
                orbit.symbols.push_back(detail::sample_index(sys.probs, uniform_unit(gen())));
            for (int k = 0; k < past; ++k)
                orbit.past_symbols.push_back(detail::sample_index(sys.probs, uniform_unit(gen())));
            break;
        }
        case DrivingSystem::Kind::markov_shift: {
            orbit.symbolic = true;
            const int m = sys.symbol_count();
            int state = detail::sample_index(sys.stationary, uniform_unit(gen()));
            orbit.symbols.push_back(state);
            std::vector<double> row(static_cast<std::size_t>(m));
            for (int k = 1; k < n; ++k) {
                for (int j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = sys.transition(state, j);
                state = detail::sample_index(row, uniform_unit(gen()));
                orbit.symbols.push_back(state);
            }
            // time-reversed kernel: P(prev = i | cur = j) = pi_i P_ij / pi_j
            int cur = orbit.symbols.front();
            for (int k = 0; k < past; ++k) {
                for (int i = 0; i < m; ++i)
                    row[static_cast<std::size_t>(i)] = sys.stationary[static_cast<std::size_t>(i)] *
                                                       sys.transition(i, cur) /
                                                       sys.stationary[static_cast<std::size_t>(cur)];
                cur = detail::sample_index(row, uniform_unit(gen()));
                orbit.past_symbols.push_back(cur);
            }
            break;
        }
        case DrivingSystem::Kind::circle_rotation: {
            orbit.symbolic = false;
            const double x0 = uniform_unit(gen());
            auto frac = [](double x) { return x - std::floor(x); };
            for (int k = 0; k < n; ++k) orbit.points.push_back(frac(x0 + k * sys.angle));
            for (int k = 1; k <= past; ++k) orbit.past_points.push_back(frac(x0 - k * sys.angle));
            break;
        }
    }
    return orbit;
}

}  // namespace srl
