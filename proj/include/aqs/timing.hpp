// timing.hpp — When to measure: the schedule of instants at which the
// marked state is found with probability one, and how much timing error the
// target probability leaves room for.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "aqs/convert.hpp"
#include "aqs/geometry.hpp"
#include "aqs/params.hpp"

namespace aqs {

// Arithmetic progression of measuring instants
//
//   t_j = ((2j - 1) pi/2 - gamma) / E_o,  j = 1, 2, ...
//
// spaced by the half Bohr period pi/E_o. degenerate marks the case where
// the initial state already is the marked state (cos(gamma) = 0); t_first
// is 0 there and the oscillation parameters lose their meaning.
struct MeasuringSchedule {
    double t_first{0.0};
    double period{0.0}; // pi / E_o
    double e_o{0.0};
    double gamma{0.0};
    double beta{0.0};
    bool degenerate{false};

    // j >= 1; instant(1) == t_first
    double instant(int j) const { return t_first + (j - 1) * period; }

    // 1 - cos^2(beta)/cos^2(gamma), the lowest value the probability takes
    double probability_floor() const {
        if (degenerate) {
            return 1.0;
        }
        const double cb = std::cos(beta);
        const double cg = std::cos(gamma);
        return 1.0 - (cb * cb) / (cg * cg);
    }

    // Largest |delta| with P(t_first + delta) >= p_threshold; see
    // tolerance_window below.
    double tolerance_halfwidth(double p_threshold) const;
};

// Build the schedule from a solved geometry. alpha must be the phase the
// geometry was solved for; it is cross-checked against gamma to catch
// mismatched pairs. Fails on a zero gap, where the probability is constant
// and no finite measuring time exists.
inline MeasuringSchedule measuring_times(const DerivedGeometry& geom,
                                         const InitialState& init, double alpha,
                                         double e_o) {
    if (!(e_o > 0.0)) {
        throw std::invalid_argument("measuring_times: zero energy gap, probability is constant");
    }
    if (std::abs(std::sin(geom.gamma) - sin_gamma(init, alpha)) > 1e-9) {
        throw std::invalid_argument("measuring_times: geometry does not match (init, alpha)");
    }
    MeasuringSchedule s;
    s.e_o = e_o;
    s.gamma = geom.gamma;
    s.beta = init.beta;
    s.period = pi / e_o;
    s.degenerate = std::abs(std::cos(geom.gamma)) < 1e-12;
    s.t_first = s.degenerate ? 0.0 : (pi / 2.0 - geom.gamma) / e_o;
    return s;
}

// First measuring time directly from the coupling parameters:
//
//   t_1 = (pi/2 - asin(E_f sin b sin(phi-u) / R)) / E_o
//   R   = |E_f e^{i(phi-u)} + E_fg sin b|,  E_o = R cos(gamma)
//
// Returns 0 when the initial state coincides with the marked state up to
// phase (|sin gamma| = 1); fails on a zero gap otherwise.
inline double first_time_from_coupling(const CouplingParams& cp, const InitialState& init) {
    const double theta = cp.phi - init.u;
    const double sb = std::sin(init.beta);
    const double cb = std::cos(init.beta);
    const double re = cp.e_f * std::cos(theta) + cp.e_fg * sb;
    const double im = cp.e_f * std::sin(theta);
    const double radius = std::hypot(re, im);
    const double sg = (radius > 0.0) ? sb * (im / radius) : 0.0;
    if (std::abs(sg) >= 1.0) {
        return 0.0;
    }
    const double e_o = std::hypot(re, im * cb);
    if (e_o == 0.0) {
        throw std::domain_error(
            "first_time_from_coupling: zero energy gap, probability is constant");
    }
    return (pi / 2.0 - std::asin(sg)) / e_o;
}

// Half-width of the timing window around t_1 that keeps the success
// probability at or above p_threshold. Not part of the closed-form results
// above; it follows in one line from the probability formula: at t_1 + d,
// P = 1 - (cos^2 b / cos^2 g) sin^2(E_o d), so
//
//   delta_max = asin(min(1, sqrt(1 - p) cos g / cos b)) / E_o,
//
// which scales exactly as 1/E_o (the Bohr-frequency sensitivity: a faster
// search needs a proportionally sharper clock). Thresholds at or below the
// probability floor are always satisfied and return the half period.
inline double tolerance_window(const InitialState& init, const DerivedGeometry& geom,
                               double e_o, double p_threshold) {
    if (!(p_threshold >= 0.0 && p_threshold <= 1.0)) {
        throw std::invalid_argument("tolerance_window: p_threshold must lie in [0, 1]");
    }
    if (!(e_o > 0.0)) {
        throw std::invalid_argument("tolerance_window: need a positive energy gap");
    }
    const double cb = std::cos(init.beta);
    const double cg = std::cos(geom.gamma);
    double arg = 1.0;
    if (cb > 0.0) {
        arg = std::min(1.0, std::sqrt(1.0 - p_threshold) * cg / cb);
    }
    return std::asin(arg) / e_o;
}

inline double MeasuringSchedule::tolerance_halfwidth(double p_threshold) const {
    return tolerance_window(InitialState{beta, 0.0}, DerivedGeometry{gamma, 0.0}, e_o,
                            p_threshold);
}

// High-level flows: full pipeline from either parameterization, returning
// the degenerate marker instead of failing when the initial state already
// is the marked state.

inline MeasuringSchedule schedule_from_spectral(const SpectralParams& sp,
                                                const InitialState& init) {
    const double sg = sin_gamma(init, sp.alpha);
    if (std::abs(sg) >= 1.0) {
        MeasuringSchedule s;
        s.e_o = sp.e_o;
        s.gamma = std::copysign(pi / 2.0, sg);
        s.beta = init.beta;
        s.period = (sp.e_o > 0.0) ? pi / sp.e_o : std::numeric_limits<double>::infinity();
        s.degenerate = true;
        return s;
    }
    if (sp.e_o == 0.0) {
        throw std::domain_error(
            "schedule_from_spectral: zero energy gap, probability is constant");
    }
    return measuring_times(solve_mixing_angle(init, sp.alpha), init, sp.alpha, sp.e_o);
}

inline MeasuringSchedule schedule_from_coupling(const CouplingParams& cp,
                                                const InitialState& init) {
    const SpectralConversion conv = to_spectral(cp, init);
    if (conv.aligned_initial) {
        MeasuringSchedule s;
        s.e_o = conv.spectral.e_o;
        s.gamma = conv.geometry.gamma;
        s.beta = init.beta;
        s.period = (conv.spectral.e_o > 0.0) ? pi / conv.spectral.e_o
                                             : std::numeric_limits<double>::infinity();
        s.degenerate = true;
        return s;
    }
    if (conv.zero_gap) {
        throw std::domain_error(
            "schedule_from_coupling: zero energy gap, probability is constant");
    }
    return measuring_times(conv.geometry, init, conv.spectral.alpha, conv.spectral.e_o);
}

} // namespace aqs
