// geometry.hpp — The certainty condition: the auxiliary angle gamma and the
// eigenstate mixing angle x that make the marked state reachable with
// probability one.

#pragma once

#include <cmath>
#include <stdexcept>

#include "aqs/params.hpp"

namespace aqs {

// Output of solve_mixing_angle. gamma sets both the probability floor
// 1 - cos^2(beta)/cos^2(gamma) and the phase offset of the probability
// oscillation; x fixes the eigenstate rotation.
struct DerivedGeometry {
    double gamma{0.0}; // asin(sin(beta) sin(alpha - u)), in [-pi/2, pi/2]
    double x{0.0};     // mixing angle, in [0, pi/2]

    double cos_2x() const { return std::cos(2.0 * x); }
    double sin_2x() const { return std::sin(2.0 * x); }
};

// sin(gamma) = sin(beta) sin(alpha - u)
inline double sin_gamma(const InitialState& init, double alpha) {
    return std::sin(init.beta) * std::sin(alpha - init.u);
}

// Solve the certainty condition for the mixing angle:
//
//   cos(2x) = sin(beta) cos(alpha - u) / cos(gamma)
//   sin(2x) = cos(beta) / cos(gamma)
//
// which zeroes the time-independent part of the leak amplitude
// <w_perp|e^{-iHt}|s>. The two relations are consistent by the gamma
// definition, and sin(2x) >= 0 keeps x in [0, pi/2].
//
// Fails when |sin(beta) sin(alpha - u)| = 1: the initial state already is
// the marked state up to phase and every mixing angle works.
inline DerivedGeometry solve_mixing_angle(const InitialState& init, double alpha) {
    const double sg = sin_gamma(init, alpha);
    if (std::abs(sg) >= 1.0) {
        throw std::domain_error(
            "solve_mixing_angle: initial state coincides with the marked state "
            "(cos(gamma) = 0)");
    }
    const double cg = std::sqrt((1.0 - sg) * (1.0 + sg));
    const double c2x = std::sin(init.beta) * std::cos(alpha - init.u) / cg;
    const double s2x = std::cos(init.beta) / cg;
    return {std::asin(sg), 0.5 * std::atan2(s2x, c2x)};
}

} // namespace aqs
