// angles.hpp — Angle reduction and comparison helpers (radians everywhere)

#pragma once

#include <cmath>
#include <numbers>

namespace aqs {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Reduce an angle to the half-open interval (-pi, pi].
inline double normalize_angle(double a) {
    double r = std::remainder(a, two_pi);
    if (r <= -pi) r = pi;
    return r;
}

// Distance between two angles modulo 2*pi.
inline double angle_distance(double a, double b) {
    return std::abs(std::remainder(a - b, two_pi));
}

inline bool angles_equal(double a, double b, double tol = 1e-10) {
    return angle_distance(a, b) <= tol;
}

} // namespace aqs
