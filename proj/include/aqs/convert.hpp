// convert.hpp — Conversion between the spectral (E_p, E_o, alpha) and
// coupling (E_fg, E_f, phi) parameterizations relative to an initial state
// (beta, u).
//
// Coupling -> spectral:
//   E_p = E_fg + E_f cos(phi-u) sin(beta)
//   E_o = sqrt((E_f cos(phi-u) + E_fg sin(beta))^2
//              + E_f^2 sin^2(phi-u) cos^2(beta))
//   alpha = u + arg(E_f e^{i(phi-u)} + E_fg sin(beta))
//
// Spectral -> coupling:
//   E_fg = (E_p - E_o sin(beta) cos(alpha-u) / cos(gamma)) / cos^2(beta)
//   E_f e^{i(phi-u)} = (E_o / cos(gamma)) e^{i(alpha-u)} - E_fg sin(beta)
//
// Both are numeric and exact to rounding; they depend on the phases only
// through phi - u and alpha - u.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "aqs/geometry.hpp"
#include "aqs/params.hpp"

namespace aqs {

// to_spectral result. zero_gap flags a degenerate spectrum (E_o = 0), in
// which case alpha is fixed to 0 by convention since any phase is
// consistent. aligned_initial flags cos(gamma) = 0, where the mixing angle
// is unconstrained and x = pi/4 is returned by convention.
struct SpectralConversion {
    SpectralParams spectral;
    DerivedGeometry geometry;
    bool zero_gap{false};
    bool aligned_initial{false};
};

inline SpectralConversion to_spectral(const CouplingParams& cp, const InitialState& init) {
    const double theta = cp.phi - init.u;
    const double sb = std::sin(init.beta);
    const double cb = std::cos(init.beta);

    // E_f e^{i(phi-u)} + E_fg sin(beta), the off-diagonal coupling up to
    // the e^{iu} cos(beta) factor
    const double re = cp.e_f * std::cos(theta) + cp.e_fg * sb;
    const double im = cp.e_f * std::sin(theta);

    const double e_p = cp.e_fg + cp.e_f * std::cos(theta) * sb;
    const double e_o = std::hypot(re, im * cb);

    double alpha = 0.0;
    if (re != 0.0 || im != 0.0) {
        alpha = normalize_angle(init.u + std::atan2(im, re));
    }

    SpectralConversion out;
    out.spectral = SpectralParams{e_p, e_o, alpha};
    out.zero_gap = (e_o == 0.0);

    const double sg = sin_gamma(init, alpha);
    if (std::abs(sg) >= 1.0) {
        out.aligned_initial = true;
        out.geometry = DerivedGeometry{std::copysign(pi / 2.0, sg), pi / 4.0};
    } else {
        out.geometry = solve_mixing_angle(init, alpha);
    }
    return out;
}

// Inverse conversion. Fails for beta at pi/2 (the cos^2(beta) division) and
// for cos(gamma) = 0; both mean the initial state has no |w_perp> component
// left to couple through. Also fails when the spectral point would require
// a negative E_fg, which the coupling form cannot represent. Rounding-level
// negatives are clamped to zero. When the exchange coupling vanishes, phi
// is fixed to 0 by convention.
inline CouplingParams to_coupling(const SpectralParams& sp, const InitialState& init) {
    const double sb = std::sin(init.beta);
    const double cb = std::cos(init.beta);
    if (cb < 1e-9) {
        throw std::domain_error("to_coupling: beta at pi/2 leaves no |w_perp> component");
    }
    const double sg = sin_gamma(init, sp.alpha);
    if (std::abs(sg) >= 1.0) {
        throw std::domain_error(
            "to_coupling: initial state coincides with the marked state (cos(gamma) = 0)");
    }
    const double cg = std::sqrt((1.0 - sg) * (1.0 + sg));

    const double theta_a = sp.alpha - init.u;
    const double radius = sp.e_o / cg; // |E_f e^{i(phi-u)} + E_fg sin(beta)|

    double e_fg = (sp.e_p - radius * sb * std::cos(theta_a)) / (cb * cb);
    const double scale = std::max({1.0, std::abs(sp.e_p), sp.e_o});
    if (e_fg < 0.0 && e_fg >= -1e-12 * scale) {
        e_fg = 0.0;
    }
    if (e_fg < 0.0) {
        throw std::domain_error(
            "to_coupling: spectral point maps to a negative E_fg and is not "
            "representable with nonnegative coupling energies");
    }

    const double re = radius * std::cos(theta_a) - e_fg * sb;
    const double im = radius * std::sin(theta_a);
    const double e_f = std::hypot(re, im);
    const double phi = (e_f == 0.0) ? 0.0 : normalize_angle(init.u + std::atan2(im, re));
    return CouplingParams{e_fg, e_f, phi};
}

} // namespace aqs
