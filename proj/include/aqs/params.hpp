// params.hpp — Domain types for two-level search dynamics: the two
// Hamiltonian parameterizations, the prepared initial state, and
// two-component states in the {|w>, |w_perp>} basis.
//
// Conventions: hbar = 1 and energies are dimensionless, so times carry
// inverse-energy units. All angles are radians. |w> is the marked state;
// |w_perp> spans the rest of the two-dimensional search subspace. Matrix
// and state component order is (|w>, |w_perp>) throughout.

#pragma once

#include <complex>
#include <stdexcept>

#include "aqs/angles.hpp"

namespace aqs {

using Cx = std::complex<double>;

// Eigen-side parameterization: mean energy E_p = (E1+E2)/2, half-gap
// E_o = (E1-E2)/2 >= 0, and the phase alpha of the upper eigenstate's
// component along |w>. E_o = 0 is the degenerate (flat) spectrum.
struct SpectralParams {
    double e_p{0.0};
    double e_o{0.0};
    double alpha{0.0};

    SpectralParams() = default;
    SpectralParams(double mean_energy, double half_gap, double phase)
        : e_p(mean_energy), e_o(half_gap), alpha(normalize_angle(phase)) {
        if (!(e_o >= 0.0)) {
            throw std::invalid_argument("SpectralParams: half-gap must be >= 0");
        }
    }

    double e1() const { return e_p + e_o; }
    double e2() const { return e_p - e_o; }
    bool degenerate() const { return e_o == 0.0; }
};

// Construction-side parameterization: E_fg scales |w><w| + |s><s|, E_f
// scales the phase-rotated exchange term e^{i phi}|w><s| + h.c. Both
// energies are nonnegative; signs live in the phases.
struct CouplingParams {
    double e_fg{0.0};
    double e_f{0.0};
    double phi{0.0};

    CouplingParams() = default;
    CouplingParams(double projector_energy, double exchange_energy, double phase)
        : e_fg(projector_energy), e_f(exchange_energy), phi(normalize_angle(phase)) {
        if (!(e_fg >= 0.0) || !(e_f >= 0.0)) {
            throw std::invalid_argument("CouplingParams: energies must be >= 0");
        }
    }
};

// Prepared state |s> = e^{iu} sin(beta)|w> + cos(beta)|w_perp>. beta is
// restricted to [0, pi/2] so both amplitude magnitudes are nonnegative;
// other quadrants are re-expressible through u.
struct InitialState {
    double beta{0.0};
    double u{0.0};

    InitialState() = default;
    InitialState(double overlap_angle, double phase)
        : beta(overlap_angle), u(normalize_angle(phase)) {
        if (!(beta >= 0.0 && beta <= pi / 2.0)) {
            throw std::invalid_argument("InitialState: beta must lie in [0, pi/2]");
        }
    }
};

// Two complex amplitudes in the (|w>, |w_perp>) order. Unit norm within
// 1e-12 for every state produced by the builders and the exact propagator;
// integrator output may drift and reports it instead of renormalizing.
struct QubitState {
    Cx a_w{1.0, 0.0};
    Cx a_perp{0.0, 0.0};

    double norm() const { return std::sqrt(std::norm(a_w) + std::norm(a_perp)); }
    double probability_w() const { return std::norm(a_w); }

    // <this|other>
    Cx overlap(const QubitState& other) const {
        return std::conj(a_w) * other.a_w + std::conj(a_perp) * other.a_perp;
    }

    bool is_normalized(double tol = 1e-12) const {
        return std::abs(norm() - 1.0) <= tol;
    }
};

inline QubitState marked_state() { return {Cx{1.0, 0.0}, Cx{0.0, 0.0}}; }
inline QubitState perp_state() { return {Cx{0.0, 0.0}, Cx{1.0, 0.0}}; }

inline QubitState initial_state(const InitialState& init) {
    return {std::polar(std::sin(init.beta), init.u), Cx{std::cos(init.beta), 0.0}};
}

} // namespace aqs
