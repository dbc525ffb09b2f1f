// hamiltonian.hpp — The 2x2 Hermitian search Hamiltonian in every
// parameterization, plus the named special cases it reduces to
// (Farhi-Gutmann, Fenner, Bae-Kwon).

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "aqs/convert.hpp"
#include "aqs/geometry.hpp"
#include "aqs/params.hpp"

namespace aqs {

// Hermitian 2x2 operator in the (|w>, |w_perp>) basis. Hermiticity is
// structural: the diagonal is stored real and the lower off-diagonal is
// derived as the conjugate of the upper one.
struct Hamiltonian2 {
    double h_ww{0.0};
    double h_pp{0.0};
    Cx h_wp{0.0, 0.0};

    Cx h_pw() const { return std::conj(h_wp); }

    double trace() const { return h_ww + h_pp; }
    double e_p() const { return 0.5 * (h_ww + h_pp); }
    double e_o() const { return std::hypot(0.5 * (h_ww - h_pp), std::abs(h_wp)); }

    // H |psi>, unnormalized
    QubitState apply(const QubitState& psi) const {
        return {h_ww * psi.a_w + h_wp * psi.a_perp,
                std::conj(h_wp) * psi.a_w + h_pp * psi.a_perp};
    }
};

// Spectral form for an arbitrary mixing angle x:
//
//   [ E_p + E_o cos(2x)        E_o sin(2x) e^{+i alpha} ]
//   [ E_o sin(2x) e^{-i alpha} E_p - E_o cos(2x)        ]
//
// Eigenvalues are E_p +- E_o for every x.
inline Hamiltonian2 from_spectral_angle(const SpectralParams& sp, double x) {
    const double c2x = std::cos(2.0 * x);
    const double s2x = std::sin(2.0 * x);
    return {sp.e_p + sp.e_o * c2x,
            sp.e_p - sp.e_o * c2x,
            std::polar(1.0, sp.alpha) * (sp.e_o * s2x)};
}

// Spectral form with x solved from the certainty condition: this is the
// Hamiltonian that drives |s> onto |w> with probability one at the first
// measuring time. Fails when the initial state already is the marked state
// (cos(gamma) = 0), where any Hamiltonian works and the measuring time is 0.
inline Hamiltonian2 from_spectral_tuned(const SpectralParams& sp, const InitialState& init) {
    return from_spectral_angle(sp, solve_mixing_angle(init, sp.alpha).x);
}

// Coupling form, assembled entrywise:
//
//   [ E_fg(1 + sin^2 b) + 2 E_f cos(phi-u) sin b   e^{iu}(E_f e^{i(phi-u)} + E_fg sin b) cos b ]
//   [ conj.                                        E_fg cos^2 b                                ]
//
// Identical to E_fg(|w><w| + |s><s|) + E_f(e^{i phi}|w><s| + e^{-i phi}|s><w|)
// written out in this basis, and to the tuned spectral form of the converted
// parameters. Division-free, so no degenerate inputs exist.
inline Hamiltonian2 from_coupling(const CouplingParams& cp, const InitialState& init) {
    const double theta = cp.phi - init.u;
    const double sb = std::sin(init.beta);
    const double cb = std::cos(init.beta);
    const Cx coupling{cp.e_f * std::cos(theta) + cp.e_fg * sb, cp.e_f * std::sin(theta)};
    return {cp.e_fg * (1.0 + sb * sb) + 2.0 * cp.e_f * std::cos(theta) * sb,
            cp.e_fg * cb * cb,
            std::polar(1.0, init.u) * coupling * cb};
}

// Real-coupling special case (phi a multiple of pi, u = 0):
//
//   [ E_fg(1 + sin^2 b) +- 2 E_f sin b   (E_fg sin b +- E_f) cos b ]
//   [ (E_fg sin b +- E_f) cos b          E_fg cos^2 b              ]
//
// Upper signs for phi = 0, lower signs for phi = pi; agrees entrywise with
// from_coupling at those phases.
inline Hamiltonian2 bae_kwon(const CouplingParams& cp, const InitialState& init) {
    if (std::abs(std::remainder(cp.phi, pi)) > 1e-12) {
        throw std::invalid_argument("bae_kwon: phi must be a multiple of pi");
    }
    if (std::abs(init.u) > 1e-12) {
        throw std::invalid_argument("bae_kwon: requires u = 0");
    }
    const double sign = (std::abs(std::remainder(cp.phi, two_pi)) < pi / 2.0) ? 1.0 : -1.0;
    const double sb = std::sin(init.beta);
    const double cb = std::cos(init.beta);
    return {cp.e_fg * (1.0 + sb * sb) + sign * 2.0 * cp.e_f * sb,
            cp.e_fg * cb * cb,
            Cx{(cp.e_fg * sb + sign * cp.e_f) * cb, 0.0}};
}

} // namespace aqs
