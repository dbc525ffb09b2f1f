// evolution.hpp — Time evolution under a Hamiltonian2: an exact closed-form
// propagator, an independent fixed-step RK4 integrator used as a numeric
// oracle, and the closed-form leak amplitude and success probability.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "aqs/hamiltonian.hpp"
#include "aqs/params.hpp"

namespace aqs {

// Exact propagator from the analytic 2x2 eigendecomposition. With
// N = (H - E_p I)/E_o (which satisfies N^2 = I), resumming
// e^{-iHt} = e^{-iE_1 t}|E_1><E_1| + e^{-iE_2 t}|E_2><E_2| gives
//
//   e^{-iHt} = e^{-iE_p t} (cos(E_o t) I - i sin(E_o t) N).
//
// A degenerate spectrum (E_o = 0 means H = E_p I) reduces to the global
// phase alone. Global phase is never stripped from the result.
inline QubitState propagate_exact(const Hamiltonian2& h, const QubitState& psi0, double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("propagate_exact: t must be >= 0");
    }
    if (t == 0.0) {
        return psi0;
    }
    const double e_p = h.e_p();
    const double e_o = h.e_o();
    const Cx phase = std::polar(1.0, -e_p * t);
    if (e_o == 0.0) {
        return {phase * psi0.a_w, phase * psi0.a_perp};
    }
    const double c = std::cos(e_o * t);
    const Cx ms{0.0, -std::sin(e_o * t) / e_o}; // -i sin(E_o t) / E_o
    const QubitState hp = h.apply(psi0);
    return {phase * (c * psi0.a_w + ms * (hp.a_w - e_p * psi0.a_w)),
            phase * (c * psi0.a_perp + ms * (hp.a_perp - e_p * psi0.a_perp))};
}

// RK4 integrator output. The state is returned exactly as integrated; the
// accumulated norm drift (norm - 1 for a unit input) is reported and never
// corrected.
struct NumericEvolution {
    QubitState state;
    double norm_drift{0.0};
};

namespace detail {

inline QubitState schrodinger_rhs(const Hamiltonian2& h, const QubitState& psi) {
    const QubitState hp = h.apply(psi);
    return {Cx{0.0, -1.0} * hp.a_w, Cx{0.0, -1.0} * hp.a_perp};
}

inline QubitState rk4_step(const Hamiltonian2& h, const QubitState& psi, double dt) {
    const QubitState k1 = schrodinger_rhs(h, psi);
    const QubitState k2 = schrodinger_rhs(
        h, {psi.a_w + 0.5 * dt * k1.a_w, psi.a_perp + 0.5 * dt * k1.a_perp});
    const QubitState k3 = schrodinger_rhs(
        h, {psi.a_w + 0.5 * dt * k2.a_w, psi.a_perp + 0.5 * dt * k2.a_perp});
    const QubitState k4 =
        schrodinger_rhs(h, {psi.a_w + dt * k3.a_w, psi.a_perp + dt * k3.a_perp});
    const double w = dt / 6.0;
    return {psi.a_w + w * (k1.a_w + 2.0 * k2.a_w + 2.0 * k3.a_w + k4.a_w),
            psi.a_perp + w * (k1.a_perp + 2.0 * k2.a_perp + 2.0 * k3.a_perp + k4.a_perp)};
}

} // namespace detail

// Classical fixed-step fourth-order Runge-Kutta on i d|psi>/dt = H|psi>,
// independent of the closed form above and used to cross-check it. Whole steps of
// dt are taken, plus one shorter final step to land on t exactly. The step
// guard dt * E_o <= 0.05 keeps the scheme well inside its accuracy region.
//
// Against the exact propagator the global error is bounded by C dt^4 t with
// C = rho^5 / 60, rho = |E_p| + E_o the spectral radius (twice the leading
// dt^5 rho^5 / 120 local term of the truncated exponential series).
inline NumericEvolution propagate_numeric(const Hamiltonian2& h, const QubitState& psi0,
                                          double t, double dt) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("propagate_numeric: t must be >= 0");
    }
    if (!(dt > 0.0) || dt * h.e_o() > 0.05) {
        throw std::invalid_argument(
            "propagate_numeric: need dt > 0 with dt * E_o <= 0.05");
    }
    if (t == 0.0) {
        return {psi0, 0.0};
    }
    QubitState psi = psi0;
    const auto whole_steps = static_cast<long long>(t / dt);
    for (long long i = 0; i < whole_steps; ++i) {
        psi = detail::rk4_step(h, psi, dt);
    }
    const double remainder = t - static_cast<double>(whole_steps) * dt;
    if (remainder > 0.0) {
        psi = detail::rk4_step(h, psi, remainder);
    }
    return {psi, psi.norm() - 1.0};
}

// Closed-form leak amplitude <w_perp| e^{-iHt} |s> for the spectral form at
// mixing angle x:
//
//   e^{-iE_p t} ((cos b cos(E_o t) - sin(a-u) sin(2x) sin b sin(E_o t))
//                + i (cos(2x) cos b - cos(a-u) sin(2x) sin b) sin(E_o t))
//
// The imaginary part's time-independent coefficient is the term the
// certainty condition zeroes.
inline Cx amplitude_perp(const SpectralParams& sp, double x, const InitialState& init,
                         double t) {
    const double sb = std::sin(init.beta);
    const double cb = std::cos(init.beta);
    const double c2x = std::cos(2.0 * x);
    const double s2x = std::sin(2.0 * x);
    const double theta_a = sp.alpha - init.u;
    const double ct = std::cos(sp.e_o * t);
    const double st = std::sin(sp.e_o * t);
    const Cx envelope{cb * ct - std::sin(theta_a) * s2x * sb * st,
                      (c2x * cb - std::cos(theta_a) * s2x * sb) * st};
    return std::polar(1.0, -sp.e_p * t) * envelope;
}

// Success probability for the tuned Hamiltonian:
//
//   P(t) = 1 - (cos^2(beta) / cos^2(gamma)) cos^2(E_o t + gamma)
//
// periodic with period pi/E_o and bounded below by 1 - cos^2 b / cos^2 g.
inline double probability_closed(const InitialState& init, double gamma, double e_o,
                                 double t) {
    const double cg = std::cos(gamma);
    if (std::abs(cg) < 1e-12) {
        throw std::domain_error("probability_closed: cos(gamma) = 0");
    }
    const double cb = std::cos(init.beta);
    const double osc = std::cos(e_o * t + gamma);
    return 1.0 - (cb * cb) / (cg * cg) * osc * osc;
}

struct TraceSample {
    double t{0.0};
    double p_w{0.0};
    Cx a_w{0.0, 0.0};
    Cx a_perp{0.0, 0.0};
};

// Uniformly sampled marked-state probability over [0, t_max], endpoints
// included. max_norm_drift is zero for exact traces and carries the largest
// reported integrator drift for numeric ones.
struct ProbabilityTrace {
    std::vector<TraceSample> samples;
    double t_max{0.0};
    double step{0.0};
    double max_norm_drift{0.0};
};

namespace detail {

inline void check_trace_args(double t_max, int n_samples) {
    if (!(t_max > 0.0)) {
        throw std::invalid_argument("trace: t_max must be > 0");
    }
    if (n_samples < 2) {
        throw std::invalid_argument("trace: need at least 2 samples");
    }
}

inline TraceSample make_sample(double t, const QubitState& psi) {
    return {t, psi.probability_w(), psi.a_w, psi.a_perp};
}

} // namespace detail

inline ProbabilityTrace trace(const Hamiltonian2& h, const QubitState& psi0, double t_max,
                              int n_samples) {
    detail::check_trace_args(t_max, n_samples);
    ProbabilityTrace out;
    out.t_max = t_max;
    out.step = t_max / (n_samples - 1);
    out.samples.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double t = (i == n_samples - 1) ? t_max : i * out.step;
        out.samples.push_back(detail::make_sample(t, propagate_exact(h, psi0, t)));
    }
    return out;
}

// Same grid, each sample integrated independently from t = 0 with the RK4
// oracle, so samples are reproducible regardless of evaluation order.
inline ProbabilityTrace trace_numeric(const Hamiltonian2& h, const QubitState& psi0,
                                      double t_max, int n_samples, double dt) {
    detail::check_trace_args(t_max, n_samples);
    ProbabilityTrace out;
    out.t_max = t_max;
    out.step = t_max / (n_samples - 1);
    out.samples.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double t = (i == n_samples - 1) ? t_max : i * out.step;
        const NumericEvolution ev = propagate_numeric(h, psi0, t, dt);
        out.samples.push_back(detail::make_sample(t, ev.state));
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(ev.norm_drift));
    }
    return out;
}

} // namespace aqs
