// fullspace.hpp — Brute-force N-dimensional oracle: assembles the search
// Hamiltonian on the full item space from outer products and integrates the
// Schrodinger equation there, to check that the dynamics really is the
// two-level closed form restricted to span{|w>, |w_perp>}.
//
// Dense storage throughout; this module is a correctness oracle, not a
// performance artifact, and N is capped accordingly.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "aqs/convert.hpp"
#include "aqs/evolution.hpp"
#include "aqs/params.hpp"

namespace aqs {

inline constexpr int fullspace_max_items = 4096;

// A search over n_items with the listed marked indices. The prepared state
// is the uniform superposition over all items with an extra phase u on its
// marked component, so sin(beta) = sqrt(M/N).
struct SearchInstance {
    int n_items{2};
    std::vector<int> marked;
    double u{0.0};

    SearchInstance(int n, std::vector<int> marked_indices, double phase = 0.0)
        : n_items(n), marked(std::move(marked_indices)), u(normalize_angle(phase)) {
        if (n_items < 2) {
            throw std::invalid_argument("SearchInstance: need at least 2 items");
        }
        std::sort(marked.begin(), marked.end());
        if (marked.empty() || static_cast<int>(marked.size()) >= n_items) {
            throw std::invalid_argument(
                "SearchInstance: marked set must be a nonempty proper subset");
        }
        if (marked.front() < 0 || marked.back() >= n_items ||
            std::adjacent_find(marked.begin(), marked.end()) != marked.end()) {
            throw std::invalid_argument("SearchInstance: marked indices must be unique "
                                        "and within [0, n_items)");
        }
    }

    int m() const { return static_cast<int>(marked.size()); }
    double sin_beta() const {
        return std::sqrt(static_cast<double>(m()) / static_cast<double>(n_items));
    }
    double beta() const { return std::asin(sin_beta()); }
    InitialState initial() const { return InitialState{beta(), u}; }
};

// |w>: normalized uniform superposition over the marked items.
inline Eigen::VectorXcd marked_vector(const SearchInstance& inst) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(inst.n_items);
    const double amp = 1.0 / std::sqrt(static_cast<double>(inst.m()));
    for (int i : inst.marked) {
        w(i) = Cx{amp, 0.0};
    }
    return w;
}

// |s>: global uniform superposition with phase e^{iu} on the marked items.
inline Eigen::VectorXcd uniform_vector(const SearchInstance& inst) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(inst.n_items));
    Eigen::VectorXcd s = Eigen::VectorXcd::Constant(inst.n_items, Cx{amp, 0.0});
    const Cx phased = std::polar(amp, inst.u);
    for (int i : inst.marked) {
        s(i) = phased;
    }
    return s;
}

// |w_perp>: the component of |s> orthogonal to |w>, normalized. Works out
// to the uniform superposition over the unmarked items, independent of u.
inline Eigen::VectorXcd perp_vector(const SearchInstance& inst) {
    Eigen::VectorXcd p = Eigen::VectorXcd::Zero(inst.n_items);
    const double amp =
        1.0 / std::sqrt(static_cast<double>(inst.n_items - inst.m()));
    std::size_t next_marked = 0;
    for (int i = 0; i < inst.n_items; ++i) {
        if (next_marked < inst.marked.size() && inst.marked[next_marked] == i) {
            ++next_marked;
        } else {
            p(i) = Cx{amp, 0.0};
        }
    }
    return p;
}

// H = E_fg (|w><w| + |s><s|) + E_f (e^{i phi} |w><s| + e^{-i phi} |s><w|),
// rank <= 2 and Hermitian by construction. Restricted to span{|w>,|w_perp>}
// it equals the 2x2 coupling-form Hamiltonian for beta = asin(sqrt(M/N)).
inline Eigen::MatrixXcd build_full_hamiltonian(const SearchInstance& inst,
                                               const CouplingParams& cp) {
    if (inst.n_items > fullspace_max_items) {
        throw std::invalid_argument("build_full_hamiltonian: n_items exceeds the dense "
                                    "oracle cap of 4096");
    }
    const Eigen::VectorXcd w = marked_vector(inst);
    const Eigen::VectorXcd s = uniform_vector(inst);
    const Cx exchange = std::polar(cp.e_f, cp.phi);
    Eigen::MatrixXcd h = cp.e_fg * (w * w.adjoint() + s * s.adjoint());
    h.noalias() += exchange * (w * s.adjoint());
    h.noalias() += std::conj(exchange) * (s * w.adjoint());
    return h;
}

// RK4 on the full space, sampling the total marked-subspace probability at
// every step. The guard requires dt * (|E_p| + E_o) <= 0.05, the spectral
// radius of the rank-2 operator.
inline ProbabilityTrace evolve_full(const SearchInstance& inst, const CouplingParams& cp,
                                    double t_max, double dt) {
    if (!(t_max > 0.0)) {
        throw std::invalid_argument("evolve_full: t_max must be > 0");
    }
    const SpectralConversion conv = to_spectral(cp, inst.initial());
    const double radius = std::abs(conv.spectral.e_p) + conv.spectral.e_o;
    if (!(dt > 0.0) || dt * radius > 0.05) {
        throw std::invalid_argument(
            "evolve_full: need dt > 0 with dt * (|E_p| + E_o) <= 0.05");
    }

    const Eigen::MatrixXcd h = build_full_hamiltonian(inst, cp);
    const Eigen::VectorXcd w = marked_vector(inst);
    const Eigen::VectorXcd p = perp_vector(inst);
    const Cx minus_i{0.0, -1.0};

    const auto rhs = [&](const Eigen::VectorXcd& psi) -> Eigen::VectorXcd {
        return minus_i * (h * psi);
    };
    const auto step = [&](Eigen::VectorXcd& psi, double step_dt) {
        const Eigen::VectorXcd k1 = rhs(psi);
        const Eigen::VectorXcd k2 = rhs(psi + 0.5 * step_dt * k1);
        const Eigen::VectorXcd k3 = rhs(psi + 0.5 * step_dt * k2);
        const Eigen::VectorXcd k4 = rhs(psi + step_dt * k3);
        psi += (step_dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    Eigen::VectorXcd psi = uniform_vector(inst);
    ProbabilityTrace out;
    out.t_max = t_max;
    out.step = dt;

    const auto record = [&](double t) {
        double p_marked = 0.0;
        for (int i : inst.marked) {
            p_marked += std::norm(psi(i));
        }
        out.samples.push_back({t, p_marked, w.dot(psi), p.dot(psi)});
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(psi.norm() - 1.0));
    };

    record(0.0);
    const auto whole_steps = static_cast<long long>(t_max / dt);
    for (long long i = 1; i <= whole_steps; ++i) {
        step(psi, dt);
        record(static_cast<double>(i) * dt);
    }
    const double remainder = t_max - static_cast<double>(whole_steps) * dt;
    if (remainder > 0.0) {
        step(psi, remainder);
        record(t_max);
    }
    return out;
}

} // namespace aqs
