// Exact propagator, RK4 oracle, and the closed-form amplitude and
// probability, cross-checked against each other.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "aqs/evolution.hpp"
#include "aqs/geometry.hpp"
#include "aqs/hamiltonian.hpp"
#include "test_helpers.hpp"

using namespace aqs;
using testutil::cx_near;
using testutil::near;
using testutil::Rng;
using testutil::same_state;

TEST_CASE("propagate_exact: identity Hamiltonian is a pure global phase") {
    const Hamiltonian2 h{1.0, 1.0, Cx{0.0, 0.0}};
    Rng rng{31};
    const QubitState psi0 = rng.unit_state();
    const QubitState psi = propagate_exact(h, psi0, two_pi);
    CHECK(same_state(psi, psi0, 1e-14));
    CHECK(cx_near(psi.a_w, psi0.a_w, 1e-14)); // e^{-2 pi i} = 1
    CHECK(cx_near(psi.a_perp, psi0.a_perp, 1e-14));
}

TEST_CASE("propagate_exact: exchange generator gives full population transfer") {
    const Hamiltonian2 h{0.0, 0.0, Cx{1.0, 0.0}};
    const QubitState psi = propagate_exact(h, perp_state(), pi / 2.0);
    CHECK(cx_near(psi.a_w, Cx{0.0, -1.0}, 1e-14));
    CHECK(cx_near(psi.a_perp, Cx{0.0, 0.0}, 1e-14));
}

TEST_CASE("propagate_exact: tuned Hamiltonian reaches the marked state at t_1") {
    const InitialState init{pi / 6.0, 0.0};
    const Hamiltonian2 h = from_spectral_tuned({1.0, 1.0, 0.0}, init);
    const QubitState psi = propagate_exact(h, initial_state(init), pi / 2.0);
    CHECK(same_state(psi, marked_state(), 1e-12));
    CHECK(near(psi.probability_w(), 1.0, 1e-12));
}

TEST_CASE("propagate_exact: t = 0 returns the input bitwise, t < 0 is rejected") {
    const Hamiltonian2 h{1.0, -0.5, Cx{0.3, 0.7}};
    Rng rng{32};
    const QubitState psi0 = rng.unit_state();
    const QubitState back = propagate_exact(h, psi0, 0.0);
    CHECK(back.a_w == psi0.a_w);
    CHECK(back.a_perp == psi0.a_perp);
    CHECK_THROWS_AS(propagate_exact(h, psi0, -1.0), std::invalid_argument);
}

TEST_CASE("propagate_exact conserves the norm") {
    Rng rng{33};
    for (int i = 0; i < 500; ++i) {
        const SpectralParams sp = rng.spectral();
        const Hamiltonian2 h = from_spectral_angle(sp, rng.uniform(0.0, pi / 2.0));
        const QubitState psi0 = rng.unit_state();
        const double t = rng.uniform(0.0, 100.0 / sp.e_o);
        CHECK(near(propagate_exact(h, psi0, t).norm(), 1.0, 1e-12));
    }
}

TEST_CASE("propagate_exact composes over time") {
    Rng rng{34};
    for (int i = 0; i < 300; ++i) {
        const SpectralParams sp = rng.spectral();
        const Hamiltonian2 h = from_spectral_angle(sp, rng.uniform(0.0, pi / 2.0));
        const QubitState psi0 = rng.unit_state();
        const double t1 = rng.uniform(0.0, 10.0 / sp.e_o);
        const double t2 = rng.uniform(0.0, 10.0 / sp.e_o);
        const QubitState once = propagate_exact(h, psi0, t1 + t2);
        const QubitState twice = propagate_exact(h, propagate_exact(h, psi0, t1), t2);
        CHECK(cx_near(once.a_w, twice.a_w, 1e-11));
        CHECK(cx_near(once.a_perp, twice.a_perp, 1e-11));
    }
}

TEST_CASE("propagate_numeric: step guard and exact t = 0") {
    const Hamiltonian2 h{0.0, 0.0, Cx{1.0, 0.0}}; // E_o = 1
    const QubitState psi0 = perp_state();
    CHECK_THROWS_AS(propagate_numeric(h, psi0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(propagate_numeric(h, psi0, 1.0, 0.0), std::invalid_argument);
    const NumericEvolution ev = propagate_numeric(h, psi0, 0.0, 1e-3);
    CHECK(ev.state.a_w == psi0.a_w);
    CHECK(ev.norm_drift == 0.0);
}

TEST_CASE("propagate_numeric matches the population-transfer closed form") {
    const Hamiltonian2 h{0.0, 0.0, Cx{1.0, 0.0}};
    const NumericEvolution ev = propagate_numeric(h, perp_state(), pi / 2.0, 1e-3);
    CHECK(cx_near(ev.state.a_w, Cx{0.0, -1.0}, 1e-9));
    CHECK(cx_near(ev.state.a_perp, Cx{0.0, 0.0}, 1e-9));
    // drift is reported, never corrected away
    CHECK(ev.norm_drift == ev.state.norm() - 1.0);
    CHECK(std::abs(ev.norm_drift) < 1e-12);
}

TEST_CASE("propagate_numeric stays inside the documented dt^4 envelope") {
    Rng rng{35};
    for (int i = 0; i < 50; ++i) {
        const SpectralParams sp = rng.spectral(0.5);
        const Hamiltonian2 h = from_spectral_angle(sp, rng.uniform(0.0, pi / 2.0));
        const QubitState psi0 = rng.unit_state();
        const double t = rng.uniform(0.1, 10.0);
        const double dt = 0.04 / sp.e_o;
        const QubitState exact = propagate_exact(h, psi0, t);
        const QubitState num = propagate_numeric(h, psi0, t, dt).state;
        const double err = std::max(std::abs(exact.a_w - num.a_w),
                                    std::abs(exact.a_perp - num.a_perp));
        const double rho = std::abs(sp.e_p) + sp.e_o;
        const double bound = std::max(1e-8, std::pow(rho, 5) / 60.0 * std::pow(dt, 4) * t);
        CHECK(err <= bound);
    }
}

TEST_CASE("propagate_numeric error scales as dt^4") {
    const Hamiltonian2 h = from_spectral_angle({1.0, 1.0, 0.3}, 0.6);
    Rng rng{36};
    const QubitState psi0 = rng.unit_state();
    const double t = 20.0;
    const auto err_at = [&](double dt) {
        const QubitState exact = propagate_exact(h, psi0, t);
        const QubitState num = propagate_numeric(h, psi0, t, dt).state;
        return std::max(std::abs(exact.a_w - num.a_w), std::abs(exact.a_perp - num.a_perp));
    };
    const double e1 = err_at(1e-2);
    const double e2 = err_at(5e-3);
    const double e3 = err_at(2.5e-3);
    CHECK(e1 / e2 > 8.0);
    CHECK(e1 / e2 < 32.0);
    CHECK(e2 / e3 > 8.0);
    CHECK(e2 / e3 < 32.0);
}

TEST_CASE("RK4 oracle confirms the pure-exchange first measuring time") {
    const CouplingParams cp{0.0, 1.0, pi / 2.0};
    const InitialState init{pi / 6.0, 0.0};
    const double t1 = 2.0 * pi / (3.0 * std::sqrt(3.0));
    const Hamiltonian2 h = from_coupling(cp, init);
    const NumericEvolution ev = propagate_numeric(h, initial_state(init), t1, 1e-3);
    CHECK(ev.state.probability_w() >= 1.0 - 1e-8);
}

TEST_CASE("amplitude_perp: value at t = 0 is cos(beta)") {
    Rng rng{37};
    for (int i = 0; i < 100; ++i) {
        const SpectralParams sp = rng.spectral();
        const InitialState init = rng.init_state(0.0, pi / 2.0);
        const Cx a = amplitude_perp(sp, rng.uniform(0.0, pi / 2.0), init, 0.0);
        CHECK(cx_near(a, Cx{std::cos(init.beta), 0.0}, 1e-15));
    }
}

TEST_CASE("amplitude_perp vanishes at the first measuring time for the tuned angle") {
    const SpectralParams sp{1.0, 1.0, 0.0};
    const InitialState init{pi / 6.0, 0.0};
    const DerivedGeometry geom = solve_mixing_angle(init, sp.alpha);
    CHECK(near(std::abs(amplitude_perp(sp, geom.x, init, pi / 2.0)), 0.0, 1e-12));
}

TEST_CASE("amplitude_perp: bare two-level phase evolution") {
    // E_p = 0, E_o = 1, alpha = 0, x = 0, beta = 0: amplitude is e^{it}
    const SpectralParams sp{0.0, 1.0, 0.0};
    const InitialState init{0.0, 0.0};
    for (double t : {0.0, 0.4, 1.3, 2.9}) {
        CHECK(cx_near(amplitude_perp(sp, 0.0, init, t), Cx{std::cos(t), std::sin(t)}, 1e-14));
    }
}

TEST_CASE("amplitude_perp equals the assembled propagator matrix element") {
    Rng rng{38};
    for (int i = 0; i < 300; ++i) {
        const SpectralParams sp = rng.spectral();
        const InitialState init = rng.init_state(0.0, pi / 2.0);
        const double x = rng.uniform(0.0, pi / 2.0);
        const double t = rng.uniform(0.0, 20.0 / sp.e_o);
        const QubitState psi =
            propagate_exact(from_spectral_angle(sp, x), initial_state(init), t);
        CHECK(cx_near(amplitude_perp(sp, x, init, t), psi.a_perp, 1e-12));
        // two-component unitarity
        CHECK(near(std::norm(amplitude_perp(sp, x, init, t)) + std::norm(psi.a_w), 1.0,
                   1e-12));
    }
}

TEST_CASE("probability_closed: hand-evaluated points") {
    const InitialState init{pi / 6.0, 0.0};
    CHECK(near(probability_closed(init, 0.0, 1.0, 0.0), 0.25, 1e-15)); // sin^2(beta)
    CHECK(near(probability_closed(init, 0.0, 1.0, pi / 2.0), 1.0, 1e-15));
    CHECK(near(probability_closed(init, 0.0, 1.0, pi), 0.25, 1e-15));
    CHECK_THROWS_AS(probability_closed(init, pi / 2.0, 1.0, 0.3), std::domain_error);
}

TEST_CASE("probability_closed agrees with the leak amplitude at the tuned angle") {
    Rng rng{39};
    for (int i = 0; i < 300; ++i) {
        const SpectralParams sp = rng.spectral();
        const InitialState init = rng.init_state();
        const DerivedGeometry geom = solve_mixing_angle(init, sp.alpha);
        const double t = rng.uniform(0.0, 10.0 / sp.e_o);
        const double p = probability_closed(init, geom.gamma, sp.e_o, t);
        const double leak = std::norm(amplitude_perp(sp, geom.x, init, t));
        CHECK(near(p, 1.0 - leak, 1e-12));
    }
}

TEST_CASE("probability_closed is periodic with the half Bohr period") {
    Rng rng{40};
    for (int i = 0; i < 200; ++i) {
        const SpectralParams sp = rng.spectral();
        const InitialState init = rng.init_state();
        const DerivedGeometry geom = solve_mixing_angle(init, sp.alpha);
        const double period = pi / sp.e_o;
        const double t = rng.uniform(0.0, 3.0 * period);
        CHECK(near(probability_closed(init, geom.gamma, sp.e_o, t),
                   probability_closed(init, geom.gamma, sp.e_o, t + period), 1e-12));
    }
}

TEST_CASE("probability_closed attains its floor and never dips below it") {
    Rng rng{41};
    for (int i = 0; i < 100; ++i) {
        const SpectralParams sp = rng.spectral();
        const InitialState init = rng.init_state();
        const DerivedGeometry geom = solve_mixing_angle(init, sp.alpha);
        const double cb = std::cos(init.beta);
        const double cg = std::cos(geom.gamma);
        const double floor = 1.0 - (cb * cb) / (cg * cg);
        // the oscillation bottoms out where its cosine hits +-1
        const double t_min = (pi - geom.gamma) / sp.e_o;
        CHECK(near(probability_closed(init, geom.gamma, sp.e_o, t_min), floor, 1e-10));
        for (int k = 0; k <= 50; ++k) {
            const double t = k * (pi / sp.e_o) / 50.0;
            CHECK(probability_closed(init, geom.gamma, sp.e_o, t) >= floor - 1e-12);
        }
    }
}

TEST_CASE("trace: samples, endpoints, and argument validation") {
    const InitialState init{pi / 6.0, 0.0};
    const Hamiltonian2 h = from_spectral_tuned({1.0, 1.0, 0.0}, init);

    const ProbabilityTrace at_marked = trace(h, marked_state(), 1.0, 5);
    CHECK(at_marked.samples.front().t == 0.0);
    CHECK(at_marked.samples.front().p_w == 1.0);

    const ProbabilityTrace tr = trace(h, initial_state(init), two_pi, 9);
    CHECK(tr.samples.size() == 9);
    CHECK(near(tr.samples.front().p_w, 0.25, 1e-14)); // sin^2(pi/6)
    CHECK(near(tr.samples[2].t, pi / 2.0, 0.0));
    CHECK(near(tr.samples[2].p_w, 1.0, 1e-12));
    CHECK(tr.samples.back().t == two_pi);
    for (std::size_t i = 1; i < tr.samples.size(); ++i) {
        CHECK(tr.samples[i].t > tr.samples[i - 1].t);
        CHECK(tr.samples[i].p_w >= 0.0);
        CHECK(tr.samples[i].p_w <= 1.0 + 1e-9);
    }
    // samples a half Bohr period apart repeat (E_o = 1, period pi, 4 steps)
    for (std::size_t i = 0; i + 4 < tr.samples.size(); ++i) {
        CHECK(near(tr.samples[i].p_w, tr.samples[i + 4].p_w, 1e-12));
    }

    CHECK_THROWS_AS(trace(h, marked_state(), 0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(trace(h, marked_state(), 1.0, 1), std::invalid_argument);
}

TEST_CASE("trace_numeric agrees with the exact trace") {
    const CouplingParams cp{0.0, 1.0, pi / 2.0};
    const InitialState init{pi / 6.0, 0.0};
    const Hamiltonian2 h = from_coupling(cp, init);
    const QubitState psi0 = initial_state(init);
    const ProbabilityTrace exact = trace(h, psi0, 3.0, 31);
    const ProbabilityTrace numeric = trace_numeric(h, psi0, 3.0, 31, 1e-3);
    REQUIRE(exact.samples.size() == numeric.samples.size());
    for (std::size_t i = 0; i < exact.samples.size(); ++i) {
        CHECK(near(exact.samples[i].p_w, numeric.samples[i].p_w, 1e-8));
    }
    CHECK(numeric.max_norm_drift < 1e-10);
}
