// measuring_times.cpp — Library walkthrough: the three named special-case
// Hamiltonians and how the exchange phase trades measuring time against
// timing tolerance.

#include <cstdio>

#include "aqs/aqs.hpp"

using namespace aqs;

int main() {
    const InitialState init{pi / 6.0, 0.0}; // one marked item among four

    struct Case {
        const char* name;
        CouplingParams cp;
    };
    const Case cases[] = {
        {"Farhi-Gutmann (E_f = 0)", {1.0, 0.0, 0.0}},
        {"Fenner (E_fg = 0, phi = pi/2)", {0.0, 1.0, pi / 2.0}},
        {"equal couplings, phi = pi/2", {1.0, 1.0, pi / 2.0}},
    };

    std::printf("%-32s %10s %10s %12s\n", "Hamiltonian", "E_o", "t_1", "window(0.99)");
    for (const Case& c : cases) {
        const MeasuringSchedule s = schedule_from_coupling(c.cp, init);
        const double window = s.tolerance_halfwidth(0.99);
        std::printf("%-32s %10.6f %10.6f %12.6f\n", c.name, s.e_o, s.t_first, window);
    }

    std::printf("\nphi sweep at E_fg = E_f = 1 (probability at t_1 stays 1):\n");
    std::printf("%10s %10s %14s\n", "phi", "t_1", "P(t_1)");
    for (int k = 0; k < 8; ++k) {
        const double phi = -pi + (k + 1) * (two_pi / 8.0);
        const CouplingParams cp{1.0, 1.0, phi};
        const double t1 = first_time_from_coupling(cp, init);
        const Hamiltonian2 h = from_coupling(cp, init);
        const double p = propagate_exact(h, initial_state(init), t1).probability_w();
        std::printf("%10.6f %10.6f %14.12f\n", phi, t1, p);
    }
    return 0;
}
