// aqs.cpp — Command-line front end: time, trace, sweep, convert, verify.
//
// Conventions shared by every subcommand:
//   - exactly one parameterization per run: --efg/--ef/--phi (coupling) or
//     --ep/--eo/--alpha (spectral), plus --beta and optional --u;
//   - angles in radians, normalized to (-pi, pi] and echoed back normalized;
//   - CSV uses '\n' line endings, a mandatory header row, '#' metadata
//     lines, and shortest round-trip number formatting, so identical
//     configurations produce byte-identical output;
//   - exit codes: 0 success, 1 verification failure, 2 usage/parameter error.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aqs/aqs.hpp"

using nlohmann::json;
using namespace aqs;

namespace {

// Shortest representation that parses back to the same double.
std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonConfig {
    std::string format;
    std::string out_path;
    std::uint64_t seed{0};
};

struct ParamInput {
    std::optional<double> e_fg, e_f, phi;
    std::optional<double> e_p, e_o, alpha;
    std::optional<double> beta;
    double u{0.0};

    bool coupling_given() const {
        return e_fg.has_value() || e_f.has_value() || phi.has_value();
    }
    bool spectral_given() const {
        return e_p.has_value() || e_o.has_value() || alpha.has_value();
    }

    void validate() const {
        if (coupling_given() == spectral_given()) {
            throw UsageError("supply exactly one parameterization: --efg/--ef/--phi "
                             "or --ep/--eo/--alpha");
        }
        if (coupling_given() && !(e_fg && e_f && phi)) {
            throw UsageError("coupling parameterization needs all of --efg, --ef, --phi");
        }
        if (spectral_given() && !(e_p && e_o && alpha)) {
            throw UsageError("spectral parameterization needs all of --ep, --eo, --alpha");
        }
        if (!beta) {
            throw UsageError("--beta is required");
        }
    }

    InitialState initial() const { return InitialState{*beta, u}; }
    CouplingParams coupling() const { return CouplingParams{*e_fg, *e_f, *phi}; }
    SpectralParams spectral() const { return SpectralParams{*e_p, *e_o, *alpha}; }
};

void add_param_options(CLI::App* cmd, ParamInput& p) {
    cmd->add_option("--efg", p.e_fg, "Projector coupling energy E_fg (>= 0)");
    cmd->add_option("--ef", p.e_f, "Exchange coupling energy E_f (>= 0)");
    cmd->add_option("--phi", p.phi, "Exchange phase phi (radians)");
    cmd->add_option("--ep", p.e_p, "Mean energy E_p");
    cmd->add_option("--eo", p.e_o, "Half-gap E_o (>= 0)");
    cmd->add_option("--alpha", p.alpha, "Off-diagonal phase alpha (radians)");
    cmd->add_option("--beta", p.beta, "Initial-state angle beta in [0, pi/2]");
    cmd->add_option("--u", p.u, "Initial-state phase u (radians)");
}

void write_output(const CommonConfig& common, const std::string& text) {
    if (common.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(common.out_path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot open output file: " + common.out_path);
    }
    out << text;
}

// Normalized parameter echo, one entry per supplied field.
json params_echo(const ParamInput& p) {
    const InitialState init = p.initial();
    json j;
    j["beta"] = init.beta;
    j["u"] = init.u;
    if (p.coupling_given()) {
        const CouplingParams cp = p.coupling();
        j["e_fg"] = cp.e_fg;
        j["e_f"] = cp.e_f;
        j["phi"] = cp.phi;
    } else {
        const SpectralParams sp = p.spectral();
        j["e_p"] = sp.e_p;
        j["e_o"] = sp.e_o;
        j["alpha"] = sp.alpha;
    }
    return j;
}

std::string meta_lines(const json& params, const std::vector<std::string>& extra = {}) {
    std::string out;
    for (const auto& [key, value] : params.items()) {
        out += "# " + key + "=" +
               (value.is_number() ? fmt(value.get<double>()) : value.dump()) + "\n";
    }
    for (const std::string& line : extra) {
        out += "# " + line + "\n";
    }
    return out;
}

// Scalar results for `time`: the schedule plus the derived geometry.
struct TimeReport {
    MeasuringSchedule schedule;
    SpectralParams spectral;
    double x{pi / 4.0}; // convention when the geometry is unconstrained
};

TimeReport time_report(const ParamInput& p) {
    const InitialState init = p.initial();
    TimeReport r;
    if (p.coupling_given()) {
        const CouplingParams cp = p.coupling();
        const SpectralConversion conv = to_spectral(cp, init);
        r.schedule = schedule_from_coupling(cp, init);
        r.spectral = conv.spectral;
        r.x = conv.geometry.x;
    } else {
        const SpectralParams sp = p.spectral();
        r.schedule = schedule_from_spectral(sp, init);
        r.spectral = sp;
        if (!r.schedule.degenerate) {
            r.x = solve_mixing_angle(init, sp.alpha).x;
        }
    }
    return r;
}

int cmd_time(const CommonConfig& common, const ParamInput& p) {
    p.validate();
    const TimeReport r = time_report(p);
    const MeasuringSchedule& s = r.schedule;

    if (common.format == "csv") {
        std::string text = meta_lines(params_echo(p));
        text += "t_first,period,e_p,e_o,alpha,gamma,x,p_floor,degenerate\n";
        text += fmt(s.t_first) + "," + fmt(s.period) + "," + fmt(r.spectral.e_p) + "," +
                fmt(r.spectral.e_o) + "," + fmt(r.spectral.alpha) + "," + fmt(s.gamma) +
                "," + fmt(r.x) + "," + fmt(s.probability_floor()) + "," +
                (s.degenerate ? "true" : "false") + "\n";
        write_output(common, text);
        return 0;
    }

    json j;
    j["t_first"] = s.t_first;
    if (std::isfinite(s.period)) {
        j["period"] = s.period;
    } else {
        j["period"] = nullptr;
    }
    j["e_p"] = r.spectral.e_p;
    j["e_o"] = r.spectral.e_o;
    j["alpha"] = r.spectral.alpha;
    j["gamma"] = s.gamma;
    j["x"] = r.x;
    j["p_floor"] = s.probability_floor();
    j["degenerate"] = s.degenerate;
    j["params"] = params_echo(p);
    write_output(common, j.dump(2) + "\n");
    return 0;
}

int cmd_convert(const CommonConfig& common, const ParamInput& p) {
    p.validate();
    const InitialState init = p.initial();
    json j;
    std::string csv_header;
    std::string csv_row;

    if (p.coupling_given()) {
        const SpectralConversion conv = to_spectral(p.coupling(), init);
        j["e_p"] = conv.spectral.e_p;
        j["e_o"] = conv.spectral.e_o;
        j["alpha"] = conv.spectral.alpha;
        j["gamma"] = conv.geometry.gamma;
        j["x"] = conv.geometry.x;
        j["zero_gap"] = conv.zero_gap;
        j["aligned_initial"] = conv.aligned_initial;
        j["degenerate"] = conv.zero_gap || conv.aligned_initial;
        csv_header = "e_p,e_o,alpha,gamma,x,degenerate\n";
        csv_row = fmt(conv.spectral.e_p) + "," + fmt(conv.spectral.e_o) + "," +
                  fmt(conv.spectral.alpha) + "," + fmt(conv.geometry.gamma) + "," +
                  fmt(conv.geometry.x) + "," +
                  ((conv.zero_gap || conv.aligned_initial) ? "true" : "false") + "\n";
    } else {
        const CouplingParams cp = to_coupling(p.spectral(), init);
        j["e_fg"] = cp.e_fg;
        j["e_f"] = cp.e_f;
        j["phi"] = cp.phi;
        j["degenerate"] = false;
        csv_header = "e_fg,e_f,phi,degenerate\n";
        csv_row = fmt(cp.e_fg) + "," + fmt(cp.e_f) + "," + fmt(cp.phi) + ",false\n";
    }
    j["params"] = params_echo(p);

    if (common.format == "csv") {
        write_output(common, meta_lines(params_echo(p)) + csv_header + csv_row);
    } else {
        write_output(common, j.dump(2) + "\n");
    }
    return 0;
}

struct TraceConfig {
    double t_max{0.0};
    int n_samples{0};
    bool numeric{false};
    double dt{1e-3};
};

Hamiltonian2 hamiltonian_of(const ParamInput& p) {
    const InitialState init = p.initial();
    if (p.coupling_given()) {
        return from_coupling(p.coupling(), init);
    }
    return from_spectral_tuned(p.spectral(), init);
}

int cmd_trace(const CommonConfig& common, const ParamInput& p, const TraceConfig& tc) {
    p.validate();
    const InitialState init = p.initial();
    const Hamiltonian2 h = hamiltonian_of(p);
    const QubitState psi0 = initial_state(init);
    const ProbabilityTrace tr =
        tc.numeric ? trace_numeric(h, psi0, tc.t_max, tc.n_samples, tc.dt)
                   : trace(h, psi0, tc.t_max, tc.n_samples);

    if (common.format == "json") {
        json j;
        j["params"] = params_echo(p);
        j["mode"] = tc.numeric ? "numeric" : "exact";
        if (tc.numeric) {
            j["dt"] = tc.dt;
            j["max_norm_drift"] = tr.max_norm_drift;
        }
        j["t_max"] = tr.t_max;
        j["n_samples"] = tc.n_samples;
        json rows = json::array();
        for (const TraceSample& s : tr.samples) {
            rows.push_back({{"t", s.t},
                            {"p_w", s.p_w},
                            {"a_w", {s.a_w.real(), s.a_w.imag()}},
                            {"a_perp", {s.a_perp.real(), s.a_perp.imag()}}});
        }
        j["samples"] = rows;
        write_output(common, j.dump(2) + "\n");
        return 0;
    }

    std::vector<std::string> extra = {std::string("mode=") + (tc.numeric ? "numeric" : "exact"),
                                      "tmax=" + fmt(tr.t_max),
                                      "samples=" + fmt(static_cast<double>(tc.n_samples))};
    if (tc.numeric) {
        extra.push_back("dt=" + fmt(tc.dt));
        extra.push_back("max_norm_drift=" + fmt(tr.max_norm_drift));
    }
    std::string text = meta_lines(params_echo(p), extra);
    text += "t,p_w,re_a_w,im_a_w,re_a_perp,im_a_perp\n";
    for (const TraceSample& s : tr.samples) {
        text += fmt(s.t) + "," + fmt(s.p_w) + "," + fmt(s.a_w.real()) + "," +
                fmt(s.a_w.imag()) + "," + fmt(s.a_perp.real()) + "," +
                fmt(s.a_perp.imag()) + "\n";
    }
    write_output(common, text);
    return 0;
}

struct SweepAxis {
    std::string name;
    double from{0.0};
    double to{0.0};
    int steps{0};

    double at(int i) const {
        if (i == steps - 1) {
            return to;
        }
        return from + (to - from) * static_cast<double>(i) / (steps - 1);
    }
};

struct SweepConfig {
    SweepAxis first;
    SweepAxis second; // steps == 0 means absent
    double p_threshold{0.99};
};

void apply_axis(ParamInput& p, const std::string& name, double value) {
    if (name == "beta") {
        p.beta = value;
    } else if (name == "u") {
        p.u = value;
    } else if (name == "efg") {
        p.e_fg = value;
    } else if (name == "ef") {
        p.e_f = value;
    } else if (name == "phi") {
        p.phi = value;
    } else if (name == "ep") {
        p.e_p = value;
    } else if (name == "eo") {
        p.e_o = value;
    } else if (name == "alpha") {
        p.alpha = value;
    } else {
        throw UsageError("unknown sweep parameter: " + name);
    }
}

void validate_axis(const ParamInput& base, const SweepAxis& axis) {
    if (axis.steps < 2) {
        throw UsageError("sweep needs at least 2 steps per parameter");
    }
    ParamInput probe = base;
    apply_axis(probe, axis.name, axis.from);
    apply_axis(probe, axis.name, axis.to);
    probe.validate();
    for (double v : {axis.from, axis.to}) {
        if ((axis.name == "efg" || axis.name == "ef" || axis.name == "eo") && v < 0.0) {
            throw UsageError("sweep range for " + axis.name + " must be nonnegative");
        }
        if (axis.name == "beta" && !(v >= 0.0 && v <= pi / 2.0)) {
            throw UsageError("sweep range for beta must stay in [0, pi/2]");
        }
    }
}

// One grid point: first measuring time, tolerance half-width at the
// configured threshold, and the propagator-evaluated probability at t_1.
// Zero-gap points yield nan columns rather than aborting the sweep.
std::string sweep_row(const ParamInput& point, double p_threshold) {
    const InitialState init = point.initial();
    MeasuringSchedule s;
    try {
        s = point.coupling_given() ? schedule_from_coupling(point.coupling(), init)
                                   : schedule_from_spectral(point.spectral(), init);
    } catch (const std::domain_error&) {
        const double nan = std::nan("");
        return fmt(nan) + "," + fmt(nan) + "," + fmt(nan);
    }
    const double delta =
        tolerance_window(init, DerivedGeometry{s.gamma, 0.0}, s.e_o, p_threshold);
    double p_at = std::sin(init.beta) * std::sin(init.beta);
    if (!s.degenerate) {
        const Hamiltonian2 h = point.coupling_given()
                                   ? from_coupling(point.coupling(), init)
                                   : from_spectral_tuned(point.spectral(), init);
        p_at = propagate_exact(h, initial_state(init), s.t_first).probability_w();
    }
    return fmt(s.t_first) + "," + fmt(delta) + "," + fmt(p_at);
}

int cmd_sweep(const CommonConfig& common, const ParamInput& base, const SweepConfig& sc) {
    validate_axis(base, sc.first);
    const bool two_axes = !sc.second.name.empty() || sc.second.steps != 0;
    if (two_axes) {
        validate_axis(base, sc.second);
        if (sc.second.name == sc.first.name) {
            throw UsageError("the two sweep parameters must differ");
        }
    }
    {
        ParamInput probe = base;
        apply_axis(probe, sc.first.name, sc.first.from);
        if (two_axes) {
            apply_axis(probe, sc.second.name, sc.second.from);
        }
        probe.validate();
    }
    if (!(sc.p_threshold >= 0.0 && sc.p_threshold <= 1.0)) {
        throw UsageError("--pthreshold must lie in [0, 1]");
    }

    std::ostringstream rows;
    std::string header = sc.first.name;
    if (two_axes) {
        header += "," + sc.second.name;
    }
    header += ",t_first,delta_max,p_at_t_first\n";

    for (int i = 0; i < sc.first.steps; ++i) {
        const double v1 = sc.first.at(i);
        ParamInput point = base;
        apply_axis(point, sc.first.name, v1);
        if (!two_axes) {
            rows << fmt(v1) << "," << sweep_row(point, sc.p_threshold) << "\n";
            continue;
        }
        for (int k = 0; k < sc.second.steps; ++k) {
            const double v2 = sc.second.at(k);
            ParamInput inner = point;
            apply_axis(inner, sc.second.name, v2);
            rows << fmt(v1) << "," << fmt(v2) << ","
                 << sweep_row(inner, sc.p_threshold) << "\n";
        }
    }

    ParamInput echo_point = base;
    apply_axis(echo_point, sc.first.name, sc.first.from);
    if (two_axes) {
        apply_axis(echo_point, sc.second.name, sc.second.from);
    }
    std::vector<std::string> extra = {"p_threshold=" + fmt(sc.p_threshold),
                                      "sweep=" + sc.first.name};
    if (two_axes) {
        extra.push_back("sweep2=" + sc.second.name);
    }

    if (common.format == "json") {
        json j;
        j["params"] = params_echo(echo_point);
        j["p_threshold"] = sc.p_threshold;
        j["header"] = header.substr(0, header.size() - 1);
        json out_rows = json::array();
        std::istringstream in(rows.str());
        for (std::string line; std::getline(in, line);) {
            out_rows.push_back(line);
        }
        j["rows"] = out_rows;
        write_output(common, j.dump(2) + "\n");
        return 0;
    }

    write_output(common, meta_lines(params_echo(echo_point), extra) + header + rows.str());
    return 0;
}

// ---------------------------------------------------------------------------
// verify: randomized invariant suite with a fixed seed
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    int draws{0};
    double max_error{0.0};
    double tolerance{0.0};
    bool pass{true};
};

struct VerifyConfig {
    int draws{200};
    bool full_space{false};
    int n_items{8};
    int n_marked{2};
};

class Draws {
  public:
    explicit Draws(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double angle() { return uniform(-pi, pi); }
    CouplingParams coupling() { return {uniform(0.0, 3.0), uniform(0.0, 3.0), angle()}; }
    InitialState init_state() { return {uniform(0.05, 1.5), angle()}; }

  private:
    std::mt19937_64 engine_;
};

CheckResult check_round_trips(Draws& rng, int draws) {
    CheckResult r{"conversion_round_trip", draws, 0.0, 1e-10, true};
    for (int i = 0; i < draws; ++i) {
        const CouplingParams cp = rng.coupling();
        const InitialState init = rng.init_state();
        const SpectralConversion conv = to_spectral(cp, init);
        if (conv.zero_gap || conv.aligned_initial || conv.spectral.e_o < 0.05) {
            continue;
        }
        const CouplingParams back = to_coupling(conv.spectral, init);
        r.max_error = std::max({r.max_error, std::abs(back.e_fg - cp.e_fg),
                                std::abs(back.e_f - cp.e_f)});
        if (cp.e_f > 0.05) {
            r.max_error = std::max(r.max_error, angle_distance(back.phi, cp.phi));
        }
        const SpectralParams again = to_spectral(back, init).spectral;
        r.max_error = std::max({r.max_error, std::abs(again.e_p - conv.spectral.e_p),
                                std::abs(again.e_o - conv.spectral.e_o),
                                angle_distance(again.alpha, conv.spectral.alpha)});
    }
    r.pass = r.max_error <= r.tolerance;
    return r;
}

CheckResult check_equivalence(Draws& rng, int draws) {
    CheckResult r{"hamiltonian_equivalence", draws, 0.0, 1e-10, true};
    for (int i = 0; i < draws; ++i) {
        const CouplingParams cp = rng.coupling();
        const InitialState init = rng.init_state();
        const SpectralConversion conv = to_spectral(cp, init);
        if (conv.zero_gap || conv.aligned_initial) {
            continue;
        }
        const Hamiltonian2 a = from_coupling(cp, init);
        const Hamiltonian2 b = from_spectral_tuned(conv.spectral, init);
        r.max_error = std::max({r.max_error, std::abs(a.h_ww - b.h_ww),
                                std::abs(a.h_pp - b.h_pp), std::abs(a.h_wp - b.h_wp)});
    }
    r.pass = r.max_error <= r.tolerance;
    return r;
}

CheckResult check_bae_kwon(Draws& rng, int draws) {
    CheckResult r{"bae_kwon_branches", draws, 0.0, 1e-12, true};
    for (int i = 0; i < draws; ++i) {
        const InitialState init{rng.uniform(0.0, pi / 2.0), 0.0};
        const double e_fg = rng.uniform(0.0, 3.0);
        const double e_f = rng.uniform(0.0, 3.0);
        for (double phi : {0.0, pi}) {
            const CouplingParams cp{e_fg, e_f, phi};
            const Hamiltonian2 a = bae_kwon(cp, init);
            const Hamiltonian2 b = from_coupling(cp, init);
            r.max_error = std::max({r.max_error, std::abs(a.h_ww - b.h_ww),
                                    std::abs(a.h_pp - b.h_pp), std::abs(a.h_wp - b.h_wp)});
        }
    }
    r.pass = r.max_error <= r.tolerance;
    return r;
}

CheckResult check_certainty_closed(Draws& rng, int draws) {
    CheckResult r{"certainty_closed_form", draws, 0.0, 1e-12, true};
    for (int i = 0; i < draws; ++i) {
        const CouplingParams cp = rng.coupling();
        const InitialState init = rng.init_state();
        const SpectralConversion conv = to_spectral(cp, init);
        if (conv.zero_gap || conv.aligned_initial) {
            continue;
        }
        const double t1 = first_time_from_coupling(cp, init);
        const double p =
            probability_closed(init, conv.geometry.gamma, conv.spectral.e_o, t1);
        r.max_error = std::max(r.max_error, std::abs(p - 1.0));
    }
    r.pass = r.max_error <= r.tolerance;
    return r;
}

CheckResult check_certainty_rk4(Draws& rng, int draws) {
    CheckResult r{"certainty_rk4", draws, 0.0, 1e-8, true};
    for (int i = 0; i < draws; ++i) {
        const CouplingParams cp = rng.coupling();
        const InitialState init = rng.init_state();
        const SpectralConversion conv = to_spectral(cp, init);
        if (conv.zero_gap || conv.aligned_initial) {
            continue;
        }
        const double t1 = first_time_from_coupling(cp, init);
        const double rho = std::abs(conv.spectral.e_p) + conv.spectral.e_o;
        double dt = std::pow(6e-8 / std::max(1e-12, t1 * std::pow(rho, 5)), 0.25);
        dt = std::min(dt, 0.04 / conv.spectral.e_o);
        const Hamiltonian2 h = from_coupling(cp, init);
        const NumericEvolution ev = propagate_numeric(h, initial_state(init), t1, dt);
        r.max_error = std::max(r.max_error, std::abs(ev.state.probability_w() - 1.0));
    }
    r.pass = r.max_error <= r.tolerance;
    return r;
}

CheckResult check_hermitian_identities(Draws& rng, int draws) {
    CheckResult r{"hermitian_identities", draws, 0.0, 1e-12, true};
    for (int i = 0; i < draws; ++i) {
        const CouplingParams cp = rng.coupling();
        const InitialState init = rng.init_state();
        const Hamiltonian2 h = from_coupling(cp, init);
        const SpectralParams sp = to_spectral(cp, init).spectral;
        r.max_error = std::max({r.max_error, std::abs(h.trace() - 2.0 * sp.e_p),
                                std::abs(h.e_o() - sp.e_o),
                                std::abs(h.h_pw() - std::conj(h.h_wp))});
    }
    r.pass = r.max_error <= r.tolerance;
    return r;
}

CheckResult check_schedule_window(Draws& rng, int draws) {
    CheckResult r{"schedule_and_window", draws, 0.0, 1e-10, true};
    for (int i = 0; i < draws; ++i) {
        const InitialState init = rng.init_state();
        const double alpha = rng.angle();
        const double e_o = rng.uniform(0.1, 3.0);
        const DerivedGeometry geom = solve_mixing_angle(init, alpha);
        const MeasuringSchedule s = measuring_times(geom, init, alpha, e_o);
        for (int j = 1; j <= 4; ++j) {
            r.max_error =
                std::max(r.max_error, std::abs(s.instant(j + 1) - s.instant(j) - s.period));
            r.max_error = std::max(
                r.max_error,
                std::abs(probability_closed(init, s.gamma, e_o, s.instant(j)) - 1.0));
        }
        const double delta = tolerance_window(init, geom, e_o, 0.99);
        if (delta < pi / (2.0 * e_o)) {
            const double p = probability_closed(init, s.gamma, e_o, s.t_first + delta);
            r.max_error = std::max(r.max_error, std::abs(p - 0.99));
        }
        const double doubled = tolerance_window(init, geom, 2.0 * e_o, 0.99);
        r.max_error = std::max(r.max_error, std::abs(doubled - delta / 2.0));
    }
    r.pass = r.max_error <= r.tolerance;
    return r;
}

CheckResult check_full_space(Draws& rng, int n, int m) {
    CheckResult r{"full_space_reduction", 5, 0.0, 1e-6, true};
    if (n < 2 || m < 1 || m >= n || n > fullspace_max_items) {
        throw UsageError("--full-space needs 2 <= n <= 4096 and 1 <= m < n");
    }
    std::vector<int> marked;
    for (int k = 0; k < m; ++k) {
        marked.push_back(k);
    }
    int tested = 0;
    while (tested < r.draws) {
        const SearchInstance inst{n, marked, rng.angle()};
        const CouplingParams cp = rng.coupling();
        const SpectralConversion conv = to_spectral(cp, inst.initial());
        if (conv.spectral.e_o < 0.4) {
            continue; // keep dt = 1e-3/E_o inside the step guard
        }
        const double dt = 1e-3 / conv.spectral.e_o;
        const ProbabilityTrace tr = evolve_full(inst, cp, pi / conv.spectral.e_o, dt);
        for (const TraceSample& sample : tr.samples) {
            const double p2d = probability_closed(inst.initial(), conv.geometry.gamma,
                                                  conv.spectral.e_o, sample.t);
            r.max_error = std::max(r.max_error, std::abs(sample.p_w - p2d));
        }
        ++tested;
    }
    r.pass = r.max_error <= r.tolerance;
    return r;
}

int cmd_verify(const CommonConfig& common, const VerifyConfig& vc) {
    Draws rng{common.seed};
    std::vector<CheckResult> results;
    results.push_back(check_round_trips(rng, vc.draws));
    results.push_back(check_equivalence(rng, vc.draws));
    results.push_back(check_bae_kwon(rng, vc.draws));
    results.push_back(check_certainty_closed(rng, vc.draws));
    results.push_back(check_certainty_rk4(rng, vc.draws));
    results.push_back(check_hermitian_identities(rng, vc.draws));
    results.push_back(check_schedule_window(rng, vc.draws));
    if (vc.full_space) {
        results.push_back(check_full_space(rng, vc.n_items, vc.n_marked));
    }

    bool all_pass = true;
    json checks = json::array();
    for (const CheckResult& r : results) {
        all_pass = all_pass && r.pass;
        std::cerr << (r.pass ? "[ ok ] " : "[FAIL] ") << r.name << "  max err "
                  << fmt(r.max_error) << " (tol " << fmt(r.tolerance) << ", "
                  << r.draws << " draws)\n";
        checks.push_back({{"name", r.name},
                          {"draws", r.draws},
                          {"max_error", r.max_error},
                          {"tolerance", r.tolerance},
                          {"pass", r.pass}});
    }
    std::cerr << "verdict: " << (all_pass ? "PASS" : "FAIL") << " (seed "
              << common.seed << ")\n";

    json j;
    j["seed"] = common.seed;
    j["draws"] = vc.draws;
    j["pass"] = all_pass;
    j["checks"] = checks;
    write_output(common, j.dump(2) + "\n");
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analog quantum search: Hamiltonians, evolution, and measuring times"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonConfig common;
    app.add_option("--format", common.format, "Output format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", common.out_path, "Write output to a file instead of stdout");
    app.add_option("--seed", common.seed, "Seed for randomized verification");

    ParamInput time_params;
    CLI::App* time_cmd =
        app.add_subcommand("time", "First measuring time and schedule parameters");
    add_param_options(time_cmd, time_params);

    ParamInput convert_params;
    CLI::App* convert_cmd =
        app.add_subcommand("convert", "Convert between the two parameterizations");
    add_param_options(convert_cmd, convert_params);

    ParamInput trace_params;
    TraceConfig trace_cfg;
    CLI::App* trace_cmd =
        app.add_subcommand("trace", "Sample the marked-state probability over time");
    add_param_options(trace_cmd, trace_params);
    trace_cmd->add_option("--tmax", trace_cfg.t_max, "End of the sampled interval")
        ->required();
    trace_cmd->add_option("--samples", trace_cfg.n_samples, "Number of samples (>= 2)")
        ->required();
    trace_cmd->add_flag("--numeric", trace_cfg.numeric,
                        "Integrate with the RK4 oracle instead of the exact propagator");
    trace_cmd->add_option("--dt", trace_cfg.dt, "RK4 step size (with --numeric)");

    ParamInput sweep_params;
    SweepConfig sweep_cfg;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Measuring time and timing window over a grid");
    add_param_options(sweep_cmd, sweep_params);
    sweep_cmd->add_option("--param", sweep_cfg.first.name, "Swept parameter name")
        ->required();
    sweep_cmd->add_option("--from", sweep_cfg.first.from, "Grid start")->required();
    sweep_cmd->add_option("--to", sweep_cfg.first.to, "Grid end")->required();
    sweep_cmd->add_option("--steps", sweep_cfg.first.steps, "Grid points (>= 2)")
        ->required();
    sweep_cmd->add_option("--param2", sweep_cfg.second.name, "Second swept parameter");
    sweep_cmd->add_option("--from2", sweep_cfg.second.from, "Second grid start");
    sweep_cmd->add_option("--to2", sweep_cfg.second.to, "Second grid end");
    sweep_cmd->add_option("--steps2", sweep_cfg.second.steps, "Second grid points");
    sweep_cmd->add_option("--pthreshold", sweep_cfg.p_threshold,
                          "Probability threshold for the timing window");

    VerifyConfig verify_cfg;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Randomized invariant suite (JSON verdict on stdout)");
    verify_cmd->add_option("--draws", verify_cfg.draws, "Random draws per check")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--full-space", verify_cfg.full_space,
                         "Also run the N-dimensional reduction check");
    verify_cmd->add_option("--n", verify_cfg.n_items, "Full-space item count");
    verify_cmd->add_option("--m", verify_cfg.n_marked, "Full-space marked count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (time_cmd->parsed()) {
            return cmd_time(common, time_params);
        }
        if (convert_cmd->parsed()) {
            return cmd_convert(common, convert_params);
        }
        if (trace_cmd->parsed()) {
            return cmd_trace(common, trace_params, trace_cfg);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(common, sweep_params, sweep_cfg);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(common, verify_cfg);
        }
    } catch (const UsageError& e) {
        std::cerr << "aqs: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "aqs: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "aqs: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
