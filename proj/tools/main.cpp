// Command-line driver: simulate the full Newtonian system, cross-check the
// Gram-matrix reduction against it, emit machine-checkable certificates for
// the single-varying-distance analysis, and count/isolate polynomial roots.
// Exit codes: 0 success, 1 config or usage error, 2 numerical abort,
// 3 falsification.
#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "unhinge/certify.hpp"
#include "unhinge/nbody.hpp"
#include "unhinge/parse.hpp"
#include "unhinge/presets.hpp"
#include "unhinge/reduction.hpp"
#include "unhinge/sturm.hpp"

using namespace unhinge;
using nlohmann::ordered_json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string preset;  // named initial condition when no explicit state
    int n = 0;           // 0 = let the preset choose
    int d = 0;
    unsigned long seed = 1;
    double tol = 1e-10;
    double t_end = 5.0;
    double sample_dt = 0.001;
    std::string out;  // CSV output path (simulate, reduce-check)
    std::vector<double> masses;
    std::vector<std::vector<double>> positions, velocities;

    bool explicit_state() const {
        return !masses.empty() || !positions.empty() || !velocities.empty();
    }
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    try {
        std::size_t used = 0;
        double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        if (!std::isfinite(v)) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse number '" +
                          t + "'");
    }
}

std::vector<double> parse_numbers(const std::string& text,
                                  const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, key));
    if (out.empty()) throw ConfigError("config key '" + key + "' is empty");
    return out;
}

std::vector<std::vector<double>> parse_points(const std::string& text,
                                              const std::string& key) {
    std::vector<std::vector<double>> out;
    std::stringstream ss(text);
    std::string group;
    while (std::getline(ss, group, ';'))
        out.push_back(parse_numbers(group, key));
    if (out.empty()) throw ConfigError("config key '" + key + "' is empty");
    return out;
}

long parse_integer(const std::string& text, const std::string& key) {
    double v = parse_number(text, key);
    long r = std::lround(v);
    if (static_cast<double>(r) != v)
        throw ConfigError("config key '" + key + "': expected an integer, got '"
                          + trim(text) + "'");
    return r;
}

void apply_kv(RunConfig& rc, const std::string& key, const std::string& val) {
    if (key == "preset")
        rc.preset = val;
    else if (key == "n")
        rc.n = static_cast<int>(parse_integer(val, key));
    else if (key == "d")
        rc.d = static_cast<int>(parse_integer(val, key));
    else if (key == "seed")
        rc.seed = static_cast<unsigned long>(parse_integer(val, key));
    else if (key == "tol")
        rc.tol = parse_number(val, key);
    else if (key == "t_end")
        rc.t_end = parse_number(val, key);
    else if (key == "sample_dt")
        rc.sample_dt = parse_number(val, key);
    else if (key == "out")
        rc.out = val;
    else if (key == "masses")
        rc.masses = parse_numbers(val, key);
    else if (key == "positions")
        rc.positions = parse_points(val, key);
    else if (key == "velocities")
        rc.velocities = parse_points(val, key);
    else
        throw ConfigError("unknown config key '" + key + "'");
}

void load_config(RunConfig& rc, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key=value");
        apply_kv(rc, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
}

void check_common(const RunConfig& rc) {
    if (!(rc.tol > 0.0)) throw ConfigError("config key 'tol' must be positive");
    if (!(rc.t_end > 0.0))
        throw ConfigError("config key 't_end' must be positive");
    if (!(rc.sample_dt > 0.0))
        throw ConfigError("config key 'sample_dt' must be positive");
}

BodyState build_state(const RunConfig& rc) {
    if (rc.explicit_state()) {
        if (rc.masses.empty() || rc.positions.empty() || rc.velocities.empty())
            throw ConfigError(
                "an explicit state needs all of 'masses', 'positions', and "
                "'velocities'");
        const std::size_t n = rc.masses.size();
        for (std::size_t i = 0; i < n; ++i)
            if (!(rc.masses[i] > 0.0))
                throw ConfigError("config key 'masses': entry " +
                                  std::to_string(i + 1) +
                                  " must be strictly positive");
        if (rc.positions.size() != n || rc.velocities.size() != n)
            throw ConfigError(
                "config keys 'positions'/'velocities' must list one point per "
                "mass");
        const std::size_t d = rc.positions[0].size();
        BodyState s;
        s.n = static_cast<int>(n);
        s.d = static_cast<int>(d);
        s.X.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
        s.V.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
        s.masses.resize(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            if (rc.positions[i].size() != d || rc.velocities[i].size() != d)
                throw ConfigError(
                    "config keys 'positions'/'velocities': inconsistent "
                    "dimension at entry " +
                    std::to_string(i + 1));
            for (std::size_t a = 0; a < d; ++a) {
                s.X(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i)) =
                    rc.positions[i][a];
                s.V(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i)) =
                    rc.velocities[i][a];
            }
            s.masses(static_cast<Eigen::Index>(i)) = rc.masses[i];
        }
        try {
            s.validate();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        return s;
    }
    const std::string name = rc.preset.empty() ? "random-seeded" : rc.preset;
    try {
        return make_preset(name, rc.n, rc.d, static_cast<unsigned>(rc.seed));
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

std::string pair_label(int i, int j) {
    return std::to_string(i + 1) + std::to_string(j + 1);
}

void describe_source(ordered_json& sum, const RunConfig& rc,
                     const BodyState& s0) {
    sum["bodies"] = s0.n;
    sum["dimension"] = s0.d;
    if (rc.explicit_state()) {
        sum["source"] = "explicit state";
    } else {
        sum["preset"] = rc.preset.empty() ? "random-seeded" : rc.preset;
        sum["seed"] = rc.seed;
    }
    sum["t_end"] = rc.t_end;
    sum["tol"] = rc.tol;
    sum["sample_dt"] = rc.sample_dt;
}

// Drop a final sample taken at t_end when it breaks the uniform grid, so
// finite-difference stencils stay valid.
void trim_to_uniform_grid(Trajectory& traj, double h) {
    while (traj.samples.size() >= 2) {
        double gap = traj.samples.back().t -
                     traj.samples[traj.samples.size() - 2].t;
        if (std::abs(gap - h) <= 1e-9) break;
        traj.samples.pop_back();
    }
}

int run_simulate(const RunConfig& rc) {
    check_common(rc);
    BodyState s0 = build_state(rc);
    Trajectory traj = integrate(s0, rc.t_end, rc.tol, rc.sample_dt);

    const auto pairs = index_pairs(s0.n);
    if (!rc.out.empty()) {
        std::ostringstream csv;
        csv << "t";
        for (int i = 0; i < s0.n; ++i)
            for (int a = 0; a < s0.d; ++a)
                csv << ",x" << i + 1 << "_" << a + 1;
        for (int i = 0; i < s0.n; ++i)
            for (int a = 0; a < s0.d; ++a)
                csv << ",v" << i + 1 << "_" << a + 1;
        for (auto [i, j] : pairs) csv << ",r" << pair_label(i, j);
        csv << ",energy\n";
        for (const auto& sample : traj.samples) {
            csv << fmt(sample.t);
            for (int i = 0; i < s0.n; ++i)
                for (int a = 0; a < s0.d; ++a) csv << "," << fmt(sample.state.X(a, i));
            for (int i = 0; i < s0.n; ++i)
                for (int a = 0; a < s0.d; ++a) csv << "," << fmt(sample.state.V(a, i));
            for (double r : distances(sample.state)) csv << "," << fmt(r);
            csv << "," << fmt(first_integrals(sample.state).energy) << "\n";
        }
        write_file(rc.out, csv.str());
    }

    const std::vector<double> r0 = distances(s0);
    const double e0 = first_integrals(s0).energy;
    double drift = 0.0, min_distance = 1e300, max_change = 0.0;
    for (const auto& sample : traj.samples) {
        drift = std::max(drift,
                         std::abs(first_integrals(sample.state).energy - e0));
        std::vector<double> r = distances(sample.state);
        for (std::size_t p = 0; p < r.size(); ++p) {
            min_distance = std::min(min_distance, r[p]);
            max_change = std::max(max_change, std::abs(r[p] - r0[p]));
        }
    }

    ordered_json sum;
    sum["command"] = "simulate";
    describe_source(sum, rc, s0);
    sum["samples"] = traj.samples.size();
    sum["energy_drift"] = drift;
    sum["min_distance"] = min_distance;
    sum["max_distance_change"] = max_change;
    sum["aborted"] = traj.aborted;
    if (traj.aborted) sum["abort_reason"] = traj.abort_reason;
    if (!rc.out.empty()) sum["trajectory_csv"] = rc.out;
    std::cout << sum.dump(2) << "\n";
    if (traj.aborted) {
        std::cerr << "error: " << traj.abort_reason << "\n";
        return 2;
    }
    return 0;
}

int run_reduce_check(const RunConfig& rc) {
    check_common(rc);
    BodyState s0 = build_state(rc);
    Trajectory traj = integrate(s0, rc.t_end, rc.tol, rc.sample_dt);
    if (traj.aborted) {
        ordered_json sum;
        sum["command"] = "reduce-check";
        describe_source(sum, rc, s0);
        sum["aborted"] = true;
        sum["abort_reason"] = traj.abort_reason;
        std::cout << sum.dump(2) << "\n";
        std::cerr << "error: " << traj.abort_reason << "\n";
        return 2;
    }
    trim_to_uniform_grid(traj, rc.sample_dt);
    if (traj.samples.size() < 5)
        throw ConfigError(
            "reduce-check needs at least five uniform samples; lower "
            "'sample_dt' or raise 't_end'");

    std::vector<ReducedState> coords;
    coords.reserve(traj.samples.size());
    for (const auto& sample : traj.samples)
        coords.push_back(standard_coordinates(sample.state));

    double max_deriv = 0.0;
    for (const auto& rs : coords)
        max_deriv = std::max(max_deriv, equilibrium_residual(rs, s0.masses));
    const double residual = reduction_residual(traj, s0.masses, rc.sample_dt);

    if (!rc.out.empty()) {
        // Side-by-side CSV: finite-difference derivative vs reduced equations
        // for every coordinate, on the interior of the sample grid.
        std::vector<std::string> labels;
        for (auto [i, j] : index_pairs(s0.n)) labels.push_back("b" + pair_label(i, j));
        for (auto [i, j] : index_pairs(s0.n)) labels.push_back("g" + pair_label(i, j));
        for (auto [i, j] : index_pairs(s0.n)) labels.push_back("d" + pair_label(i, j));
        for (auto [i, j] : index_pairs(s0.n - 1))
            labels.push_back("rho" + pair_label(i, j));
        auto flatten = [](const ReducedState& rs) {
            std::vector<double> v;
            v.insert(v.end(), rs.b.begin(), rs.b.end());
            v.insert(v.end(), rs.g.begin(), rs.g.end());
            v.insert(v.end(), rs.d.begin(), rs.d.end());
            v.insert(v.end(), rs.rho.begin(), rs.rho.end());
            return v;
        };
        std::ostringstream csv;
        csv << "t";
        for (const std::string& l : labels) csv << "," << l << "_fd," << l << "_ode";
        csv << "\n";
        for (std::size_t k = 2; k + 2 < coords.size(); ++k) {
            std::vector<double> m2 = flatten(coords[k - 2]),
                                m1 = flatten(coords[k - 1]),
                                p1 = flatten(coords[k + 1]),
                                p2 = flatten(coords[k + 2]);
            std::vector<double> ode = flatten(reduced_rhs(coords[k], s0.masses));
            csv << fmt(traj.samples[k].t);
            for (std::size_t c = 0; c < labels.size(); ++c) {
                double fd = (-p2[c] + 8.0 * p1[c] - 8.0 * m1[c] + m2[c]) /
                            (12.0 * rc.sample_dt);
                csv << "," << fmt(fd) << "," << fmt(ode[c]);
            }
            csv << "\n";
        }
        write_file(rc.out, csv.str());
    }

    ordered_json sum;
    sum["command"] = "reduce-check";
    describe_source(sum, rc, s0);
    sum["samples"] = traj.samples.size();
    sum["max_residual"] = residual;
    sum["max_reduced_derivative"] = max_deriv;
    sum["aborted"] = false;
    if (!rc.out.empty()) sum["reduced_csv"] = rc.out;
    std::cout << sum.dump(2) << "\n";
    return 0;
}

int run_certify(int n, const std::string& out, const std::string& conv_str) {
    OrderConvention conv;
    if (conv_str == "k13-largest")
        conv = OrderConvention::k13_largest;
    else if (conv_str == "k13-smallest")
        conv = OrderConvention::k13_smallest;
    else {
        std::cerr << "error: unknown order convention '" << conv_str << "'\n";
        return 1;
    }
    if (n != 3 && n != 4) {
        std::cerr << "error: unsupported n: " << n << " (expected 3 or 4)\n";
        return 1;
    }
    Certificate cert = certify(n, conv);
    write_file(out, cert.json_text);
    const bool replay = replay_matches(cert);

    ordered_json sum;
    sum["command"] = "certify";
    sum["bodies"] = n;
    if (n == 4) sum["order_convention"] = conv_str;
    sum["verdict"] = cert.verdict;
    sum["branches"] = cert.branch_count;
    sum["leaves"] = cert.leaf_count;
    sum["all_leaves_closed"] = cert.all_leaves_closed;
    sum["all_memberships_ok"] = cert.all_memberships_ok;
    sum["replay_ok"] = replay;
    sum["certificate"] = out;
    std::cout << sum.dump(2) << "\n";
    if (cert.verdict != "UNHINGED" || !replay) {
        std::cerr << "error: certification failed (verdict " << cert.verdict
                  << (replay ? "" : ", replay mismatch") << ")\n";
        return 3;
    }
    return 0;
}

// Accepts integers, fractions ("a/b"), and decimal literals, exactly.
Rational parse_endpoint(const std::string& text) {
    const std::string t = trim(text);
    std::size_t dot = t.find('.');
    if (dot == std::string::npos) return Rational::from_string(t);
    std::string sign;
    std::string ipart = t.substr(0, dot), fpart = t.substr(dot + 1);
    if (!ipart.empty() && (ipart[0] == '+' || ipart[0] == '-')) {
        if (ipart[0] == '-') sign = "-";
        ipart = ipart.substr(1);
    }
    for (const std::string* part : {&ipart, &fpart})
        for (char c : *part)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("cannot parse endpoint '" + t + "'");
    if (ipart.empty() && fpart.empty())
        throw std::invalid_argument("cannot parse endpoint '" + t + "'");
    Rational digits = Rational::from_string(
        sign + (ipart.empty() ? "0" : ipart) + fpart);
    return digits / Rational(10).pow(static_cast<unsigned>(fpart.size()));
}

int run_roots(const std::string& poly_text, const std::string& lo_s,
              const std::string& hi_s) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < poly_text.size();) {
        unsigned char c = static_cast<unsigned char>(poly_text[i]);
        if (std::isalpha(c) || poly_text[i] == '_') {
            std::size_t j = i;
            while (j < poly_text.size() &&
                   (std::isalnum(static_cast<unsigned char>(poly_text[j])) ||
                    poly_text[j] == '_'))
                ++j;
            names.insert(poly_text.substr(i, j - i));
            i = j;
        } else {
            ++i;
        }
    }
    if (names.size() > 1) {
        std::cerr << "error: multivariate input (variables:";
        for (const std::string& v : names) std::cerr << " " << v;
        std::cerr << ")\n";
        return 1;
    }
    const std::string var = names.empty() ? "x" : *names.begin();
    ordered_json rep;
    RootIsolation iso;
    Rational lo, hi;
    try {
        lo = parse_endpoint(lo_s);
        hi = parse_endpoint(hi_s);
        if (!(lo < hi)) throw std::invalid_argument("empty interval");
        Poly p = parse_poly(poly_text, make_registry({var}));
        iso = sturm_roots(p, lo, hi);
        rep["polynomial"] = p.str();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    rep["variable"] = var;
    rep["interval"] = ordered_json::array({lo.str(), hi.str()});
    rep["interval_semantics"] = "half-open (lo, hi]";
    rep["count"] = iso.count;
    ordered_json windows = ordered_json::array();
    ordered_json approx = ordered_json::array();
    for (const auto& [a, b] : iso.intervals) {
        windows.push_back(ordered_json::array({a.str(), b.str()}));
        approx.push_back((a.to_double() + b.to_double()) / 2.0);
    }
    rep["isolating_intervals"] = windows;
    rep["approximate_roots"] = approx;
    ordered_json out;
    out["command"] = "roots";
    for (auto& [k, v] : rep.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "n-body toolkit: simulation, reduction cross-checks, single-varying-"
        "distance certificates, and exact root isolation"};
    app.require_subcommand(1);
    int exit_code = 0;

    auto add_run_options = [](CLI::App* cmd, std::string& config,
                              std::string& preset, int& n, double& tol,
                              double& t_end, std::string& out) {
        cmd->add_option("--config", config, "flat key=value config file");
        cmd->add_option("--preset", preset,
                        "initial condition: lagrange-equilateral, "
                        "isosceles-balanced, kepler-pair, random-seeded");
        cmd->add_option("--n", n, "number of bodies (presets that honor it)");
        cmd->add_option("--tol", tol, "integrator tolerance");
        cmd->add_option("--t-end", t_end, "integration end time");
        cmd->add_option("--out", out, "CSV output path");
    };
    auto assemble = [](CLI::App* cmd, const std::string& config,
                       const std::string& preset, int n, double tol,
                       double t_end, const std::string& out) {
        RunConfig rc;
        if (!config.empty()) load_config(rc, config);
        if (cmd->count("--preset")) rc.preset = preset;
        if (cmd->count("--n")) rc.n = n;
        if (cmd->count("--tol")) rc.tol = tol;
        if (cmd->count("--t-end")) rc.t_end = t_end;
        if (cmd->count("--out")) rc.out = out;
        return rc;
    };

    CLI::App* sim = app.add_subcommand(
        "simulate", "Integrate the full system; write a trajectory CSV and "
                    "print a JSON summary");
    std::string sim_config, sim_preset, sim_out;
    int sim_n = 3;
    double sim_tol = 1e-10, sim_tend = 5.0;
    add_run_options(sim, sim_config, sim_preset, sim_n, sim_tol, sim_tend,
                    sim_out);
    sim->callback([&]() {
        exit_code = run_simulate(assemble(sim, sim_config, sim_preset, sim_n,
                                          sim_tol, sim_tend, sim_out));
    });

    CLI::App* red = app.add_subcommand(
        "reduce-check", "Compare the reduced equations of motion against "
                        "finite differences of the simulated coordinates");
    std::string red_config, red_preset, red_out;
    int red_n = 3;
    double red_tol = 1e-10, red_tend = 5.0;
    add_run_options(red, red_config, red_preset, red_n, red_tol, red_tend,
                    red_out);
    red->callback([&]() {
        exit_code = run_reduce_check(assemble(red, red_config, red_preset,
                                              red_n, red_tol, red_tend,
                                              red_out));
    });

    CLI::App* cer = app.add_subcommand(
        "certify", "Run the exact case analysis and write a certificate");
    int cert_n = 0;
    std::string cert_out = "certificate.json";
    std::string cert_conv = "k13-largest";
    cer->add_option("n,--n", cert_n, "number of bodies (3 or 4)")->required();
    cer->add_option("--out", cert_out, "certificate output path");
    cer->add_option("--order-convention", cert_conv,
                    "four-body variable order: k13-largest or k13-smallest");
    cer->callback(
        [&]() { exit_code = run_certify(cert_n, cert_out, cert_conv); });

    CLI::App* rts = app.add_subcommand(
        "roots", "Count and isolate the real roots of a univariate polynomial "
                 "on a half-open interval (lo, hi]");
    std::string roots_poly, roots_lo = "0", roots_hi = "10";
    rts->add_option("poly", roots_poly, "polynomial, e.g. \"x^3 - 4\"")
        ->required();
    rts->add_option("lo", roots_lo, "lower endpoint (exclusive)");
    rts->add_option("hi", roots_hi, "upper endpoint (inclusive)");
    rts->callback(
        [&]() { exit_code = run_roots(roots_poly, roots_lo, roots_hi); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
