// scenario.hpp: flat config files, evolve/sweep/optimize/validate runners and their CSV output

#pragma once

#include "oracle.hpp"
#include "random_params.hpp"
#include "rates.hpp"
#include "tilde.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wstate {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Lines of the form `section.key = value`; `#` starts a comment.
class Config {
  public:
    static Config parse(std::istream& in) {
        Config c;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
            const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
            if (key.find('.') == std::string::npos || key.front() == '.' || key.back() == '.')
                throw ConfigError("config line " + std::to_string(lineno) + ": key '" + key + "' must be section.key");
            if (val.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty value for " + key);
            if (!c.values_.emplace(key, val).second) throw ConfigError("config: duplicate key " + key);
        }
        return c;
    }
    static Config parse_string(const std::string& s) {
        std::istringstream in(s);
        return parse(in);
    }
    static Config load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file " + path);
        return parse(in);
    }

    bool has(const std::string& k) const { return values_.count(k) != 0; }
    void set(const std::string& k, const std::string& v) { values_[k] = v; }

    std::string str(const std::string& k, const std::string& def) const { return has(k) ? values_.at(k) : def; }
    std::string str(const std::string& k) const {
        if (!has(k)) throw ConfigError("config: missing key " + k);
        return values_.at(k);
    }
    double num(const std::string& k, double def) const { return has(k) ? to_double(k, values_.at(k)) : def; }
    double num(const std::string& k) const { return to_double(k, str(k)); }
    int integer(const std::string& k, int def) const { return has(k) ? to_int(k, values_.at(k)) : def; }
    int integer(const std::string& k) const { return to_int(k, str(k)); }

  private:
    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return {};
        return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
    }
    static double to_double(const std::string& k, const std::string& v) {
        // accepts simple fractions such as 8/11
        const auto slash = v.find('/');
        try {
            std::size_t used = 0;
            if (slash == std::string::npos) {
                const double d = std::stod(v, &used);
                if (used != v.size()) throw std::invalid_argument(v);
                return d;
            }
            const std::string a = v.substr(0, slash), b = v.substr(slash + 1);
            std::size_t ua = 0, ub = 0;
            const double num = std::stod(a, &ua), den = std::stod(b, &ub);
            if (ua != a.size() || ub != b.size() || den == 0.0) throw std::invalid_argument(v);
            return num / den;
        } catch (const std::exception&) {
            throw ConfigError("config: " + k + " = '" + v + "' is not a number");
        }
    }
    static int to_int(const std::string& k, const std::string& v) {
        const double d = to_double(k, v);
        if (d != static_cast<double>(static_cast<int>(d))) throw ConfigError("config: " + k + " must be an integer");
        return static_cast<int>(d);
    }

    std::map<std::string, std::string> values_;
};

// ------------------------------------ scenario ------------------------------------

enum class Scheme { Single, Bimodal, BimodalTwoPhase };

struct SweepAxis {
    std::string name;
    double start = 0.0, stop = 0.0;
    int points = 1;

    std::vector<double> values() const {
        std::vector<double> v;
        for (int i = 0; i < points; ++i) v.push_back(points == 1 ? start : start + (stop - start) * i / (points - 1));
        return v;
    }
};

struct ValidateSettings {
    int flip_phase_atom = -1;
    double generic_tolerance = 1e-10;
    double leakage_tolerance = 1e-10;
    double population_tolerance = 0.05;
    double leakage_window = 5.0;      // multiples of T_p
    double population_window = 2.0;   // multiples of T_p
    int steps = 500;
    int random_sets = 20;
};

struct ScenarioConfig {
    Scheme scheme = Scheme::Single;
    int n = 3;
    double alpha = 10.0;
    double x = 1.0;
    double z = 0.85;
    TildeSingle single;
    BimodalABC abc;
    BimodalSmall bimodal;
    std::optional<int> initial_label;
    std::vector<double> initial_distribution;
    std::string engine = "chain";
    double t_end = 0.0;
    int points = 201;
    double phase1_t_end = 0.0, phase2_t_end = 0.0;
    std::string direction = "forward";
    std::vector<SweepAxis> axes;
    ValidateSettings validate;
    int optimize_resolution = 200;
    BimodalGrid bimodal_grid;

    SchemeParams single_params() const {
        TildeSingle t = single;
        t.n = n;
        t.alpha = alpha;
        t.x = x;
        return realize_single(t);
    }
    BimodalParams bimodal_params() const { return realize_bimodal(abc, n, alpha, x, bimodal); }

    Eigen::VectorXd initial(int default_label) const {
        if (!initial_distribution.empty()) {
            if (static_cast<int>(initial_distribution.size()) != n + 1)
                throw ConfigError("run.distribution must list n+1 probabilities");
            Eigen::VectorXd v(n + 1);
            for (int j = 0; j <= n; ++j) v(j) = initial_distribution[static_cast<std::size_t>(j)];
            try {
                require_distribution(v, n);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("run.distribution: ") + e.what());
            }
            return v;
        }
        const int j = initial_label.value_or(std::min(default_label, n));
        if (j < 0 || j > n) throw ConfigError("run.initial must lie in 0..n");
        return basis_distribution(n, j);
    }
};

inline std::vector<double> parse_list(const std::string& key, const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Config c = Config::parse_string("x.v = " + item);
        try {
            v.push_back(c.num("x.v"));
        } catch (const ConfigError&) {
            throw ConfigError("config: bad list entry in " + key);
        }
    }
    return v;
}

inline ScenarioConfig scenario_from_config(const Config& c) {
    ScenarioConfig s;
    const std::string scheme = c.str("model.scheme", "single");
    if (scheme == "single") s.scheme = Scheme::Single;
    else if (scheme == "bimodal") s.scheme = Scheme::Bimodal;
    else if (scheme == "bimodal-two-phase") s.scheme = Scheme::BimodalTwoPhase;
    else throw ConfigError("model.scheme must be single, bimodal or bimodal-two-phase");
    s.n = c.integer("model.n", s.n);
    s.alpha = c.num("model.alpha", s.alpha);
    s.x = c.num("model.x", s.x);
    s.z = c.num("run.z", s.z);
    if (s.n < 1) throw ConfigError("model.n must be >= 1");
    if (!(s.alpha > 1.0) || !(s.x > 0.0)) throw ConfigError("model.alpha must exceed 1 and model.x must be positive");
    if (!(s.z > 0.0 && s.z < 1.0)) throw ConfigError("run.z must lie in (0, 1)");

    s.single.delta = c.num("single.delta", s.single.delta);
    s.single.Delta = c.num("single.Delta", s.single.Delta);
    s.single.Omega = c.num("single.Omega", s.single.Omega);
    s.single.kappa = c.num("single.kappa", s.single.kappa);
    s.single.gamma = c.num("single.gamma", s.single.gamma);

    s.abc.a = c.num("bimodal.a", s.abc.a);
    s.abc.b = c.num("bimodal.b", s.abc.b);
    s.abc.c = c.num("bimodal.c", s.abc.c);
    s.bimodal.Omega1 = c.num("bimodal.Omega1", s.bimodal.Omega1);
    s.bimodal.Omega2 = c.num("bimodal.Omega2", s.bimodal.Omega2);
    s.bimodal.kappa1 = c.num("bimodal.kappa1", s.bimodal.kappa1);
    s.bimodal.kappa2 = c.num("bimodal.kappa2", s.bimodal.kappa2);
    s.bimodal.gamma = c.num("bimodal.gamma", s.bimodal.gamma);

    if (c.has("run.initial")) s.initial_label = c.integer("run.initial");
    if (c.has("run.distribution")) s.initial_distribution = parse_list("run.distribution", c.str("run.distribution"));
    s.engine = c.str("run.engine", s.engine);
    if (s.engine != "chain" && s.engine != "oracle") throw ConfigError("run.engine must be chain or oracle");
    s.t_end = c.num("run.t_end", s.t_end);
    s.points = c.integer("run.points", s.points);
    if (s.points < 2) throw ConfigError("run.points must be >= 2");
    s.phase1_t_end = c.num("two_phase.t_end1", s.phase1_t_end);
    s.phase2_t_end = c.num("two_phase.t_end2", s.phase2_t_end);

    s.direction = c.str("sweep.direction", s.direction);
    if (s.direction != "forward" && s.direction != "reverse") throw ConfigError("sweep.direction must be forward or reverse");
    for (const std::string sec : {"sweep", "sweep2"}) {
        if (!c.has(sec + ".axis")) continue;
        SweepAxis a;
        a.name = c.str(sec + ".axis");
        a.start = c.num(sec + ".start");
        a.stop = c.num(sec + ".stop", a.start);
        a.points = c.integer(sec + ".points", 1);
        if (a.points < 1) throw ConfigError(sec + ".points must be >= 1");
        s.axes.push_back(a);
    }

    s.validate.flip_phase_atom = c.integer("validate.flip_phase_atom", -1);
    s.validate.generic_tolerance = c.num("validate.generic_tolerance", s.validate.generic_tolerance);
    s.validate.leakage_tolerance = c.num("validate.leakage_tolerance", s.validate.leakage_tolerance);
    s.validate.population_tolerance = c.num("validate.population_tolerance", s.validate.population_tolerance);
    s.validate.leakage_window = c.num("validate.leakage_window", s.validate.leakage_window);
    s.validate.population_window = c.num("validate.population_window", s.validate.population_window);
    s.validate.steps = c.integer("validate.steps", s.validate.steps);
    s.validate.random_sets = c.integer("validate.random_sets", s.validate.random_sets);
    if (s.validate.steps < 10) throw ConfigError("validate.steps must be >= 10");
    if (s.validate.population_window > s.validate.leakage_window)
        throw ConfigError("validate.population_window must not exceed validate.leakage_window");

    s.optimize_resolution = c.integer("optimize.resolution", s.optimize_resolution);
    s.bimodal_grid.a_points = c.integer("optimize.a_points", s.bimodal_grid.a_points);
    s.bimodal_grid.b_points = c.integer("optimize.b_points", s.bimodal_grid.b_points);
    s.bimodal_grid.c_points = c.integer("optimize.c_points", s.bimodal_grid.c_points);
    s.bimodal_grid.min_detuning = c.num("optimize.min_detuning", s.bimodal_grid.min_detuning);

    // surface tilde-range and sign errors as configuration errors
    try {
        if (s.scheme == Scheme::Single) s.single_params();
        else s.bimodal_params();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return s;
}

// ------------------------------------ units and CSV ------------------------------------

// Frequencies are in units u with g = αx·u = 10 MHz; times in 1/u.
struct Units {
    bool mhz = false;
    double u_mhz = 1.0;

    static Units make(bool mhz, double alpha, double x) { return {mhz, 10.0 / (alpha * x)}; }
    double time(double t) const { return mhz ? t / u_mhz : t; }
    double freq(double f) const { return mhz ? f * u_mhz : f; }
    std::string time_col(const std::string& name) const { return mhz ? name + "_us" : name; }
    std::string freq_col(const std::string& name) const { return mhz ? name + "_MHz" : name; }
};

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

// ------------------------------------ evolve ------------------------------------

struct EvolveResult {
    std::string csv;
    bool threshold_reached = true;
    std::string message;
};

namespace detail {

inline void write_header(std::ostringstream& o, const Units& u, int n, bool leak, bool phase) {
    o << u.time_col("t");
    for (int j = 0; j <= n; ++j) o << ",rho_" << j;
    if (leak) o << ",leakage";
    if (phase) o << ",phase";
    o << "\n";
}

inline void write_row(std::ostringstream& o, const Units& u, double t, const Eigen::VectorXd& r,
                      std::optional<double> leak = std::nullopt, int phase = 0) {
    o << fmt(u.time(t));
    for (Eigen::Index j = 0; j < r.size(); ++j) o << "," << fmt(r(j));
    if (leak) o << "," << fmt(*leak);
    if (phase) o << "," << phase;
    o << "\n";
}

inline RateChain bimodal_chain(const BimodalParams& p) {
    if (p.Omega2 == 0.0) return bimodal_forward_rates(p);
    if (p.Omega1 == 0.0) return bimodal_reverse_rates(p);
    throw ConfigError("the chain engine needs one of bimodal.Omega1, bimodal.Omega2 set to zero; use run.engine = oracle");
}

}  // namespace detail

inline EvolveResult run_evolve(const ScenarioConfig& s, const Units& u = {}) {
    EvolveResult res;
    std::ostringstream o;
    if (s.scheme == Scheme::BimodalTwoPhase) {
        if (!(s.phase1_t_end > 0.0) || !(s.phase2_t_end > 0.0))
            throw ConfigError("two-phase runs need two_phase.t_end1 and two_phase.t_end2");
        BimodalSmall ph1 = s.bimodal, ph2 = s.bimodal;
        ph1.Omega1 = 0.0;
        ph2.Omega2 = 0.0;
        const RateChain rev = bimodal_reverse_rates(realize_bimodal(s.abc, s.n, s.alpha, s.x, ph1));
        const RateChain fwd = bimodal_forward_rates(realize_bimodal(s.abc, s.n, s.alpha, s.x, ph2));
        const Eigen::VectorXd r0 = s.initial(3);
        detail::write_header(o, u, s.n, false, true);
        const auto t_switch = time_to_reach(rev, r0, 0, s.z, s.phase1_t_end);
        const double t1 = t_switch.value_or(s.phase1_t_end);
        std::vector<double> g1 = uniform_grid(t1, s.points);
        const auto p1 = solve_chain_numeric(rev, r0, g1);
        for (std::size_t k = 0; k < g1.size(); ++k) detail::write_row(o, u, g1[k], p1[k], std::nullopt, 1);
        if (!t_switch) {
            res.threshold_reached = false;
            res.message = "phase 1 did not reach rho_0 >= " + fmt(s.z) + " within two_phase.t_end1; phase 2 skipped";
            res.csv = o.str();
            return res;
        }
        Eigen::VectorXd start = p1.back();
        start /= start.sum();
        const std::vector<double> g2 = uniform_grid(s.phase2_t_end, s.points);
        const auto p2 = solve_chain_numeric(fwd, start, g2);
        for (std::size_t k = 1; k < g2.size(); ++k) detail::write_row(o, u, t1 + g2[k], p2[k], std::nullopt, 2);
        res.message = "switched drives at t = " + fmt(u.time(t1));
        res.csv = o.str();
        return res;
    }

    if (!(s.t_end > 0.0)) throw ConfigError("evolve needs run.t_end > 0");
    const std::vector<double> grid = uniform_grid(s.t_end, s.points);
    if (s.engine == "chain") {
        RateChain chain = s.scheme == Scheme::Single ? single_mode_rates(s.single_params()) : detail::bimodal_chain(s.bimodal_params());
        const Eigen::VectorXd r0 = s.initial(chain.direction == Direction::LeftToRight ? 0 : 3);
        const auto pops = solve_chain_numeric(chain, r0, grid);
        detail::write_header(o, u, s.n, false, false);
        for (std::size_t k = 0; k < grid.size(); ++k) detail::write_row(o, u, grid[k], pops[k]);
    } else {
        if (!s.initial_distribution.empty()) throw ConfigError("the oracle engine starts from a single label (run.initial)");
        OracleOptions opt;
        opt.flipped_phase_atom = s.validate.flip_phase_atom;
        const OracleSystem sys = s.scheme == Scheme::Single ? build_oracle_single(s.single_params(), opt)
                                                            : build_oracle_bimodal(s.bimodal_params(), opt);
        const int j0 = s.initial_label.value_or(0);
        if (j0 < 0 || j0 > s.n) throw ConfigError("run.initial must lie in 0..n");
        const Trajectory tr = integrate(sys.H, sys.lindblad_matrices(), sys.pure_label(sys.basis.ground(j0)), s.t_end,
                                        s.t_end / (s.points - 1));
        detail::write_header(o, u, s.n, true, false);
        for (std::size_t k = 0; k < tr.t.size(); ++k)
            detail::write_row(o, u, tr.t[k], ground_populations(tr.rho[k], sys), leakage(tr.rho[k], sys));
    }
    res.csv = o.str();
    return res;
}

// ------------------------------------ sweep ------------------------------------

inline void apply_axis(ScenarioConfig& s, const std::string& name, double v) {
    auto nonneg = [&](double& field) {
        if (v < 0.0) throw ConfigError("sweep value for " + name + " must be non-negative");
        field = v;
    };
    if (name == "n") {
        if (v < 1.0 || v != static_cast<double>(static_cast<int>(v))) throw ConfigError("sweep over n needs positive integers");
        s.n = static_cast<int>(v);
        return;
    }
    if (s.scheme == Scheme::Single) {
        if (name == "kappa") return nonneg(s.single.kappa);
        if (name == "gamma") return nonneg(s.single.gamma);
        if (name == "Omega") return nonneg(s.single.Omega);
        if (name == "delta") { s.single.delta = v; return; }
        if (name == "Delta") { s.single.Delta = v; return; }
        if (name == "C") {
            if (!(v > 0.0)) throw ConfigError("sweep over C needs positive values");
            s.single.kappa = s.alpha * s.alpha / (v * s.single.gamma);
            return;
        }
    } else {
        if (name == "kappa1") return nonneg(s.bimodal.kappa1);
        if (name == "kappa2") return nonneg(s.bimodal.kappa2);
        if (name == "gamma") return nonneg(s.bimodal.gamma);
        if (name == "Omega1") return nonneg(s.bimodal.Omega1);
        if (name == "Omega2") return nonneg(s.bimodal.Omega2);
        if (name == "a") { s.abc.a = v; return; }
        if (name == "b") { s.abc.b = v; return; }
        if (name == "c") { s.abc.c = v; return; }
        if (name == "C1" || name == "C2") {
            if (!(v > 0.0)) throw ConfigError("sweep over " + name + " needs positive values");
            if (name == "C1") s.bimodal.kappa1 = s.alpha * s.alpha / (s.abc.b * s.abc.b * v * s.bimodal.gamma);
            else s.bimodal.kappa2 = s.alpha * s.alpha / (v * s.bimodal.gamma);
            return;
        }
    }
    throw ConfigError("unknown sweep axis '" + name + "' for this scheme");
}

struct SweepRow {
    int n = 0;
    double C = 0.0, C1 = 0.0, C2 = 0.0, Omega = 0.0;
    BenchmarkResult bench;
    bool reverse = false;
};

inline SweepRow sweep_point(const ScenarioConfig& s) {
    SweepRow r;
    r.n = s.n;
    if (s.scheme == Scheme::Single) {
        const SchemeParams p = s.single_params();
        r.C = cooperativity(p);
        r.Omega = p.Omega;
        r.bench = benchmarks(single_mode_rates(p), s.z);
        return r;
    }
    BimodalSmall sm = s.bimodal;
    r.reverse = s.direction == "reverse";
    (r.reverse ? sm.Omega1 : sm.Omega2) = 0.0;
    const BimodalParams p = realize_bimodal(s.abc, s.n, s.alpha, s.x, sm);
    r.C1 = cooperativity_mode1(p);
    r.C2 = cooperativity_mode2(p);
    if (!r.reverse) {
        r.Omega = p.Omega1;
        r.bench = benchmarks(bimodal_forward_rates(p), s.z);
        return r;
    }
    r.Omega = p.Omega2;
    const RateChain chain = bimodal_reverse_rates(p);
    double horizon = 0.0;
    for (double t : chain.T) {
        if (!(t > 0.0)) throw ConfigError("reverse sweep point has a vanishing rate; |0> is unreachable");
        horizon += 100.0 / t;
    }
    r.bench.z = s.z;
    const auto tp = reverse_preparation_time(chain, s.initial(3), s.z, horizon);
    if (!tp) throw std::runtime_error("reverse sweep point did not reach the threshold");
    r.bench.T_p = *tp;
    r.bench.rho1_max = std::numeric_limits<double>::quiet_NaN();
    return r;
}

inline std::vector<SweepRow> sweep_rows(const ScenarioConfig& s) {
    if (s.axes.empty()) throw ConfigError("sweep needs sweep.axis, sweep.start, sweep.stop, sweep.points");
    if (s.scheme == Scheme::BimodalTwoPhase) throw ConfigError("sweeps run on scheme single or bimodal");
    std::vector<SweepRow> rows;
    std::vector<std::size_t> idx(s.axes.size(), 0);
    std::vector<std::vector<double>> vals;
    for (const auto& a : s.axes) vals.push_back(a.values());
    while (true) {
        ScenarioConfig point = s;
        for (std::size_t k = 0; k < s.axes.size(); ++k) apply_axis(point, s.axes[k].name, vals[k][idx[k]]);
        try {
            if (point.scheme == Scheme::Single) point.single_params();
            else point.bimodal_params();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("sweep point: ") + e.what());
        }
        rows.push_back(sweep_point(point));
        std::size_t k = s.axes.size();
        while (k > 0) {
            --k;
            if (++idx[k] < vals[k].size()) break;
            idx[k] = 0;
            if (k == 0) return rows;
        }
    }
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows, Scheme scheme, const Units& u = {}) {
    std::ostringstream o;
    o << "n," << (scheme == Scheme::Single ? "C" : "C1,C2") << "," << u.freq_col("Omega") << "," << u.time_col("T_p")
      << ",rho1_max," << u.time_col("S") << ",R,z\n";
    for (const auto& r : rows) {
        o << r.n << ",";
        if (scheme == Scheme::Single) o << fmt(r.C);
        else o << fmt(r.C1) << "," << fmt(r.C2);
        o << "," << fmt(u.freq(r.Omega)) << "," << fmt(u.time(r.bench.T_p)) << ",";
        if (!r.reverse) o << fmt(r.bench.rho1_max);
        o << "," << (r.bench.S ? fmt(u.time(*r.bench.S)) : std::string()) << "," << fmt(r.bench.R) << "," << fmt(r.bench.z)
          << "\n";
    }
    return o.str();
}

inline std::string run_sweep(const ScenarioConfig& s, const Units& u = {}) { return sweep_csv(sweep_rows(s), s.scheme, u); }

// ------------------------------------ optimize ------------------------------------

struct OptimizeResult {
    std::string csv;
    std::string summary;
};

inline OptimizeResult run_optimize(const ScenarioConfig& s) {
    OptimizeResult r;
    std::ostringstream o;
    if (s.scheme == Scheme::Single) {
        TildeSingle base = s.single;
        base.n = s.n;
        base.alpha = s.alpha;
        base.x = s.x;
        const SingleOptimum opt = optimize_single(base, s.optimize_resolution);
        o << "delta,Delta,T0,T1,ratio,order_one\n";
        for (const auto& row : opt.rows)
            o << fmt(row.delta) << "," << fmt(row.Delta) << "," << fmt(row.T0) << "," << fmt(row.T1) << "," << fmt(row.ratio)
              << "," << (row.order_one ? 1 : 0) << "\n";
        const double ref = single_ratio_on_constraint(base, base.delta);
        r.summary = "optimum delta = " + fmt(opt.delta) + ", Delta = " + fmt(opt.Delta) + ", T0/T1 = " + fmt(opt.ratio) +
                    "; configured point reaches " + fmt(ref / opt.grid_ratio) + " of the grid maximum";
    } else {
        const BimodalOptimum opt = optimize_bimodal(s.n, s.alpha, s.bimodal, s.bimodal_grid);
        o << "a,b,c,T0,T1,ratio,order_one,detuned\n";
        for (const auto& row : opt.rows)
            o << fmt(row.abc.a) << "," << fmt(row.abc.b) << "," << fmt(row.abc.c) << "," << fmt(row.T0) << ","
              << fmt(row.T1) << "," << fmt(row.ratio) << "," << (row.order_one ? 1 : 0) << "," << (row.detuned ? 1 : 0)
              << "\n";
        const double ref = evaluate_bimodal(s.abc, s.n, s.alpha, s.bimodal, s.bimodal_grid.min_detuning).ratio;
        r.summary = "optimum (a, b, c) = (" + fmt(opt.abc.a) + ", " + fmt(opt.abc.b) + ", " + fmt(opt.abc.c) +
                    "), T0/T1 = " + fmt(opt.ratio) + "; configured point reaches " + fmt(ref / opt.ratio) +
                    " of the grid maximum";
    }
    r.csv = o.str();
    return r;
}

// ------------------------------------ validate ------------------------------------

struct ValidationCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string text() const {
        std::ostringstream o;
        for (const auto& c : checks)
            o << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << fmt(c.value) << " tolerance=" << fmt(c.tolerance)
              << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
        o << (all_pass() ? "overall PASS" : "overall FAIL") << "\n";
        return o.str();
    }
};

namespace detail {

inline double generic_closed_gap(const SchemeParams& p) {
    return max_model_difference(effective_model_generic(build_single_mode(p)), closed_form_single_mode(p));
}
inline double generic_closed_gap(const BimodalParams& p) {
    return max_model_difference(effective_model_generic(build_bimodal(p), true), closed_form_bimodal(p));
}
inline double inverse_residual(const ModelBundle& m) {
    const Matrix h = h_nh(m);
    return max_abs_diff(h * h_nh_inverse(m), Matrix::Identity(h.rows(), h.cols()));
}

// Chain, initial label and reference time T_p for the oracle comparison.
struct ChainSetup {
    std::optional<RateChain> chain;
    int initial = 0;
    double T_p = 0.0;
};

inline double reference_time(const RateChain& c, const Eigen::VectorXd& r0, double z, int target) {
    if (c.direction == Direction::LeftToRight) {
        if (c.n >= 2 && c.rate(0) > 0.0 && c.rate(1) > 0.0) return preparation_time(c.rate(0), c.rate(1));
        if (c.rate(0) > 0.0) return 1.0 / c.rate(0);
        throw ConfigError("validate: vanishing transfer rate");
    }
    double horizon = 0.0;
    for (double t : c.T) horizon += t > 0.0 ? 100.0 / t : 0.0;
    const auto t = time_to_reach(c, r0, target, z, horizon);
    if (!t) throw ConfigError("validate: reverse chain never reaches the threshold");
    return *t;
}

}  // namespace detail

inline ValidationReport run_validate(const ScenarioConfig& s, std::optional<std::uint64_t> seed = std::nullopt) {
    if (s.scheme == Scheme::BimodalTwoPhase) throw ConfigError("validate runs on scheme single or bimodal");
    if (s.n > oracle_max_atoms) throw BudgetExceeded("validate: n exceeds the full-space cap of " + std::to_string(oracle_max_atoms));
    const ValidateSettings& v = s.validate;
    ValidationReport rep;

    double gap = 0.0, resid = 0.0;
    std::string note = "configured point";
    if (s.scheme == Scheme::Single) {
        const SchemeParams p = s.single_params();
        gap = detail::generic_closed_gap(p);
        resid = detail::inverse_residual(build_single_mode(p));
    } else {
        const BimodalParams p = s.bimodal_params();
        gap = detail::generic_closed_gap(p);
        resid = detail::inverse_residual(build_bimodal(p));
    }
    if (seed) {
        ParamGenerator gen(*seed);
        for (int k = 0; k < v.random_sets; ++k) {
            if (s.scheme == Scheme::Single) {
                const SchemeParams p = gen.single(s.n);
                gap = std::max(gap, detail::generic_closed_gap(p));
                resid = std::max(resid, detail::inverse_residual(build_single_mode(p)));
            } else {
                const BimodalParams p = gen.bimodal(s.n);
                gap = std::max(gap, detail::generic_closed_gap(p));
                resid = std::max(resid, detail::inverse_residual(build_bimodal(p)));
            }
        }
        note += " plus " + std::to_string(v.random_sets) + " random sets (seed " + std::to_string(*seed) + ")";
    }
    rep.checks.push_back({"generic_vs_closed_form", gap, v.generic_tolerance, gap <= v.generic_tolerance, note});
    rep.checks.push_back({"inverse_residual", resid, v.generic_tolerance, resid <= v.generic_tolerance, note});

    OracleOptions opt;
    opt.flipped_phase_atom = v.flip_phase_atom;
    detail::ChainSetup cs;
    OracleSystem sys = [&] {
        if (s.scheme == Scheme::Single) {
            const SchemeParams p = s.single_params();
            cs.chain = single_mode_rates(p);
            return build_oracle_single(p, opt);
        }
        const BimodalParams p = s.bimodal_params();
        if (p.Omega2 == 0.0 || p.Omega1 == 0.0) cs.chain = detail::bimodal_chain(p);
        return build_oracle_bimodal(p, opt);
    }();
    const bool reverse = cs.chain && cs.chain->direction == Direction::RightToLeft;
    cs.initial = s.initial_label.value_or(reverse ? std::min(3, s.n) : 0);
    if (cs.initial < 0 || cs.initial > s.n) throw ConfigError("run.initial must lie in 0..n");
    if (cs.chain) {
        cs.T_p = detail::reference_time(*cs.chain, basis_distribution(s.n, cs.initial), s.z, reverse ? 0 : 1);
    } else {
        // both drives on: use the forward chain of the Ω₁ drive as the time scale
        BimodalSmall sm = s.bimodal;
        sm.Omega2 = 0.0;
        const RateChain fwd = bimodal_forward_rates(realize_bimodal(s.abc, s.n, s.alpha, s.x, sm));
        cs.T_p = detail::reference_time(fwd, basis_distribution(s.n, 0), s.z, 1);
    }

    const double t_end = v.leakage_window * cs.T_p;
    const Trajectory tr = integrate(sys.H, sys.lindblad_matrices(), sys.pure_label(sys.basis.ground(cs.initial)), t_end,
                                    t_end / v.steps);
    const double leak = subspace_leakage(tr, sys);
    rep.checks.push_back({"subspace_leakage", leak, v.leakage_tolerance, leak <= v.leakage_tolerance,
                          "window " + fmt(v.leakage_window) + " T_p" +
                              (v.flip_phase_atom >= 0 ? ", drive phase of atom " + std::to_string(v.flip_phase_atom) + " inverted" : "")});

    if (cs.chain) {
        const auto pops = solve_chain_numeric(*cs.chain, basis_distribution(s.n, cs.initial), tr.t);
        double dev = 0.0;
        for (std::size_t k = 0; k < tr.t.size(); ++k) {
            if (tr.t[k] > v.population_window * cs.T_p * (1.0 + 1e-12)) break;
            dev = std::max(dev, (ground_populations(tr.rho[k], sys) - pops[k]).cwiseAbs().maxCoeff());
        }
        rep.checks.push_back({"effective_vs_full", dev, v.population_tolerance, dev <= v.population_tolerance,
                              "window " + fmt(v.population_window) + " T_p"});
    } else {
        rep.checks.push_back({"effective_vs_full", 0.0, v.population_tolerance, true,
                              "skipped: both drives on, populations do not decouple"});
    }
    double worst_eig = 0.0;
    for (const auto& r : tr.rho) worst_eig = std::min(worst_eig, min_eigenvalue(r));
    rep.checks.push_back({"positivity", -worst_eig, 1e-8, worst_eig >= -1e-8, "most negative eigenvalue, sign flipped"});
    return rep;
}

}  // namespace wstate
