// acceptance: one PASS/FAIL line per acceptance criterion; exit status 1 when any criterion fails

#include "../support.hpp"
#include "wstate/oracle.hpp"
#include "wstate/random_params.hpp"
#include "wstate/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace wstate;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << title << ": " << o.detail << std::endl;
}

// Shared random parameter sets for criteria 3 and 4.
struct RandomSets {
    std::vector<SchemeParams> single;
    std::vector<BimodalParams> bimodal;
};

RandomSets random_sets() {
    RandomSets r;
    ParamGenerator gen(1234);
    for (int n = 1; n <= 10; ++n)
        for (int k = 0; k < 20; ++k) {
            r.single.push_back(gen.single(n));
            r.bimodal.push_back(gen.bimodal(n));
        }
    return r;
}

// ---------------------------------------------------------------------------------------------

Outcome algebra() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& rel : checks::single_atom_relations()) worst = std::max(worst, max_abs_diff(rel.lhs, rel.rhs));
    for (int n = 1; n <= 3; ++n)
        for (const auto& rel : checks::collective_relations(n)) worst = std::max(worst, max_abs_diff(rel.lhs, rel.rhs));
    double table = 0.0;
    for (int i = 1; i <= 8; ++i)
        for (int j = 1; j <= 8; ++j)
            for (int k = 1; k <= 8; ++k)
                table = std::max(table, std::abs(structure_constant(i, j, k) - checks::structure_constant_from_trace(i, j, k)));
    const double dt = seconds_since(t0);
    return {worst <= 1e-12 && table <= 1e-12 && dt < 1.0,
            "commutator residual " + g(worst) + ", f_ijk residual " + g(table) + ", " + g(dt) + " s"};
}

Outcome combinatorics() {
    bool ok = multiplet_dimension({3, 0}) == 10 && single_excitation_count(3) == 7;
    for (int n = 1; n <= 10; ++n)
        ok = ok && symmetric_basis(n, 1).size() == static_cast<std::size_t>(3 * n + 2) &&
             symmetric_basis(n, 2).size() == static_cast<std::size_t>(4 * n + 3);
    return {ok, "d(3,0) = " + std::to_string(multiplet_dimension({3, 0})) + ", d1(3) = " +
                    std::to_string(single_excitation_count(3)) + ", basis sizes 3n+2 and 4n+3 for n = 1..10"};
}

Outcome inversion(const RandomSets& sets) {
    const auto t0 = Clock::now();
    double resid = 0.0, dense = 0.0;
    auto check = [&](const ModelBundle& m) {
        const Matrix h = h_nh(m);
        const Matrix inv = h_nh_inverse(m);
        resid = std::max(resid, max_abs_diff(h * inv, Matrix::Identity(h.rows(), h.cols())));
        dense = std::max(dense, max_abs_diff(inv, Matrix(h.inverse())));
    };
    for (const auto& p : sets.single) check(build_single_mode(p));
    for (const auto& p : sets.bimodal) check(build_bimodal(p));
    const double dt = seconds_since(t0);
    return {resid <= 1e-10 && dense <= 1e-10 && dt < 10.0,
            "400 models, residual " + g(resid) + ", vs dense " + g(dense) + ", " + g(dt) + " s"};
}

Outcome closed_forms(const RandomSets& sets) {
    double s = 0.0, b = 0.0;
    for (const auto& p : sets.single)
        s = std::max(s, max_model_difference(effective_model_generic(build_single_mode(p)), closed_form_single_mode(p)));
    for (const auto& p : sets.bimodal)
        b = std::max(b, max_model_difference(effective_model_generic(build_bimodal(p), true), closed_form_bimodal(p)));
    return {s <= 1e-10 && b <= 1e-10, "single-mode gap " + g(s) + ", bimodal gap " + g(b)};
}

// Full-space runs at the reference tilde point, shared by criteria 5 and 6.
struct FullRun {
    double T_p = 0.0;
    double leakage = 0.0;
    double deviation = 0.0;  // over [0, 2T_p]; single mode only
};

FullRun run_single(int n, double omega, int flip = -1) {
    TildeSingle t;
    t.n = n;
    t.Omega = omega;
    const SchemeParams p = realize_single(t);
    const RateChain chain = single_mode_rates(p);
    OracleOptions opt;
    opt.flipped_phase_atom = flip;
    const OracleSystem sys = build_oracle_single(p, opt);
    FullRun r;
    r.T_p = benchmarks(chain, 0.85).T_p;
    const int steps = 500;
    const Trajectory tr = integrate(sys.H, sys.lindblad_matrices(), sys.pure_label(sys.basis.ground(0)), 5.0 * r.T_p,
                                    5.0 * r.T_p / steps);
    const auto pops = solve_chain_numeric(chain, basis_distribution(n, 0), tr.t);
    for (std::size_t k = 0; k < tr.t.size(); ++k) {
        r.leakage = std::max(r.leakage, leakage(tr.rho[k], sys));
        if (tr.t[k] <= 2.0 * r.T_p * (1.0 + 1e-12))
            r.deviation = std::max(r.deviation, (ground_populations(tr.rho[k], sys) - pops[k]).cwiseAbs().maxCoeff());
    }
    return r;
}

FullRun run_bimodal(int n, int flip = -1) {
    BimodalSmall sm;
    sm.Omega1 = 0.2;
    sm.Omega2 = 0.2;
    BimodalSmall fwd = sm;
    fwd.Omega2 = 0.0;
    const BimodalABC abc{0.25, 2.0, 0.5};
    const BimodalParams p = realize_bimodal(abc, n, 10.0, 1.0, sm);
    OracleOptions opt;
    opt.flipped_phase_atom = flip;
    const OracleSystem sys = build_oracle_bimodal(p, opt);
    FullRun r;
    r.T_p = benchmarks(bimodal_forward_rates(realize_bimodal(abc, n, 10.0, 1.0, fwd)), 0.85).T_p;
    const Trajectory tr = integrate(sys.H, sys.lindblad_matrices(), sys.pure_label(sys.basis.ground(0)), 5.0 * r.T_p,
                                    5.0 * r.T_p / 200);
    r.leakage = subspace_leakage(tr, sys);
    return r;
}

std::vector<FullRun> single_runs;  // n = 2, 3 at the reference drive

Outcome invariance() {
    double worst = 0.0;
    std::ostringstream o;
    for (int n : {2, 3}) {
        single_runs.push_back(run_single(n, 0.2));
        const FullRun b = run_bimodal(n);
        worst = std::max({worst, single_runs.back().leakage, b.leakage});
    }
    const double control = std::min(run_single(2, 0.2, 0).leakage, run_bimodal(2, 0).leakage);
    o << "max leakage " << g(worst) << " over [0, 5T_p] (n = 2, 3, both schemes); flipped-phase control " << g(control);
    return {worst < 1e-10 && control > 1e-4, o.str()};
}

Outcome effective_vs_full() {
    if (single_runs.size() != 2) throw std::runtime_error("criterion 5 runs missing");
    const double d2 = single_runs[0].deviation, d3 = single_runs[1].deviation;
    const double strong = run_single(2, 2.0).deviation;
    std::ostringstream o;
    o << "Omega~ = 1/5: deviation " << g(d2) << " (n = 2), " << g(d3) << " (n = 3), limit 0.05; Omega~ = 2: " << g(strong)
      << " (must exceed 0.05)";
    return {d2 <= 0.05 && d3 <= 0.05 && strong > 0.05, o.str()};
}

Outcome analytic() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ur(0.05, 3.0), ut(0.0, 6.0);
    double fw = 0.0, rv = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double T0 = ur(rng), T1 = ur(rng), T2 = ur(rng), t = ut(rng);
        const RateChain f{3, Direction::LeftToRight, {T0, T1, T2}};
        const Eigen::VectorXd a = solve_chain_numeric(f, basis_distribution(3, 0), {t}).back();
        const Rho01 r = analytic_rho01(T0, T1, t);
        fw = std::max({fw, std::abs(r.rho0 - a(0)), std::abs(r.rho1 - a(1))});
        const RateChain b{3, Direction::RightToLeft, {T0, T1, T2}};
        const Eigen::VectorXd c = solve_chain_numeric(b, basis_distribution(3, 3), {t}).back();
        rv = std::max(rv, std::abs(analytic_rho0_reverse_n3(T0, T1, T2, t) - c(0)));
    }
    return {fw < 1e-8 && rv < 1e-8, "100 samples, forward " + g(fw) + ", reverse " + g(rv)};
}

Outcome scaling() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(0.01, 5.0);
    bool exact = true;
    double peak_slope = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double T0 = ur(rng), T1 = ur(rng);
        exact = exact && preparation_time(T0, T1) == std::log(T1 / T0) / (T1 - T0);
        const double tp = preparation_time(T0, T1);
        const Rho01 r = analytic_rho01(T0, T1, tp);
        peak_slope = std::max(peak_slope, std::abs(T0 * r.rho0 - T1 * r.rho1) / T0);
    }
    ParamGenerator gen(8);
    double rate_err = 0.0, tp_err = 0.0, peak_err = 0.0, r_err = 0.0;
    for (int k = 0; k < 20; ++k) {
        SchemeParams p = gen.single(3 + k % 5);
        for (double s : {0.1, 0.5, 3.0}) {
            SchemeParams q = p;
            q.Omega = s * p.Omega;
            const RateChain a = single_mode_rates(p), b = single_mode_rates(q);
            for (int j = 0; j < p.n; ++j) rate_err = std::max(rate_err, std::abs(b.rate(j) - s * s * a.rate(j)) / a.rate(j));
            const BenchmarkResult ba = benchmarks(a.rate(0), a.rate(1), 0.5), bb = benchmarks(b.rate(0), b.rate(1), 0.5);
            tp_err = std::max(tp_err, std::abs(bb.T_p * s * s - ba.T_p) / ba.T_p);
            peak_err = std::max(peak_err, std::abs(bb.rho1_max - ba.rho1_max));
            if (ba.R && bb.R) r_err = std::max(r_err, std::abs(*bb.R - *ba.R) / *ba.R);
            else if (ba.R.has_value() != bb.R.has_value()) r_err = 1.0;
        }
    }
    const double worst = std::max({rate_err, tp_err, peak_err, r_err});
    return {exact && peak_slope < 1e-12 && worst <= 1e-12,
            std::string(exact ? "T_p formula exact" : "T_p formula mismatch") + ", slope at T_p " + g(peak_slope) +
                ", scaling errors: rates " + g(rate_err) + ", T_p " + g(tp_err) + ", rho1_max " + g(peak_err) + ", R " +
                g(r_err)};
}

Outcome optimizers() {
    TildeSingle t;
    t.kappa = 0.5;
    t.gamma = 0.5;
    const SingleOptimum so = optimize_single(t);
    const double single_frac = single_ratio_on_constraint(t, 8.0 / 11.0) / so.ratio;

    BimodalSmall sm;
    sm.kappa1 = 1.0;
    sm.kappa2 = 0.5;
    sm.gamma = 0.5;
    const BimodalOptimum bo = optimize_bimodal(3, 10.0, sm);
    const double bimodal_frac = evaluate_bimodal({0.25, 2.0, 0.5}, 3, 10.0, sm).ratio / bo.ratio;
    const double d10 = bimodal_d1({0.25, 2.0, 0.5}, 3, 0);

    std::ostringstream o;
    o << "single (8/11, 11/8) at " << g(single_frac) << " of max (optimum delta~ " << g(so.delta)
      << "); bimodal (1/4, 2, 1/2) at " << g(bimodal_frac) << " of max (optimum at a = " << g(bo.abc.a)
      << ", b = " << g(bo.abc.b) << ", c = " << g(bo.abc.c) << "); d1(0) = " << d10;
    return {single_frac >= 0.95 && bimodal_frac >= 0.9 && d10 == 0.0, o.str()};
}

// Largest relative spread max/min along one axis of a benchmark table (rows: C1, columns: C2).
double axis_variation(const std::vector<std::vector<double>>& tab, bool over_c1) {
    const std::size_t rows = tab.size(), cols = tab[0].size();
    double worst = 0.0;
    for (std::size_t fixed = 0; fixed < (over_c1 ? cols : rows); ++fixed) {
        double lo = 1e300, hi = -1e300, sum = 0.0;
        const std::size_t len = over_c1 ? rows : cols;
        for (std::size_t k = 0; k < len; ++k) {
            const double v = over_c1 ? tab[k][fixed] : tab[fixed][k];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        worst = std::max(worst, (hi - lo) / (sum / static_cast<double>(len)));
    }
    return worst;
}

Outcome trends() {
    std::ostringstream o;
    bool peak_ok = true;
    for (int n : {3, 6, 10}) {
        TildeSingle t;
        t.n = n;
        double prev = -1.0;
        for (int k = 0; k < 12; ++k) {
            t.kappa = 2.0 - 0.15 * k;
            const double v = benchmarks(single_mode_rates(realize_single(t)), 0.85).rho1_max;
            peak_ok = peak_ok && v >= prev;
            prev = v;
        }
    }
    o << "rho1_max vs C " << (peak_ok ? "non-decreasing" : "NOT monotone") << " (n = 3, 6, 10)";

    bool reverse_ok = true;
    double prev = 1e300;
    std::string tps;
    for (int n = 3; n <= 10; ++n) {
        BimodalSmall sm;
        sm.Omega1 = 0.0;
        sm.Omega2 = 0.5;
        sm.kappa1 = 2.0;
        sm.kappa2 = 0.25;
        sm.gamma = 1.0;
        const RateChain c = bimodal_reverse_rates(realize_bimodal({0.25, 2.0, 0.5}, n, 10.0, 1.0, sm));
        double horizon = 0.0;
        for (double r : c.T) horizon += 100.0 / r;
        const auto tp = reverse_preparation_time(c, basis_distribution(n, 3), 0.95, horizon);
        const double v = tp.value_or(1e300);
        reverse_ok = reverse_ok && tp.has_value() && v < prev;
        prev = v;
        tps += (tps.empty() ? "" : " ") + g(v);
    }
    o << "; reverse T_p over n = 3..10: " << tps << (reverse_ok ? " (decreasing)" : " (NOT decreasing)");

    ScenarioConfig s;
    s.scheme = Scheme::Bimodal;
    s.n = 3;
    s.bimodal.Omega1 = 0.2;
    s.bimodal.Omega2 = 0.0;
    s.bimodal.gamma = 0.5;
    s.z = 0.85;
    std::vector<std::vector<double>> tp(9, std::vector<double>(9)), peak = tp, ratio = tp;
    for (int i = 0; i < 9; ++i)
        for (int k = 0; k < 9; ++k) {
            apply_axis(s, "C1", 200.0 + 100.0 * i);
            apply_axis(s, "C2", 200.0 + 100.0 * k);
            const SweepRow r = sweep_point(s);
            tp[i][k] = r.bench.T_p;
            peak[i][k] = r.bench.rho1_max;
            ratio[i][k] = r.bench.R.value_or(std::numeric_limits<double>::quiet_NaN());
        }
    bool split_ok = true;
    const std::vector<std::pair<std::string, const std::vector<std::vector<double>>*>> tables = {
        {"T_p", &tp}, {"rho1_max", &peak}, {"R", &ratio}};
    for (const auto& [name, tab] : tables) {
        const double v1 = axis_variation(*tab, true), v2 = axis_variation(*tab, false);
        const double q = v1 / v2;
        split_ok = split_ok && std::isfinite(q) && q < 0.1;
        o << "; " << name << " C1/C2 variation " << g(q);
    }
    o << " (limit 0.1)";
    return {peak_ok && reverse_ok && split_ok, o.str()};
}

Outcome two_phase() {
    const auto t0 = Clock::now();
    const ScenarioConfig s = scenario_from_config(Config::parse_string(
        "model.scheme = bimodal-two-phase\nmodel.n = 5\nbimodal.Omega1 = 1/5\nbimodal.Omega2 = 1/2\n"
        "bimodal.kappa1 = 2\nbimodal.kappa2 = 1/4\nbimodal.gamma = 1\nrun.initial = 3\nrun.z = 0.95\n"
        "two_phase.t_end1 = 20000\ntwo_phase.t_end2 = 2000\nrun.points = 2001\n"));
    BimodalSmall ph2 = s.bimodal;
    ph2.Omega2 = 0.0;
    const double c2 = cooperativity_mode2(realize_bimodal(s.abc, s.n, s.alpha, s.x, ph2));
    const EvolveResult r = run_evolve(s);
    double rho0_end1 = 0.0, plateau = 0.0;
    std::istringstream in(r.csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<double> f;
        std::istringstream ls(line);
        for (std::string x; std::getline(ls, x, ',');) f.push_back(std::stod(x));
        if (f.back() == 1.0) rho0_end1 = f[1];
        else plateau = std::max(plateau, f[2]);
    }
    const double dt = seconds_since(t0);
    std::ostringstream o;
    o << r.message << "; phase 1 rho_0 " << g(rho0_end1) << ", phase 2 max rho_1 " << g(plateau) << " at C2 = " << g(c2)
      << ", " << g(dt) << " s";
    return {r.threshold_reached && rho0_end1 >= 0.95 - 1e-6 && plateau >= 0.85 && c2 >= 400.0 && dt < 60.0, o.str()};
}

}  // namespace

int main() {
    const RandomSets sets = random_sets();
    report(1, "algebra", algebra);
    report(2, "combinatorics", combinatorics);
    report(3, "inversion", [&] { return inversion(sets); });
    report(4, "closed-form equivalence", [&] { return closed_forms(sets); });
    report(5, "subspace invariance", invariance);
    report(6, "effective vs full dynamics", effective_vs_full);
    report(7, "analytic solutions", analytic);
    report(8, "benchmarks and scaling", scaling);
    report(9, "optimizer consistency", optimizers);
    report(10, "trend reproduction", trends);
    report(11, "two-phase protocol", two_phase);
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
