// rates.hpp: decoupled population chain, analytic solutions and protocol benchmarks

#pragma once

#include "effective.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wstate {

enum class Direction { LeftToRight, RightToLeft };

inline std::string_view direction_name(Direction d) { return d == Direction::LeftToRight ? "left-to-right" : "right-to-left"; }

// LeftToRight: T_j moves population |j> -> |j+1>.  RightToLeft: T_j moves |j+1> -> |j>.
struct RateChain {
    int n = 1;
    Direction direction = Direction::LeftToRight;
    std::vector<double> T;  // j = 0..n-1

    double rate(int j) const { return (j < 0 || j >= n) ? 0.0 : T[static_cast<std::size_t>(j)]; }
    double max_rate() const { return T.empty() ? 0.0 : *std::max_element(T.begin(), T.end()); }

    void validate() const {
        if (n < 1) throw std::invalid_argument("RateChain: n must be >= 1");
        if (static_cast<int>(T.size()) != n) throw std::invalid_argument("RateChain: need exactly n rates");
        for (double t : T)
            if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("RateChain: rates must be finite and non-negative");
    }

    // dρ/dt = M ρ
    Eigen::MatrixXd generator() const {
        validate();
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
        for (int j = 0; j < n; ++j) {
            const int from = direction == Direction::LeftToRight ? j : j + 1;
            const int to = direction == Direction::LeftToRight ? j + 1 : j;
            m(to, from) += T[static_cast<std::size_t>(j)];
            m(from, from) -= T[static_cast<std::size_t>(j)];
        }
        return m;
    }
};

// Sum of squared ladder elements of all effective operators in the chosen direction.
inline RateChain transfer_rates(const EffectiveModel& eff, Direction dir) {
    const Eigen::Index N = eff.H_eff.rows();
    if (N < 2 || eff.H_eff.cols() != N) throw std::invalid_argument("transfer_rates: H_eff must be square with n >= 1");
    RateChain c;
    c.n = static_cast<int>(N - 1);
    c.direction = dir;
    c.T.assign(static_cast<std::size_t>(c.n), 0.0);
    for (const auto& l : eff.L_eff) {
        if (l.op.rows() != N || l.op.cols() != N) throw std::invalid_argument("transfer_rates: operator " + l.name() + " not square on ground labels");
        for (int j = 0; j < c.n; ++j)
            c.T[static_cast<std::size_t>(j)] += dir == Direction::LeftToRight ? std::norm(l.op(j + 1, j)) : std::norm(l.op(j, j + 1));
    }
    return c;
}

inline RateChain single_mode_rates(const SchemeParams& p) {
    RateChain c{p.n, Direction::LeftToRight, {}};
    for (int j = 0; j < p.n; ++j) c.T.push_back(single_mode_rate_formula(p, j));
    return c;
}

inline RateChain bimodal_forward_rates(const BimodalParams& p) {
    RateChain c{p.n, Direction::LeftToRight, {}};
    for (int j = 0; j < p.n; ++j) c.T.push_back(bimodal_forward_rate_formula(p, j));
    return c;
}

inline RateChain bimodal_reverse_rates(const BimodalParams& p) {
    RateChain c{p.n, Direction::RightToLeft, {}};
    for (int j = 0; j < p.n; ++j) c.T.push_back(bimodal_reverse_rate_formula(p, j));
    return c;
}

// ------------------------------------ numeric chain ------------------------------------

inline void require_distribution(const Eigen::VectorXd& rho0, int n) {
    if (rho0.size() != n + 1) throw std::invalid_argument("chain: initial distribution must have n+1 entries");
    for (Eigen::Index i = 0; i < rho0.size(); ++i)
        if (rho0(i) < 0.0 || !std::isfinite(rho0(i))) throw std::invalid_argument("chain: negative or non-finite initial probability");
    if (std::abs(rho0.sum() - 1.0) > 1e-9) throw std::invalid_argument("chain: initial probabilities must sum to 1");
}

inline Eigen::VectorXd basis_distribution(int n, int j) {
    if (j < 0 || j > n) throw std::out_of_range("basis_distribution: label outside 0..n");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 1);
    v(j) = 1.0;
    return v;
}

inline Eigen::VectorXd rk4_step(const Eigen::MatrixXd& m, const Eigen::VectorXd& r, double h) {
    const Eigen::VectorXd k1 = m * r;
    const Eigen::VectorXd k2 = m * (r + 0.5 * h * k1);
    const Eigen::VectorXd k3 = m * (r + 0.5 * h * k2);
    const Eigen::VectorXd k4 = m * (r + h * k3);
    return r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Advances by `span` in equal RK4 steps no longer than 0.01 / max T.
inline Eigen::VectorXd advance_chain(const Eigen::MatrixXd& m, double max_rate, Eigen::VectorXd r, double span) {
    if (span <= 0.0 || max_rate <= 0.0) return r;
    const double hmax = 0.01 / max_rate;
    const auto steps = static_cast<long long>(std::ceil(span / hmax));
    const double h = span / static_cast<double>(steps);
    for (long long s = 0; s < steps; ++s) r = rk4_step(m, r, h);
    return r;
}

// Populations at each grid time (grid ascending, starting at or after 0).
inline std::vector<Eigen::VectorXd> solve_chain_numeric(const RateChain& chain, const Eigen::VectorXd& rho0,
                                                        const std::vector<double>& t_grid) {
    chain.validate();
    require_distribution(rho0, chain.n);
    const Eigen::MatrixXd m = chain.generator();
    std::vector<Eigen::VectorXd> out;
    out.reserve(t_grid.size());
    Eigen::VectorXd r = rho0;
    double t = 0.0;
    for (double tg : t_grid) {
        if (tg < t) throw std::invalid_argument("solve_chain_numeric: time grid must be ascending and non-negative");
        r = advance_chain(m, chain.max_rate(), r, tg - t);
        t = tg;
        out.push_back(r);
    }
    return out;
}

inline std::vector<double> uniform_grid(double t_end, int points) {
    if (points < 2 || !(t_end >= 0.0)) throw std::invalid_argument("uniform_grid: need t_end >= 0 and at least 2 points");
    std::vector<double> g;
    for (int i = 0; i < points; ++i) g.push_back(t_end * i / (points - 1));
    return g;
}

// ------------------------------------ analytic forms ------------------------------------

struct Rho01 {
    double rho0 = 1.0;
    double rho1 = 0.0;
};

// ρ₀ = e^{−T₀t}, ρ₁ = T₀/(T₀−T₁)(e^{−T₁t} − e^{−T₀t}); written through expm1 so T₀ → T₁ is continuous.
inline Rho01 analytic_rho01(double T0, double T1, double t) {
    if (!(T0 > 0.0) || !(T1 > 0.0)) throw std::domain_error("analytic_rho01: rates must be positive");
    Rho01 r;
    r.rho0 = std::exp(-T0 * t);
    const double eps = T0 - T1;
    if (eps == 0.0) {
        r.rho1 = T0 * t * std::exp(-T0 * t);
    } else {
        r.rho1 = T0 * std::exp(-T0 * t) * std::expm1(eps * t) / eps;
    }
    return r;
}

class DegenerateRates : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct ReverseN3Constants {
    double A, B, C, D;
};

// ρ₀(t) = −A e^{−T₀t} − (T₀/T₁) B e^{−T₁t} − (T₀/T₂) C e^{−T₂t} + D for the chain started in |3>.
// `flipped_sign_of_C` uses the opposite sign of C, which fails ρ₀(0) = 0.
inline ReverseN3Constants reverse_n3_constants(double T0, double T1, double T2, bool flipped_sign_of_C = false) {
    for (double t : {T0, T1, T2})
        if (!(t > 0.0)) throw std::domain_error("analytic_rho0_reverse_n3: rates must be positive");
    if (T0 == T1 || T1 == T2 || T0 == T2) throw DegenerateRates("analytic_rho0_reverse_n3: repeated rates, use solve_chain_numeric");
    ReverseN3Constants c{};
    c.B = T1 * T2 / ((T0 - T1) * (T2 - T1));
    c.C = T1 * T2 / ((T0 - T2) * (T1 - T2));
    if (flipped_sign_of_C) c.C = -c.C;
    c.A = -(c.B + c.C);
    c.D = 1.0;
    return c;
}

inline double analytic_rho0_reverse_n3(double T0, double T1, double T2, double t, bool flipped_sign_of_C = false) {
    const auto c = reverse_n3_constants(T0, T1, T2, flipped_sign_of_C);
    return -c.A * std::exp(-T0 * t) - (T0 / T1) * c.B * std::exp(-T1 * t) - (T0 / T2) * c.C * std::exp(-T2 * t) + c.D;
}

// ------------------------------------ benchmarks ------------------------------------

struct BenchmarkResult {
    double T_p = 0.0;
    double rho1_max = 0.0;
    std::optional<double> S;
    std::optional<double> R;
    double z = 0.0;
};

// T_p = ln(T₁/T₀)/(T₁−T₀), with the limit 1/T₀ at equal rates.
inline double preparation_time(double T0, double T1) {
    if (!(T0 > 0.0) || !(T1 > 0.0)) throw std::domain_error("preparation_time: rates must be positive");
    if (T0 == T1) return 1.0 / T0;
    return std::log(T1 / T0) / (T1 - T0);
}

inline BenchmarkResult benchmarks(double T0, double T1, double z) {
    if (!(z > 0.0 && z < 1.0)) throw std::invalid_argument("benchmarks: z must lie in (0, 1)");
    BenchmarkResult b;
    b.z = z;
    b.T_p = preparation_time(T0, T1);
    b.rho1_max = analytic_rho01(T0, T1, b.T_p).rho1;
    if (b.rho1_max < z) return b;
    auto f = [&](double t) { return analytic_rho01(T0, T1, t).rho1 - z; };
    double lo = b.T_p, hi = std::max(100.0 / T1, 2.0 * b.T_p);
    while (f(hi) > 0.0) hi *= 2.0;
    const double tol = 1e-10 * b.T_p;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    // Newton polish inside the bracket; dρ₁/dt = T₀ρ₀ − T₁ρ₁.
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const Rho01 r = analytic_rho01(T0, T1, t);
        const double slope = T0 * r.rho0 - T1 * r.rho1;
        if (!(slope < 0.0)) break;
        const double next = t - (r.rho1 - z) / slope;
        if (!(next >= lo && next <= hi)) break;
        t = next;
    }
    b.S = t - b.T_p;
    b.R = *b.S / b.T_p;
    return b;
}

inline BenchmarkResult benchmarks(const RateChain& chain, double z) {
    if (chain.n < 2) throw std::invalid_argument("benchmarks: need n >= 2 so that T_1 exists");
    return benchmarks(chain.rate(0), chain.rate(1), z);
}

// First time at which population of |target> reaches z, refined by bisection inside the crossing step.
inline std::optional<double> time_to_reach(const RateChain& chain, const Eigen::VectorXd& rho0, int target, double z,
                                           double t_max) {
    chain.validate();
    require_distribution(rho0, chain.n);
    if (target < 0 || target > chain.n) throw std::out_of_range("time_to_reach: target outside 0..n");
    if (rho0(target) >= z) return 0.0;
    const double mr = chain.max_rate();
    if (mr <= 0.0) return std::nullopt;
    const Eigen::MatrixXd m = chain.generator();
    const double h = 0.01 / mr;
    Eigen::VectorXd r = rho0;
    double t = 0.0;
    while (t < t_max) {
        const Eigen::VectorXd next = rk4_step(m, r, h);
        if (next(target) >= z) {
            double lo = 0.0, hi = h;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (rk4_step(m, r, mid)(target) >= z ? hi : lo) = mid;
            }
            return t + hi;
        }
        r = next;
        t += h;
    }
    return std::nullopt;
}

// Time for the right-to-left chain to bring |0> to z.
inline std::optional<double> reverse_preparation_time(const RateChain& chain, const Eigen::VectorXd& rho0, double z,
                                                      double t_max) {
    if (chain.direction != Direction::RightToLeft) throw std::invalid_argument("reverse_preparation_time: chain must be right-to-left");
    return time_to_reach(chain, rho0, 0, z, t_max);
}

}  // namespace wstate
