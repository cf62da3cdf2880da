// tilde.hpp: α/x scaling notation, detuning constraints, leading-order d_j and rate-ratio optimizers

#pragma once

#include "effective.hpp"
#include "rates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace wstate {

inline constexpr double order_one_min = 0.01;
inline constexpr double order_one_max = 10.0;

// Zero is allowed (a switched-off drive or channel).
inline bool is_order_one(double v) { return v == 0.0 || (std::abs(v) >= order_one_min && std::abs(v) <= order_one_max); }

// g = αx, δ = δ̃αx, Δ = Δ̃αx, Ω = Ω̃x, κ = κ̃x, γ = γ̃x
struct TildeSingle {
    int n = 3;
    double alpha = 10.0;
    double x = 1.0;
    double delta = 8.0 / 11.0;
    double Delta = 11.0 / 8.0;
    double Omega = 0.2;
    double kappa = 1.0;
    double gamma = 0.5;

    std::vector<std::string> order_one_violations() const {
        std::vector<std::string> v;
        if (!is_order_one(delta)) v.push_back("delta");
        if (!is_order_one(Delta)) v.push_back("Delta");
        if (!is_order_one(Omega)) v.push_back("Omega");
        if (!is_order_one(kappa)) v.push_back("kappa");
        if (!is_order_one(gamma)) v.push_back("gamma");
        return v;
    }
    void validate() const {
        if (n < 1) throw std::invalid_argument("TildeSingle: n must be >= 1");
        if (!(alpha > 1.0)) throw std::invalid_argument("TildeSingle: alpha must exceed 1");
        if (!(x > 0.0)) throw std::invalid_argument("TildeSingle: x must be positive");
        const auto bad = order_one_violations();
        if (!bad.empty()) throw std::invalid_argument("TildeSingle: " + bad.front() + " outside the order-one range");
    }
};

inline SchemeParams realize_single(const TildeSingle& t) {
    t.validate();
    const double y = t.alpha * t.x;
    SchemeParams p;
    p.n = t.n;
    p.g = y;
    p.delta = t.delta * y;
    p.Delta = t.Delta * y;
    p.Omega = t.Omega * t.x;
    p.kappa = t.kappa * t.x;
    p.gamma = t.gamma * t.x;
    p.validate();
    return p;
}

inline TildeSingle tilde_of(const SchemeParams& p, double alpha, double x) {
    if (!(alpha > 0.0) || !(x > 0.0)) throw std::invalid_argument("tilde_of: alpha and x must be positive");
    const double y = alpha * x;
    if (std::abs(p.g - y) > 1e-12 * y) throw std::invalid_argument("tilde_of: g differs from alpha * x");
    return {p.n, alpha, x, p.delta / y, p.Delta / y, p.Omega / x, p.kappa / x, p.gamma / x};
}

// ------------------------------------ leading order ------------------------------------

struct LeadingOrder {
    cd full;           // d_j from the realized parameters
    cd expansion;      // x²[α²·2(δ̃Δ̃ − (j+1)) − iα(Δ̃κ̃ + γ̃δ̃(n+1)/2) − γ̃κ̃(n+1)/4]
    double leading;    // x²α²·2(δ̃Δ̃ − (j+1))
    bool breakdown;    // α(n+1)/2 >= α²: the O(α) term is no longer subleading

    double relative_error() const { return std::abs(full - leading) / std::abs(full); }
};

inline bool leading_order_breakdown(double alpha, int n) { return alpha * (n + 1.0) / 2.0 >= alpha * alpha; }

inline LeadingOrder leading_order_dj(int j, const TildeSingle& t) {
    if (j < 0 || j >= t.n) throw std::out_of_range("leading_order_dj: j outside 0..n-1");
    const double a = t.alpha, x2 = t.x * t.x, n1 = t.n + 1.0;
    LeadingOrder r;
    r.full = single_mode_dj(realize_single(t), j);
    r.leading = x2 * a * a * 2.0 * (t.delta * t.Delta - (j + 1.0));
    r.expansion = x2 * (a * a * 2.0 * (t.delta * t.Delta - (j + 1.0)) -
                        I_unit * a * (t.Delta * t.kappa + t.gamma * t.delta * n1 / 2.0) - t.gamma * t.kappa * n1 / 4.0);
    r.breakdown = leading_order_breakdown(a, t.n);
    return r;
}

// ------------------------------------ bimodal (a, b, c) ------------------------------------

struct BimodalABC {
    double a = 0.25, b = 2.0, c = 0.5;

    void validate() const {
        if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) throw std::invalid_argument("BimodalABC: a, b, c must be positive");
    }
};

// Drive and dissipation tildes in units of x.
struct BimodalSmall {
    double Omega1 = 0.2, Omega2 = 0.0;
    double kappa1 = 1.0, kappa2 = 1.0;
    double gamma = 0.5;
};

struct BimodalTildes {
    double g1, delta1, delta2, Delta1, Delta2;
};

// g̃₁ = 1/b, Δ̃₁ = 1/c, δ̃₂ = c(1 + n a/b²), δ̃₁ = δ̃₂/a, Δ̃₂ = 0
inline BimodalTildes bimodal_tildes(const BimodalABC& abc, int n) {
    abc.validate();
    if (n < 1) throw std::invalid_argument("bimodal_tildes: n must be >= 1");
    BimodalTildes t{};
    t.g1 = 1.0 / abc.b;
    t.Delta1 = 1.0 / abc.c;
    t.delta2 = abc.c * (1.0 + n * abc.a / (abc.b * abc.b));
    t.delta1 = t.delta2 / abc.a;
    t.Delta2 = 0.0;
    return t;
}

inline BimodalParams realize_bimodal(const BimodalABC& abc, int n, double alpha, double x, const BimodalSmall& s) {
    if (!(alpha > 1.0) || !(x > 0.0)) throw std::invalid_argument("realize_bimodal: need alpha > 1 and x > 0");
    const BimodalTildes t = bimodal_tildes(abc, n);
    const double y = alpha * x;
    BimodalParams p;
    p.n = n;
    p.g2 = y;
    p.g1 = t.g1 * y;
    p.Delta1 = t.Delta1 * y;
    p.Delta2 = 0.0;
    p.delta2 = t.delta2 * y;
    p.delta1 = t.delta1 * y;
    p.Omega1 = s.Omega1 * x;
    p.Omega2 = s.Omega2 * x;
    p.kappa1 = s.kappa1 * x;
    p.kappa2 = s.kappa2 * x;
    p.gamma = s.gamma * x;
    p.validate();
    return p;
}

// Coefficient of α³x³ in d_j: 16Δ̃₁δ̃₁δ̃₂ − 16(n−j)g̃₁²δ̃₂ − 16(j+1)δ̃₁.
inline double bimodal_leading_coefficient(const BimodalTildes& t, int n, int j) {
    return 16.0 * t.Delta1 * t.delta1 * t.delta2 - 16.0 * (n - j) * t.g1 * t.g1 * t.delta2 - 16.0 * (j + 1.0) * t.delta1;
}

inline double bimodal_d1(const BimodalABC& abc, int n, int j) {
    return bimodal_leading_coefficient(bimodal_tildes(abc, n), n, j);
}

// Closed form 16 j δ̃₂ (1/b² − 1/a).  With `inverse_square_variant`, the 1/a² form.
inline double bimodal_d1_formula(const BimodalABC& abc, int n, int j, bool inverse_square_variant = false) {
    const BimodalTildes t = bimodal_tildes(abc, n);
    const double inv_a = inverse_square_variant ? 1.0 / (abc.a * abc.a) : 1.0 / abc.a;
    return 16.0 * j * t.delta2 * (1.0 / (abc.b * abc.b) - inv_a);
}

// ------------------------------------ optimizers ------------------------------------

inline double forward_rate_ratio(const RateChain& c) {
    if (c.n < 2) throw std::invalid_argument("rate ratio needs n >= 2");
    return c.rate(0) / c.rate(1);
}

struct SingleGridRow {
    double delta = 0.0, Delta = 0.0, T0 = 0.0, T1 = 0.0, ratio = 0.0;
    bool order_one = true;
};

struct SingleOptimum {
    double delta = 0.0;
    double Delta = 0.0;
    double ratio = 0.0;
    double grid_delta = 0.0;  // best point of the coarse grid
    double grid_ratio = 0.0;
    std::vector<SingleGridRow> rows;  // coarse grid
};

inline SingleGridRow single_on_constraint(const TildeSingle& base, double delta_t) {
    TildeSingle t = base;
    t.delta = delta_t;
    t.Delta = 1.0 / delta_t;
    SingleGridRow r;
    r.delta = t.delta;
    r.Delta = t.Delta;
    r.order_one = is_order_one(t.delta) && is_order_one(t.Delta);
    const RateChain c = single_mode_rates(realize_single(t));
    r.T0 = c.rate(0);
    r.T1 = c.rate(1);
    r.ratio = forward_rate_ratio(c);
    return r;
}

inline double single_ratio_on_constraint(const TildeSingle& base, double delta_t) {
    return single_on_constraint(base, delta_t).ratio;
}

// Grid argmax of T₀/T₁ over δ̃ in [lo, hi] with Δ̃ = 1/δ̃ (ties toward smaller δ̃),
// followed by `refinements` rounds of a finer grid around the incumbent.
inline SingleOptimum optimize_single(const TildeSingle& base, int resolution = 200, double lo = 0.3, double hi = 3.0,
                                     int refinements = 3) {
    if (resolution < 100) throw std::invalid_argument("optimize_single: resolution must be >= 100");
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("optimize_single: need 0 < lo < hi");
    SingleOptimum o;
    auto scan = [&](double a, double b, int pts, double& best_d, double& best_r, bool keep_rows) {
        bool any = false;
        for (int i = 0; i < pts; ++i) {
            const double d = a + (b - a) * i / (pts - 1);
            double r;
            try {
                const SingleGridRow row = single_on_constraint(base, d);
                r = row.ratio;
                if (keep_rows) o.rows.push_back(row);
            } catch (const std::exception&) {
                continue;
            }
            if (!std::isfinite(r)) continue;
            if (!any || r > best_r) {
                best_d = d;
                best_r = r;
                any = true;
            }
        }
        return any;
    };
    if (!scan(lo, hi, resolution, o.grid_delta, o.grid_ratio, true)) throw std::runtime_error("optimize_single: empty feasible grid");
    o.delta = o.grid_delta;
    o.ratio = o.grid_ratio;
    double step = (hi - lo) / (resolution - 1);
    for (int k = 0; k < refinements; ++k) {
        double d = o.delta, r = o.ratio;
        scan(std::max(lo, o.delta - step), std::min(hi, o.delta + step), 41, d, r, false);
        if (r > o.ratio) {
            o.delta = d;
            o.ratio = r;
        }
        step /= 20.0;
    }
    o.Delta = 1.0 / o.delta;
    return o;
}

struct BimodalGridRow {
    BimodalABC abc;
    double T0 = 0.0, T1 = 0.0, ratio = 0.0;
    bool order_one = true;     // all tildes inside [0.01, 10]
    bool detuned = true;       // excited detunings |Δ̃₁|, |Δ̃₁ − δ̃₁|, |Δ̃₁ − δ̃₂| >= min_detuning
};

struct BimodalOptimum {
    BimodalABC abc;
    double ratio = 0.0;
    std::vector<BimodalGridRow> rows;
};

struct BimodalGrid {
    double a_lo = 0.125, a_hi = 1.0;
    int a_points = 36;
    double b_lo = 1.0, b_hi = 4.0;
    int b_points = 61;
    double c_lo = 0.25, c_hi = 1.0;
    int c_points = 31;
    double min_detuning = 0.25;
};

inline BimodalGridRow evaluate_bimodal(const BimodalABC& abc, int n, double alpha, const BimodalSmall& s,
                                       double min_detuning = 0.25) {
    BimodalSmall fwd = s;
    fwd.Omega2 = 0.0;
    const BimodalParams p = realize_bimodal(abc, n, alpha, 1.0, fwd);
    const RateChain c = bimodal_forward_rates(p);
    const BimodalTildes t = bimodal_tildes(abc, n);
    BimodalGridRow r;
    r.abc = abc;
    r.T0 = c.rate(0);
    r.T1 = c.rate(1);
    r.ratio = r.T0 / r.T1;
    r.order_one = is_order_one(t.g1) && is_order_one(t.delta1) && is_order_one(t.delta2) && is_order_one(t.Delta1);
    r.detuned = std::abs(t.Delta1) >= min_detuning && std::abs(t.Delta1 - t.delta1) >= min_detuning &&
                std::abs(t.Delta1 - t.delta2) >= min_detuning;
    return r;
}

// Exhaustive argmax of forward T₀/T₁ (Ω₂ = 0) over the (a, b, c) grid; every point is reported.
inline BimodalOptimum optimize_bimodal(int n, double alpha, const BimodalSmall& s, const BimodalGrid& g = {}) {
    if (n < 2) throw std::invalid_argument("optimize_bimodal: n must be >= 2");
    if (g.a_points < 2 || g.b_points < 2 || g.c_points < 2) throw std::invalid_argument("optimize_bimodal: grid needs >= 2 points per axis");
    auto lin = [](double lo, double hi, int k, int pts) { return lo + (hi - lo) * k / (pts - 1); };
    BimodalOptimum o;
    bool any = false;
    for (int i = 0; i < g.a_points; ++i)
        for (int j = 0; j < g.b_points; ++j)
            for (int k = 0; k < g.c_points; ++k) {
                const BimodalABC abc{lin(g.a_lo, g.a_hi, i, g.a_points), lin(g.b_lo, g.b_hi, j, g.b_points),
                                     lin(g.c_lo, g.c_hi, k, g.c_points)};
                BimodalGridRow r;
                try {
                    r = evaluate_bimodal(abc, n, alpha, s, g.min_detuning);
                } catch (const std::exception&) {
                    continue;
                }
                if (!std::isfinite(r.ratio)) continue;
                if (!any || r.ratio > o.ratio) {
                    o.abc = abc;
                    o.ratio = r.ratio;
                    any = true;
                }
                o.rows.push_back(r);
            }
    if (!any) throw std::runtime_error("optimize_bimodal: empty feasible grid");
    return o;
}

}  // namespace wstate
