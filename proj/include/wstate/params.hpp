// params.hpp: physical parameter records for the single-mode and bimodal schemes

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wstate {

// All frequencies in units of the reference frequency x.
struct SchemeParams {
    int n = 3;
    double g = 10.0;
    double Omega = 0.2;
    double kappa = 1.0;
    double gamma = 0.5;
    double Delta = 13.75;
    double delta = 80.0 / 11.0;

    void validate() const {
        if (n < 1) throw std::invalid_argument("SchemeParams: n must be >= 1");
        for (double v : {g, Omega, kappa, gamma, Delta, delta})
            if (!std::isfinite(v)) throw std::invalid_argument("SchemeParams: non-finite parameter");
        for (double v : {g, Omega, kappa, gamma})
            if (v < 0.0) throw std::invalid_argument("SchemeParams: g, Omega, kappa, gamma must be non-negative");
    }
};

struct BimodalParams {
    int n = 3;
    double g1 = 5.0, g2 = 10.0;
    double Omega1 = 0.2, Omega2 = 0.0;
    double kappa1 = 1.0, kappa2 = 1.0;
    double gamma = 0.5;
    double Delta1 = 20.0, Delta2 = 0.0;
    double delta1 = 23.75, delta2 = 5.9375;

    void validate() const {
        if (n < 1) throw std::invalid_argument("BimodalParams: n must be >= 1");
        for (double v : {g1, g2, Omega1, Omega2, kappa1, kappa2, gamma, Delta1, Delta2, delta1, delta2})
            if (!std::isfinite(v)) throw std::invalid_argument("BimodalParams: non-finite parameter");
        for (double v : {g1, g2, Omega1, Omega2, kappa1, kappa2, gamma})
            if (v < 0.0) throw std::invalid_argument("BimodalParams: couplings and rates must be non-negative");
    }
};

// Ω at most `ratio` times every one of g, κ, γ.
inline bool is_weak_driving(const SchemeParams& p, double ratio = 1.0) {
    return p.Omega <= ratio * std::min({p.g, p.kappa, p.gamma});
}

inline bool is_weak_driving(const BimodalParams& p, double ratio = 1.0) {
    const double scale = std::min({p.g1, p.g2, p.kappa1, p.kappa2, p.gamma});
    return std::max(p.Omega1, p.Omega2) <= ratio * scale;
}

inline double cooperativity(double g, double kappa, double gamma) {
    if (!(kappa > 0.0) || !(gamma > 0.0))
        throw std::domain_error("cooperativity: kappa and gamma must be positive");
    return g * g / (kappa * gamma);
}

inline double cooperativity(const SchemeParams& p) { return cooperativity(p.g, p.kappa, p.gamma); }
inline double cooperativity_mode1(const BimodalParams& p) { return cooperativity(p.g1, p.kappa1, p.gamma); }
inline double cooperativity_mode2(const BimodalParams& p) { return cooperativity(p.g2, p.kappa2, p.gamma); }

}  // namespace wstate
