// random_params.hpp: seeded generators of weak-driving parameter sets

#pragma once

#include "params.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace wstate {

class ParamGenerator {
  public:
    explicit ParamGenerator(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    // Ω stays below min(g, κ, γ); detunings avoid exact resonances by construction of the ranges.
    SchemeParams single(int n) {
        SchemeParams p;
        p.n = n;
        p.g = uniform(5.0, 15.0);
        p.kappa = uniform(0.3, 2.0);
        p.gamma = uniform(0.2, 1.5);
        p.Omega = uniform(0.05, 0.9) * std::min({p.g, p.kappa, p.gamma});
        p.Delta = uniform(-20.0, 20.0);
        p.delta = uniform(-20.0, 20.0);
        return p;
    }

    BimodalParams bimodal(int n) {
        BimodalParams p;
        p.n = n;
        p.g1 = uniform(2.0, 12.0);
        p.g2 = uniform(5.0, 15.0);
        p.kappa1 = uniform(0.3, 2.0);
        p.kappa2 = uniform(0.3, 2.0);
        p.gamma = uniform(0.2, 1.5);
        const double cap = std::min({p.g1, p.g2, p.kappa1, p.kappa2, p.gamma});
        p.Omega1 = uniform(0.05, 0.9) * cap;
        p.Omega2 = uniform(0.05, 0.9) * cap;
        p.Delta1 = uniform(-25.0, 25.0);
        p.Delta2 = uniform(-2.0, 2.0);
        p.delta1 = uniform(-25.0, 25.0);
        p.delta2 = uniform(-25.0, 25.0);
        return p;
    }

  private:
    std::mt19937_64 rng_;
};

}  // namespace wstate
