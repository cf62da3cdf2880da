// two_phase: reverse drive into |0>, then forward drive into the W state, for a few atom numbers

#include "wstate/rates.hpp"
#include "wstate/tilde.hpp"

#include <cstdio>

int main(int argc, char** argv) {
    using namespace wstate;
    const double z = argc > 1 ? std::atof(argv[1]) : 0.95;
    const BimodalABC abc{0.25, 2.0, 0.5};

    BimodalSmall rev;
    rev.Omega1 = 0.0;
    rev.Omega2 = 0.5;
    rev.kappa1 = 2.0;
    rev.kappa2 = 0.25;
    rev.gamma = 1.0;
    BimodalSmall fwd = rev;
    fwd.Omega1 = 0.2;
    fwd.Omega2 = 0.0;

    std::printf("%3s %8s %8s %12s %10s %12s\n", "n", "C1", "C2", "t_switch", "rho1_max", "T_p(fwd)");
    for (int n = 3; n <= 8; ++n) {
        const BimodalParams p1 = realize_bimodal(abc, n, 10.0, 1.0, rev);
        const BimodalParams p2 = realize_bimodal(abc, n, 10.0, 1.0, fwd);
        const RateChain down = bimodal_reverse_rates(p1), up = bimodal_forward_rates(p2);

        // start with every atom in |1>
        double horizon = 0.0;
        for (double t : down.T) horizon += 100.0 / t;
        const auto ts = reverse_preparation_time(down, basis_distribution(n, n), z, horizon);
        if (!ts) {
            std::printf("%3d: |0> not reached\n", n);
            continue;
        }
        Eigen::VectorXd r = solve_chain_numeric(down, basis_distribution(n, n), {*ts}).back();
        r /= r.sum();

        const BenchmarkResult b = benchmarks(up, 0.85);
        double peak = 0.0;
        for (const auto& s : solve_chain_numeric(up, r, uniform_grid(3.0 * b.T_p, 601))) peak = std::max(peak, s(1));
        std::printf("%3d %8.1f %8.1f %12.1f %10.4f %12.1f\n", n, cooperativity_mode1(p2), cooperativity_mode2(p1), *ts, peak,
                    b.T_p);
    }
}
