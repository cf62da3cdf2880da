// wstate_cli: basis listing, population evolution, benchmark sweeps, optimizers and oracle validation

#include "wstate/scenario.hpp"
#include "wstate/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int exit_validation = 2;
constexpr int exit_config = 3;

struct Common {
    std::string config;
    std::string out;
    std::string units = "x";
    std::optional<std::uint64_t> seed;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw wstate::ConfigError("cannot write " + path);
    f << text;
}

wstate::ScenarioConfig load_scenario(const Common& c) {
    const wstate::Config cfg = c.config.empty() ? wstate::Config{} : wstate::Config::load(c.config);
    return wstate::scenario_from_config(cfg);
}

wstate::Units units_for(const Common& c, const wstate::ScenarioConfig& s) {
    return wstate::Units::make(c.units == "MHz", s.alpha, s.x);
}

std::string basis_table(const wstate::SymmetricBasis& b) {
    std::string o = "index,label,kind,j,mode,norm_numerator,norm_denominator,norm\n";
    for (std::size_t i = 0; i < b.size(); ++i) {
        const auto& l = b.label(i);
        const auto nf = b.norm_fraction(i);
        o += std::to_string(i) + "," + wstate::to_string(l) + "," + std::string(wstate::label_kind_name(l.kind)) + "," +
             std::to_string(l.j) + "," + std::to_string(l.mode) + "," + std::to_string(nf.numerator) + "," +
             std::to_string(nf.denominator) + "," + wstate::fmt(nf.value()) + "\n";
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative W-state preparation: symmetric-basis models, rate chains and full-space checks"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "scenario file (section.key = value lines)");
        sub->add_option("--out", common.out, "output path (stdout when omitted)");
        sub->add_option("--units", common.units, "unit annotation of CSV columns")->check(CLI::IsMember({"x", "MHz"}));
        sub->add_option("--seed", common.seed, "seed for randomized parameter sets (validate only)");
    };

    auto* basis = app.add_subcommand("basis-info", "list the symmetric basis labels and norms");
    add_common(basis);
    std::optional<int> basis_n, basis_modes;
    std::string model_out;
    basis->add_option("--n", basis_n, "atom count (overrides model.n)");
    basis->add_option("--modes", basis_modes, "cavity modes, 1 or 2 (overrides model.scheme)");
    basis->add_option("--model-out", model_out, "write the model bundle and its effective model as JSON");

    auto* evolve = app.add_subcommand("evolve", "population trajectory CSV");
    add_common(evolve);
    auto* sweep = app.add_subcommand("sweep", "benchmark CSV over one or two parameter axes");
    add_common(sweep);
    auto* optimize = app.add_subcommand("optimize", "rate-ratio grid search with report CSV");
    add_common(optimize);
    auto* validate = app.add_subcommand("validate", "compare reduced models against the full-space oracle");
    add_common(validate);

    CLI11_PARSE(app, argc, argv);

    try {
        wstate::ScenarioConfig s = load_scenario(common);
        const wstate::Units u = units_for(common, s);

        if (*basis) {
            const int n = basis_n.value_or(s.n);
            const int modes = basis_modes.value_or(s.scheme == wstate::Scheme::Single ? 1 : 2);
            const wstate::SymmetricBasis b(n, modes);
            emit(basis_table(b), common.out);
            if (!model_out.empty()) {
                s.n = n;
                wstate::json j;
                if (modes == 1) {
                    const auto p = s.single_params();
                    const auto m = wstate::build_single_mode(p, b);
                    j = {{"bundle", wstate::to_json(m)}, {"effective", wstate::to_json(wstate::effective_model_generic(m))}};
                } else {
                    const auto p = s.bimodal_params();
                    const auto m = wstate::build_bimodal(p, b);
                    j = {{"bundle", wstate::to_json(m)},
                         {"effective", wstate::to_json(wstate::effective_model_generic(m, true))}};
                }
                emit(j.dump(2) + "\n", model_out);
            }
            return 0;
        }
        if (*evolve) {
            const auto r = wstate::run_evolve(s, u);
            emit(r.csv, common.out);
            if (!r.message.empty()) std::cerr << r.message << "\n";
            return r.threshold_reached ? 0 : exit_validation;
        }
        if (*sweep) {
            emit(wstate::run_sweep(s, u), common.out);
            return 0;
        }
        if (*optimize) {
            const auto r = wstate::run_optimize(s);
            emit(r.csv, common.out);
            std::cerr << r.summary << "\n";
            return 0;
        }
        if (*validate) {
            const auto rep = wstate::run_validate(s, common.seed);
            emit(rep.text(), common.out);
            return rep.all_pass() ? 0 : exit_validation;
        }
    } catch (const wstate::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const wstate::BudgetExceeded& e) {
        std::cerr << "memory cap: " << e.what() << "\n";
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
