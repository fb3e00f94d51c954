#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "overlap/montecarlo.hpp"
#include "overlap/noise.hpp"
#include "overlap/parallel.hpp"
#include "overlap/serialize.hpp"
#include "overlap/verify.hpp"

namespace {

using namespace overlap;

constexpr int kExitOk = 0;
constexpr int kExitComputeFailure = 1;
constexpr int kExitUsage = 2;

Strategy parse_strategy(const std::string& s) {
    if (s == "optimal") return Strategy::Optimal;
    if (s == "swap") return Strategy::Swap;
    if (s == "ep") return Strategy::EP;
    if (s == "ee") return Strategy::EE;
    throw CLI::ValidationError("--strategy", "unknown strategy '" + s + "'");
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

// ---- pmf -------------------------------------------------------------------

struct PmfArgs {
    int M = 1, N = 1, d = 2;
    double c = 0.5;
    std::string out, format = "csv";
};

int run_pmf(const PmfArgs& a) {
    const Scenario s(a.d, a.M, a.N);
    const OutcomeDistribution dist = pmf_given_c(s, a.c);
    emit(a.out, a.format == "json" ? to_json(dist, a.c) : to_csv(dist));
    return kExitOk;
}

// ---- figure ----------------------------------------------------------------

struct FigureArgs {
    std::string which;
    int M = 0, N = 0, d = 2, dmax = 20;
    std::string out;
};

std::vector<double> c_grid_101() {
    std::vector<double> g(101);
    for (int i = 0; i <= 100; ++i) g[i] = i / 100.0;
    return g;
}

int run_figure(const FigureArgs& a) {
    std::ostringstream os;
    const int threads = resolve_threads();
    if (a.which == "fig1") {
        const int N = a.N > 0 ? a.N : 1000;
        const Scenario s(2, N, N);
        os << "c,N*v_op,N*v_sw,N*v_ep,N*v_ee,(M+N)*v_op,(M+N)*v_sw,(M+N)*v_ep,(M+N)*v_ee\n";
        for (double c : c_grid_101()) {
            const double vop = local_mse_optimal_asymptotic(s, c);
            const double vsw = swap_local_mse(N, c);
            const double vep = ep_local_mse_asymptotic_equal(s, c);
            const double vee = ee_local_mse_asymptotic_equal(s, c);
            os << fmt17(c);
            for (double v : {vop, vsw, vep, vee}) os << ',' << fmt17(N * v);
            for (double v : {vop, vsw, vep, vee}) os << ',' << fmt17(2.0 * N * v);
            os << '\n';
        }
    } else if (a.which == "fig2a") {
        const int M = a.M > 0 ? a.M : 1000;
        os << "N,v_op,v_ep,v_ee\n";
        std::vector<std::string> rows(M);
#pragma omp parallel for schedule(static) num_threads(threads)
        for (int N = 1; N <= M; ++N) {
            const Scenario s(a.d, M, N);
            std::ostringstream row;
            row << N << ',' << fmt17(bayes_mse_optimal(s).value) << ','
                << fmt17(ep_bayes(s).second.value) << ',' << fmt17(ee_bayes(s).second.value);
            rows[N - 1] = row.str();
        }
        for (const auto& r : rows) os << r << '\n';
    } else if (a.which == "fig2b") {
        const int M = a.M > 0 ? a.M : 1000;
        if (a.dmax < 2) throw CLI::ValidationError("--dmax", "need dmax >= 2");
        os << "d,v_op,v_sw,v_ep,v_ee\n";
        std::vector<std::string> rows(a.dmax - 1);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int d = 2; d <= a.dmax; ++d) {
            const Scenario s(d, M, M);
            std::ostringstream row;
            row << d << ',' << fmt17(bayes_mse_optimal(s).value) << ','
                << fmt17(swap_bayes(d, M).second.value) << ',' << fmt17(ep_bayes(s).second.value)
                << ',' << fmt17(ee_bayes(s).second.value);
            rows[d - 2] = row.str();
        }
        for (const auto& r : rows) os << r << '\n';
    } else if (a.which == "fig2c") {
        const int M = a.M > 0 ? a.M : 100;
        const Scenario s(2, M, M);
        os << "c,F_op,F_sw\n";
        const auto grid = c_grid_101();
        std::vector<std::string> rows(grid.size());
#pragma omp parallel for schedule(static) num_threads(threads)
        for (long i = 0; i < static_cast<long>(grid.size()); ++i) {
            std::ostringstream row;
            row << fmt17(grid[i]) << ',' << fmt17(fidelity_optimal(s, grid[i])) << ','
                << fmt17(fidelity_swap(M, grid[i]));
            rows[i] = row.str();
        }
        for (const auto& r : rows) os << r << '\n';
    } else {
        throw CLI::ValidationError("figure", "unknown figure '" + a.which + "'");
    }
    emit(a.out, os.str());
    return kExitOk;
}

// ---- montecarlo -------------------------------------------------------------

struct MonteCarloArgs {
    std::string strategy = "optimal", mode = "local";
    int M = 1, N = 1, d = 2;
    double c = -1.0;
    long long trials = 10000;
    std::uint64_t seed = 0, stream = 0;
    bool clamp = false;
    std::string out, trial_csv;
};

int run_montecarlo(const MonteCarloArgs& a) {
    const Strategy strategy = parse_strategy(a.strategy);
    if (a.mode != "local" && a.mode != "bayes")
        throw CLI::ValidationError("--mode", "mode must be 'local' or 'bayes'");
    const bool local = a.mode == "local";
    if (local && (a.c < 0.0 || a.c > 1.0))
        throw CLI::ValidationError("--c", "local mode needs --c in [0,1]");
    if (strategy == Strategy::Swap && a.M != a.N)
        throw CLI::ValidationError("--strategy", "swap test needs M == N");
    if (a.trials < 1) throw CLI::ValidationError("--trials", "need at least one trial");

    const Scenario s(a.d, a.M, a.N);
    const SimMode mode = local ? SimMode::local_at(a.c) : SimMode::bayesian();
    const RngStream rng{a.seed, a.stream};
    SimulateOptions opt;
    opt.clamp_estimates = a.clamp;
    std::vector<TrialRecord> records;
    if (!a.trial_csv.empty()) opt.records = &records;

    const MseReport report = simulate(strategy, mode, s, a.trials, rng, opt);
    emit(a.out, to_json(strategy, local ? Mode::Local : Mode::Bayesian, report) + "\n");
    if (!a.trial_csv.empty()) write_file(a.trial_csv, trials_to_csv(records));
    return kExitOk;
}

// ---- noise ------------------------------------------------------------------

struct NoiseArgs {
    int M = 20, N = 20;
    double r_min = 0.5, r_max = 1.0;
    int r_steps = 6;
    bool crossover = false, grouped = false;
    double c = 0.5, eps_sw = 0.0, eps_sch = 0.0;
    int S = 1, R = 1;
    std::string out;
};

int run_noise(const NoiseArgs& a) {
    nlohmann::json j;
    if (a.crossover) {
        j["c"] = a.c;
        j["eps_sw"] = a.eps_sw;
        j["eps_sch"] = a.eps_sch;
        j["swap_wins"] = noisy_crossover(a.c, a.eps_sw, a.eps_sch);
    } else if (a.grouped) {
        j["c"] = a.c;
        j["S"] = a.S;
        j["R"] = a.R;
        j["crlb"] = grouped_crlb(a.c, a.S, a.R);
    } else {
        if (a.r_steps < 1) throw CLI::ValidationError("--r-steps", "need at least one step");
        if (a.r_min < 0.0 || a.r_max > 1.0 || a.r_min > a.r_max)
            throw CLI::ValidationError("--r-min/--r-max", "need 0 <= r_min <= r_max <= 1");
        auto& grid = j["grid"] = nlohmann::json::array();
        for (int i = 0; i < a.r_steps; ++i) {
            const double r0 =
                a.r_steps == 1 ? a.r_min
                               : a.r_min + (a.r_max - a.r_min) * i / (a.r_steps - 1.0);
            for (int k = 0; k < a.r_steps; ++k) {
                const double r1 =
                    a.r_steps == 1 ? a.r_min
                                   : a.r_min + (a.r_max - a.r_min) * k / (a.r_steps - 1.0);
                const MixedScenario ms(Scenario(2, a.M, a.N), r0, r1);
                grid.push_back({{"r0", r0},
                                {"r1", r1},
                                {"mse", mixed_bayes_mse(ms).value},
                                {"asymptotic", mixed_bayes_mse_asymptotic(ms)}});
            }
        }
        j["M"] = a.M;
        j["N"] = a.N;
    }
    emit(a.out, j.dump() + "\n");
    return kExitOk;
}

// ---- verify -----------------------------------------------------------------

int run_verify(const std::string& level) {
    const VerifyLevel lv = level == "full" ? VerifyLevel::Full : VerifyLevel::Fast;
    const auto results = run_verification(lv);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] %-42s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    return all ? kExitOk : kExitComputeFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"overlap-lab: overlap-estimation statistics, closed forms and simulations"};
    app.set_config("--config");
    app.require_subcommand(1);

    PmfArgs pmf;
    auto* cmd_pmf = app.add_subcommand("pmf", "write the J-outcome pmf at fixed overlap");
    cmd_pmf->add_option("--M", pmf.M, "copies of the first state")->required()->check(CLI::PositiveNumber);
    cmd_pmf->add_option("--N", pmf.N, "copies of the second state")->required()->check(CLI::PositiveNumber);
    cmd_pmf->add_option("--c", pmf.c, "true overlap in [0,1]")->required()->check(CLI::Range(0.0, 1.0));
    cmd_pmf->add_option("--d", pmf.d, "local dimension")->check(CLI::Range(2, 1000000));
    cmd_pmf->add_option("--out", pmf.out, "output path (stdout when omitted)");
    cmd_pmf->add_option("--format", pmf.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    FigureArgs fig;
    auto* cmd_fig = app.add_subcommand("figure", "emit a figure curve family as CSV");
    cmd_fig->add_option("which", fig.which, "fig1, fig2a, fig2b or fig2c")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2a", "fig2b", "fig2c"}));
    cmd_fig->add_option("--M", fig.M, "copies (figure-specific default)");
    cmd_fig->add_option("--N", fig.N, "copies (fig1 only)");
    cmd_fig->add_option("--d", fig.d, "dimension (fig2a)")->check(CLI::Range(2, 1000000));
    cmd_fig->add_option("--dmax", fig.dmax, "largest dimension (fig2b)");
    cmd_fig->add_option("--out", fig.out, "output path (stdout when omitted)");

    MonteCarloArgs mc;
    auto* cmd_mc = app.add_subcommand("montecarlo", "seeded end-to-end simulation of a strategy");
    cmd_mc->add_option("--strategy", mc.strategy, "optimal, swap, ep or ee")
        ->required()
        ->check(CLI::IsMember({"optimal", "swap", "ep", "ee"}));
    cmd_mc->add_option("--mode", mc.mode, "local or bayes")
        ->required()
        ->check(CLI::IsMember({"local", "bayes"}));
    cmd_mc->add_option("--M", mc.M, "copies of the first state")->required()->check(CLI::PositiveNumber);
    cmd_mc->add_option("--N", mc.N, "copies of the second state")->required()->check(CLI::PositiveNumber);
    cmd_mc->add_option("--d", mc.d, "local dimension")->check(CLI::Range(2, 1000000));
    cmd_mc->add_option("--c", mc.c, "true overlap (local mode)");
    cmd_mc->add_option("--trials", mc.trials, "number of trials")->check(CLI::PositiveNumber);
    cmd_mc->add_option("--seed", mc.seed, "RNG seed");
    cmd_mc->add_option("--stream", mc.stream, "RNG stream id");
    cmd_mc->add_flag("--clamp", mc.clamp, "clamp raw estimates into [0,1]");
    cmd_mc->add_option("--out", mc.out, "output path (stdout when omitted)");
    cmd_mc->add_option("--trial-csv", mc.trial_csv, "also write per-trial records as CSV");

    NoiseArgs noise;
    auto* cmd_noise = app.add_subcommand("noise", "mixed-qubit MSE tables and noisy-gate bounds");
    cmd_noise->add_option("--M", noise.M, "copies of the first state")->check(CLI::PositiveNumber);
    cmd_noise->add_option("--N", noise.N, "copies of the second state")->check(CLI::PositiveNumber);
    cmd_noise->add_option("--r-min", noise.r_min, "smallest purity in the grid");
    cmd_noise->add_option("--r-max", noise.r_max, "largest purity in the grid");
    cmd_noise->add_option("--r-steps", noise.r_steps, "grid points per purity axis");
    cmd_noise->add_flag("--crossover", noise.crossover, "evaluate the swap-vs-Schur noise condition");
    cmd_noise->add_flag("--grouped", noise.grouped, "evaluate the grouped Cramer-Rao bound");
    cmd_noise->add_option("--c", noise.c, "overlap for --crossover/--grouped");
    cmd_noise->add_option("--eps-sw", noise.eps_sw, "swap-test error rate");
    cmd_noise->add_option("--eps-sch", noise.eps_sch, "Schur-sampling error rate");
    cmd_noise->add_option("--S", noise.S, "copies per group");
    cmd_noise->add_option("--R", noise.R, "number of groups");
    cmd_noise->add_option("--out", noise.out, "output path (stdout when omitted)");

    std::string verify_level = "fast";
    auto* cmd_verify = app.add_subcommand("verify", "run the oracle cross-validation suite");
    cmd_verify->add_option("--level", verify_level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_pmf->parsed()) return run_pmf(pmf);
        if (cmd_fig->parsed()) return run_figure(fig);
        if (cmd_mc->parsed()) return run_montecarlo(mc);
        if (cmd_noise->parsed()) return run_noise(noise);
        if (cmd_verify->parsed()) return run_verify(verify_level);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedScenario& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputeFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputeFailure;
    }
    return kExitUsage;
}
