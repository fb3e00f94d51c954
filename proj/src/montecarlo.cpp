#include "overlap/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "overlap/parallel.hpp"

namespace overlap {

double PureState::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s;
}

double overlap_sq(const PureState& a, const PureState& b) {
    std::complex<double> ip{0.0, 0.0};
    for (std::size_t i = 0; i < a.amp.size(); ++i) ip += std::conj(a.amp[i]) * b.amp[i];
    return std::norm(ip);
}

namespace {

PureState haar_state_impl(int d, Xoshiro256pp& gen) {
    PureState psi;
    psi.amp.resize(d);
    double n2 = 0.0;
    for (auto& a : psi.amp) {
        a = {gen.normal(), gen.normal()};
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : psi.amp) a *= inv;
    return psi;
}

// Haar-uniform unit vector orthogonal to `ref`.
PureState orthogonal_haar_impl(const PureState& ref, Xoshiro256pp& gen) {
    const int d = ref.dim();
    for (;;) {
        PureState chi = haar_state_impl(d, gen);
        std::complex<double> ip{0.0, 0.0};
        for (int i = 0; i < d; ++i) ip += std::conj(ref.amp[i]) * chi.amp[i];
        double n2 = 0.0;
        for (int i = 0; i < d; ++i) {
            chi.amp[i] -= ip * ref.amp[i];
            n2 += std::norm(chi.amp[i]);
        }
        if (n2 < 1e-24) continue; // chi was (numerically) parallel to ref
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : chi.amp) a *= inv;
        return chi;
    }
}

std::pair<PureState, PureState> pair_with_overlap_impl(int d, double c, Xoshiro256pp& gen) {
    PureState psi = haar_state_impl(d, gen);
    PureState perp = orthogonal_haar_impl(psi, gen);
    const double theta = 2.0 * M_PI * gen.uniform();
    const std::complex<double> phase{std::cos(theta), std::sin(theta)};
    const double rc = std::sqrt(c), rs = std::sqrt(1.0 - c);
    PureState phi;
    phi.amp.resize(d);
    for (int i = 0; i < d; ++i) phi.amp[i] = rc * psi.amp[i] + phase * rs * perp.amp[i];
    return {std::move(psi), std::move(phi)};
}

PureState covariant_estimate_impl(const PureState& phi, int M, int d, Xoshiro256pp& gen) {
    // radial law: t = |<phi_V|phi>|^2 ~ Beta(M+1, d-1)
    const double t = d == 2 ? sample_beta(M + 1.0, 1.0, gen) : sample_beta(M + 1.0, d - 1.0, gen);
    PureState perp = orthogonal_haar_impl(phi, gen);
    const double theta = 2.0 * M_PI * gen.uniform();
    const std::complex<double> phase{std::cos(theta), std::sin(theta)};
    const double rt = std::sqrt(t), rs = std::sqrt(1.0 - t);
    PureState out;
    out.amp.resize(d);
    for (int i = 0; i < d; ++i) out.amp[i] = rt * phi.amp[i] + phase * rs * perp.amp[i];
    return out;
}

double sample_prior_overlap(int d, Xoshiro256pp& gen) {
    // Beta(1, d-1): c = 1 - u^(1/(d-1))
    if (d == 2) return gen.uniform();
    return 1.0 - std::pow(gen.uniform_open(), 1.0 / (d - 1.0));
}

HalfInt j_outcome_impl(const Scenario& s, double c, Xoshiro256pp& gen) {
    const double u = gen.uniform();
    double cum = 0.0;
    HalfInt last = s.j_min();
    for (HalfInt J : s.j_ladder()) {
        cum += p_j_given_c(s, J, c);
        last = J;
        if (u < cum) return J;
    }
    return last;
}

struct TrialSetup {
    Strategy strategy;
    SimMode mode;
    const Scenario& s;
    bool clamp;
    // precomputed pieces
    std::vector<double> optimal_cdf;       // Local mode only
    std::vector<double> optimal_estimate;  // per ladder index
    std::vector<double> discrete_estimate; // swap / ep per-k table
    EeBayesEstimator ee_estimator{0, 0, 0};
};

TrialSetup make_setup(Strategy strategy, SimMode mode, const Scenario& s,
                      const SimulateOptions& opt) {
    if (strategy == Strategy::Swap && s.M != s.N)
        throw UnsupportedScenario("swap test needs M == N (got M=" + std::to_string(s.M) +
                                  ", N=" + std::to_string(s.N) + ")");
    if (mode.kind == Mode::Local) mode.c = clamp_unit(mode.c, "simulate LocalAt");
    TrialSetup ts{strategy, mode, s, opt.clamp_estimates, {}, {}, {}, {s.d, s.M, s.N}};

    const auto lad = s.j_ladder();
    if (strategy == Strategy::Optimal) {
        ts.optimal_estimate.reserve(lad.size());
        for (HalfInt J : lad)
            ts.optimal_estimate.push_back(mode.kind == Mode::Local
                                              ? local_estimator_optimal(s, J)
                                              : bayes_estimator_optimal(s, J));
        if (mode.kind == Mode::Local) {
            double cum = 0.0;
            for (HalfInt J : lad) {
                cum += p_j_given_c(s, J, mode.c);
                ts.optimal_cdf.push_back(cum);
            }
        }
    } else if (strategy == Strategy::Swap && mode.kind == Mode::Bayesian) {
        auto [table, mse] = swap_bayes(s.d, s.N);
        (void)mse;
        for (const auto& [k, v] : table.mapping) ts.discrete_estimate.push_back(v);
    } else if (strategy == Strategy::EP && mode.kind == Mode::Bayesian) {
        auto [table, mse] = ep_bayes(s);
        (void)mse;
        for (const auto& [k, v] : table.mapping) ts.discrete_estimate.push_back(v);
    }
    return ts;
}

TrialRecord run_trial(const TrialSetup& ts, Xoshiro256pp& gen) {
    const Scenario& s = ts.s;
    const double c =
        ts.mode.kind == Mode::Local ? ts.mode.c : sample_prior_overlap(s.d, gen);
    TrialRecord rec{c, 0.0, 0.0};
    switch (ts.strategy) {
        case Strategy::Optimal: {
            std::size_t idx = 0;
            if (ts.mode.kind == Mode::Local) {
                const double u = gen.uniform();
                idx = static_cast<std::size_t>(
                    std::lower_bound(ts.optimal_cdf.begin(), ts.optimal_cdf.end(), u) -
                    ts.optimal_cdf.begin());
                if (idx >= ts.optimal_cdf.size()) idx = ts.optimal_cdf.size() - 1;
            } else {
                const double u = gen.uniform();
                double cum = 0.0;
                const auto lad = s.j_ladder();
                idx = lad.size() - 1;
                for (std::size_t i = 0; i < lad.size(); ++i) {
                    cum += p_j_given_c(s, lad[i], c);
                    if (u < cum) {
                        idx = i;
                        break;
                    }
                }
            }
            rec.outcome = s.j_min().twice() + 2.0 * static_cast<double>(idx); // 2J
            rec.estimate = ts.optimal_estimate[idx];
            break;
        }
        case Strategy::Swap: {
            const int k = sample_binomial(s.N, 0.5 * (1.0 + c), gen);
            rec.outcome = k;
            rec.estimate = ts.mode.kind == Mode::Local ? 2.0 * k / s.N - 1.0
                                                       : ts.discrete_estimate[k];
            break;
        }
        case Strategy::EP: {
            auto [psi, phi] = pair_with_overlap_impl(s.d, c, gen);
            const PureState phi_v = covariant_estimate_impl(phi, s.M, s.d, gen);
            const double pv = overlap_sq(phi_v, psi);
            const int k = sample_binomial(s.N, std::min(1.0, pv), gen);
            rec.outcome = k;
            rec.estimate = ts.mode.kind == Mode::Local ? static_cast<double>(k) / s.N
                                                       : ts.discrete_estimate[k];
            break;
        }
        case Strategy::EE: {
            auto [psi, phi] = pair_with_overlap_impl(s.d, c, gen);
            const PureState phi_v = covariant_estimate_impl(phi, s.M, s.d, gen);
            const PureState psi_w = covariant_estimate_impl(psi, s.N, s.d, gen);
            const double w = std::min(1.0, overlap_sq(phi_v, psi_w));
            rec.outcome = w;
            rec.estimate = ts.mode.kind == Mode::Local ? w : ts.ee_estimator(w);
            break;
        }
    }
    if (ts.clamp) rec.estimate = std::min(1.0, std::max(0.0, rec.estimate));
    return rec;
}

MseReport reduce_trials(Strategy strategy, const std::vector<TrialRecord>& recs,
                        const SimulateOptions& opt) {
    (void)strategy;
    const long long n = static_cast<long long>(recs.size());
    KahanSum sum;
    for (const auto& r : recs) {
        const double e = r.estimate - r.c;
        sum.add(e * e);
    }
    const double mse = sum.value() / n;
    KahanSum var;
    for (const auto& r : recs) {
        const double e = r.estimate - r.c;
        const double dev = e * e - mse;
        var.add(dev * dev);
    }
    const double stderr_value = n > 1 ? std::sqrt(var.value() / (n - 1) / n) : 0.0;
    if (opt.records) *opt.records = recs;
    return {mse, MseReport::Provenance::MonteCarlo, stderr_value, n};
}

} // namespace

PureState sample_haar_state(int d, const RngStream& rng) {
    if (d < 2) throw OutOfRange("sample_haar_state: d must be >= 2");
    Xoshiro256pp gen(rng);
    return haar_state_impl(d, gen);
}

std::pair<PureState, PureState> sample_pair_with_overlap(int d, double c, const RngStream& rng) {
    if (d < 2) throw OutOfRange("sample_pair_with_overlap: d must be >= 2");
    c = clamp_unit(c, "sample_pair_with_overlap");
    Xoshiro256pp gen(rng);
    return pair_with_overlap_impl(d, c, gen);
}

HalfInt sample_j_outcome(const Scenario& s, double c, const RngStream& rng) {
    c = clamp_unit(c, "sample_j_outcome");
    Xoshiro256pp gen(rng);
    return j_outcome_impl(s, c, gen);
}

PureState sample_covariant_estimate(const PureState& phi, int M, const RngStream& rng) {
    if (M < 1) throw OutOfRange("sample_covariant_estimate: M must be >= 1");
    Xoshiro256pp gen(rng);
    return covariant_estimate_impl(phi, M, phi.dim(), gen);
}

MseReport simulate(Strategy strategy, SimMode mode, const Scenario& s, long long trials,
                   const RngStream& rng, const SimulateOptions& opt) {
    if (trials < 1) throw OutOfRange("simulate: trials must be >= 1");
    const TrialSetup ts = make_setup(strategy, mode, s, opt);
    std::vector<TrialRecord> recs(static_cast<std::size_t>(trials));
    const int threads = resolve_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 0; i < trials; ++i) {
        Xoshiro256pp gen(rng, static_cast<std::uint64_t>(i) + 1);
        recs[static_cast<std::size_t>(i)] = run_trial(ts, gen);
    }
    return reduce_trials(strategy, recs, opt);
}

MseReport simulate_serial(Strategy strategy, SimMode mode, const Scenario& s, long long trials,
                          const RngStream& rng, const SimulateOptions& opt) {
    if (trials < 1) throw OutOfRange("simulate: trials must be >= 1");
    const TrialSetup ts = make_setup(strategy, mode, s, opt);
    std::vector<TrialRecord> recs(static_cast<std::size_t>(trials));
    for (long long i = 0; i < trials; ++i) {
        Xoshiro256pp gen(rng, static_cast<std::uint64_t>(i) + 1);
        recs[static_cast<std::size_t>(i)] = run_trial(ts, gen);
    }
    return reduce_trials(strategy, recs, opt);
}

} // namespace overlap
