// Timing harness comparing the OpenMP kernels against their serial
// reference implementations.  Build with -DCMAKE_BUILD_TYPE=Release.

#include <chrono>
#include <cstdio>
#include <functional>

#include "overlap/montecarlo.hpp"
#include "overlap/noise.hpp"
#include "overlap/parallel.hpp"

using namespace overlap;

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-34s serial %9.1f ms   openmp %9.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
    std::printf("workers: %d\n", resolve_threads());

    {
        const Scenario s(2, 512, 512);
        const RngStream rng{42, 0};
        MseReport a, b;
        const double ts = time_ms([&] { a = simulate_serial(Strategy::Optimal, SimMode::local_at(0.5), s, 200000, rng); });
        const double tp = time_ms([&] { b = simulate(Strategy::Optimal, SimMode::local_at(0.5), s, 200000, rng); });
        report("simulate optimal/local 2e5", ts, tp);
        std::printf("    mse %s (serial and openmp results %s)\n", a.value == b.value ? "==" : "!=",
                    a.value == b.value ? "identical" : "DIFFER");
    }
    {
        const Scenario s(2, 16, 8);
        const RngStream rng{42, 1};
        const double ts = time_ms([&] { (void)simulate_serial(Strategy::EE, SimMode::bayesian(), s, 100000, rng); });
        const double tp = time_ms([&] { (void)simulate(Strategy::EE, SimMode::bayesian(), s, 100000, rng); });
        report("simulate ee/bayes 1e5", ts, tp);
    }
    {
        const MixedScenario ms(Scenario(2, 200, 200), 0.8, 0.8);
        MseReport a, b;
        const double ts = time_ms([&] { a = mixed_bayes_mse_serial(ms); });
        const double tp = time_ms([&] { b = mixed_bayes_mse(ms); });
        report("mixed_bayes_mse M=N=200", ts, tp);
        std::printf("    values %.12e vs %.12e\n", a.value, b.value);
    }
    return 0;
}
