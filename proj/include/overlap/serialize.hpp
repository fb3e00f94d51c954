#pragma once

#include <string>

#include "overlap/montecarlo.hpp"
#include "overlap/scenario.hpp"
#include "overlap/strategies.hpp"

namespace overlap {

/// Shortest round-trip decimal with 17 significant digits.
std::string fmt17(double x);

/// CSV with header `twoJ,prob`.
std::string to_csv(const OutcomeDistribution& dist);

/// JSON { "d":., "M":., "N":., "c":., "pmf": [[twoJ, prob], ...] }.
std::string to_json(const OutcomeDistribution& dist, double c);

/// JSON { "strategy":., "mode":., "trials":., "mse":., "stderr":. }.
std::string to_json(Strategy strategy, Mode mode, const MseReport& report);

std::string to_json(const EstimatorTable& table);

/// CSV `trial,c,outcome,estimate` rows.
std::string trials_to_csv(const std::vector<TrialRecord>& records);

void write_file(const std::string& path, const std::string& content);

} // namespace overlap
