#include "overlap/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace overlap {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_csv(const OutcomeDistribution& dist) {
    std::ostringstream os;
    os << "twoJ,prob\n";
    for (const auto& [j, p] : dist.entries) os << j.twice() << ',' << fmt17(p) << '\n';
    return os.str();
}

std::string to_json(const OutcomeDistribution& dist, double c) {
    nlohmann::json j;
    j["d"] = dist.scenario.d;
    j["M"] = dist.scenario.M;
    j["N"] = dist.scenario.N;
    j["c"] = c;
    auto& pmf = j["pmf"] = nlohmann::json::array();
    for (const auto& [J, p] : dist.entries) pmf.push_back({J.twice(), p});
    return j.dump();
}

std::string to_json(Strategy strategy, Mode mode, const MseReport& report) {
    nlohmann::json j;
    j["strategy"] = to_string(strategy);
    j["mode"] = to_string(mode);
    j["trials"] = report.trials;
    j["mse"] = report.value;
    j["stderr"] = report.stderr_value;
    return j.dump();
}

std::string to_json(const EstimatorTable& table) {
    nlohmann::json j;
    j["strategy"] = to_string(table.strategy);
    j["mode"] = to_string(table.mode);
    auto& map = j["mapping"] = nlohmann::json::array();
    for (const auto& [k, v] : table.mapping) map.push_back({k, v});
    return j.dump();
}

std::string trials_to_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream os;
    os << "trial,c,outcome,estimate\n";
    for (std::size_t i = 0; i < records.size(); ++i)
        os << i << ',' << fmt17(records[i].c) << ',' << fmt17(records[i].outcome) << ','
           << fmt17(records[i].estimate) << '\n';
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

} // namespace overlap
