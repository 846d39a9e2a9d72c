#include "maxcurve/report.hpp"

#include <nlohmann/json.hpp>

namespace maxcurve {

nlohmann::json report_to_json(const RunReport& rep) {
    nlohmann::json checks = nlohmann::json::array();
    for (auto& c : rep.checks)
        checks.push_back({{"claim", c.claim},
                          {"expected", c.expected},
                          {"actual", c.actual},
                          {"pass", c.pass},
                          {"anchor", c.anchor}});
    nlohmann::json j{{"schema", 1},
                     {"command", rep.command},
                     {"params", rep.params},
                     {"verdict", rep.verdict()},
                     {"checks", checks},
                     {"wall_time_s", rep.wall_time_s}};
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

}  // namespace maxcurve
