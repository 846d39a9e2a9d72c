#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace maxcurve {

struct CheckResult {
    std::string claim;
    std::string expected;
    std::string actual;
    bool pass = false;
    std::string anchor;  // which assertion family the check belongs to
};

// One verification run: verdict is PASS iff every check matches, FAIL on any
// mathematical discrepancy, SKIP when the regime is empty.
struct RunReport {
    std::string command;
    std::string params;
    std::vector<CheckResult> checks;
    double wall_time_s = 0.0;
    std::vector<std::string> notes;

    bool passed() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string verdict() const { return checks.empty() ? "SKIP" : (passed() ? "PASS" : "FAIL"); }
    long failed_count() const {
        long n = 0;
        for (auto& c : checks)
            if (!c.pass) ++n;
        return n;
    }
};

nlohmann::json report_to_json(const RunReport& rep);

}  // namespace maxcurve
