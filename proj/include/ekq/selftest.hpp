#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ekq/report.hpp"

namespace ekq {

struct Criterion {
    int id = 0;
    std::string title;
    bool pass = true;
    std::string summary;
    std::vector<CheckResult> checks;  // names are prefixed by fixture
    double seconds = 0;
};

/// Runs the acceptance criteria in order; `progress` is called after each one.
std::vector<Criterion> run_acceptance(const std::function<void(const Criterion&)>& progress = {});

/// Criteria whose literal statement is known not to hold (see README).
const std::vector<int>& known_failures();

}  // namespace ekq
