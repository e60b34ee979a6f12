#pragma once

#include <string>
#include <vector>

namespace ekq {

struct CheckResult {
    std::string name;
    std::string identity;
    bool pass = true;
    std::string witness;  // first nonzero residual entry when failing
};

inline bool all_pass(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

}  // namespace ekq
