#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace ballmodes::verify {

struct Check {
    std::string name;
    bool passed = false;
    double value = 0.0;  // observed error or quantity
    double limit = 0.0;  // acceptance threshold
};

struct SuiteResult {
    std::string suite;
    bool passed = false;
    std::vector<Check> checks;
};

struct Options {
    double radius = 1.0;
    int n_modes = 12;
    unsigned seed = 1234;
    int n_r = 32, n_theta = 32, n_phi = 64;
};

/// Run one invariant suite: "specfun", "roots", "modes", "orthonormality",
/// "quad", "spectral", "solve", "fieldio", or "all".
SuiteResult run_suite(const std::string& name, const Options& opt);

std::vector<std::string> suite_names();

nlohmann::json to_json(const SuiteResult& result);

}  // namespace ballmodes::verify
