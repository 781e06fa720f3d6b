#pragma once

#include <utility>

#include "common.hpp"

namespace tdc::cli {

struct SuiteResult {
    explicit SuiteResult(std::string n) : name(std::move(n)) {}

    std::string name;
    bool ok = true;
    std::string detail;
    Json counterexamples = Json::array();  // seeds or inputs that broke an invariant
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace tdc::cli
