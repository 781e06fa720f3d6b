#pragma once

#include "common.hpp"

namespace tdc::cli {

enum class Construction { A, B };

struct ExperimentConfig {
    Construction construction = Construction::B;
    int q = 4;
    std::size_t n = 24;
    int p = 1;
    BOptions opt;
    std::size_t messages = 5;
    std::size_t seeds = 20;  // channel seeds per message
    std::uint64_t seed = 1;
    std::size_t dups = 10;
    std::size_t edits = 1;
    std::vector<EditKind> kinds{EditKind::Substitution};
    unsigned jobs = 1;
    bool timing = false;
};

// Deterministic given the config (timing block only when requested).
Json run_experiment(const ExperimentConfig& cfg);

}  // namespace tdc::cli
