#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace filiform {

struct AcceptanceConfig {
    int N = 40;
    std::uint64_t seed = 20240601;
    int random_cocycles = 100;
    int threads = 1;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

constexpr int kCriteria = 13;

CriterionResult run_criterion(int id, const AcceptanceConfig& config);

// Runs criteria 1..13; results come back in id order whatever the thread count.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config,
                                            const std::function<void(const CriterionResult&)>& on_done = {});

}  // namespace filiform
