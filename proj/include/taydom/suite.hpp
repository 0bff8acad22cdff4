#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "taydom/dfinite.hpp"

namespace taydom::suite {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0;
};

using Progress = std::function<void(const CriterionResult&)>;

/// Runs the acceptance criteria (all ten, or the subset in `only`),
/// deterministically from the seed. Results come back in id order; the
/// callback fires as each criterion finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& only = {},
                                            const Progress& progress = nullptr);

/// The built-in piecewise D-finite test family (operator, function) pairs;
/// all pieces polynomial, so every oracle below them is exact.
struct DFCase {
    std::string name;
    DifferentialOperator op;
    PieceFun g;
};
std::vector<DFCase> dfinite_family();

}  // namespace taydom::suite
