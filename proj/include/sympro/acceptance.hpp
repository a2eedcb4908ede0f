#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace sympro {

enum class CriterionTier { theorem, assumption, consequence };
std::string to_string(CriterionTier t);

struct Criterion {
    int id = 0;
    CriterionTier tier = CriterionTier::theorem;
    std::string name;
    std::string required; // threshold with comparator, as printed
    std::string achieved; // measured values
    bool passed = false;
    double seconds = 0.0;
};

const std::vector<int>& all_criterion_ids();
// near_zero_tol exists so a tampered config is caught by the dimension-law
// criterion; every other threshold is pinned here.
Criterion run_criterion(int id, std::uint64_t seed, double near_zero_tol = 1e-4);
// ids empty = all, in order; deterministic given seed
std::vector<Criterion> run_all_criteria(std::uint64_t seed, std::vector<int> ids = {},
                                        double near_zero_tol = 1e-4);

// one pass/fail line per criterion; returns true when everything passed
bool print_report(const std::vector<Criterion>& criteria, std::FILE* out);

// criteria a given experiment exercises (drives `run --check`)
std::vector<int> criteria_for_experiment(const std::string& experiment);

} // namespace sympro
