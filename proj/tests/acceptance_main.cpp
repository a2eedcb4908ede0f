// Acceptance suite runner: one pass/fail line per criterion, exit 0 when all
// requested criteria pass, 2 otherwise. Shares the exit-code contract with
// `sympro check`.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "sympro/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 7;
    if (const char* env = std::getenv("SYMPRO_SEED")) seed = std::strtoull(env, nullptr, 10);
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            ids.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--seed N] [--criterion ID]...\n", argv[0]);
            return 1;
        }
    }
    try {
        const auto criteria = sympro::run_all_criteria(seed, ids);
        return sympro::print_report(criteria, stdout) ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance runner error: %s\n", e.what());
        return 1;
    }
}
