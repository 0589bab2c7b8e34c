// Acceptance suite entry point: runs every criterion at its pinned tolerance
// and prints one pass/fail line each. Exit code is nonzero when any fails.
#include "gaea/acceptance.hpp"

#include <cstdio>
#include <cstring>
#include <string>

int main(int argc, char** argv) {
    gaea::acceptance::AcceptanceConfig cfg;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--golden-dir") == 0 && i + 1 < argc) {
            cfg.golden_dir = argv[++i];
        } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            cfg.only.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--golden-dir DIR] [--only ID]...\n", argv[0]);
            return 2;
        }
    }
    auto results = gaea::acceptance::run_acceptance(cfg);
    double total = 0.0;
    for (const auto& r : results) {
        std::printf("%s (%.1fs)\n", gaea::acceptance::format_result(r).c_str(), r.seconds);
        total += r.seconds;
    }
    std::printf("%zu criteria, %.1fs total\n", results.size(), total);
    return gaea::acceptance::all_passed(results) ? 0 : 1;
}
