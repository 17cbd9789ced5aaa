#include "filiform/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    filiform::AcceptanceConfig cfg;
    if (argc > 1) cfg.threads = std::atoi(argv[1]);
    int failed = 0;
    filiform::run_acceptance(cfg, [&](const filiform::CriterionResult& r) {
        std::printf("%s %2d %s: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str(),
                    r.seconds);
        std::fflush(stdout);
        if (!r.pass) ++failed;
    });
    std::printf("%d/%d criteria passed\n", filiform::kCriteria - failed, filiform::kCriteria);
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
