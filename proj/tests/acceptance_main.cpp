/// Release gate: runs the eight-criterion verification battery against the
/// bundled data and prints one PASS/FAIL line per criterion. Exit 0 only
/// when every criterion passes.
#include <cstdio>
#include <exception>
#include <string>

#include "workbench/acceptance.hpp"

#ifndef WORKBENCH_DATA_DIR
#define WORKBENCH_DATA_DIR "fixtures"
#endif

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : WORKBENCH_DATA_DIR;
    try {
        const auto results = workbench::run_acceptance(dir);
        std::fputs(workbench::acceptance_text(results).c_str(), stdout);
        for (const auto& r : results)
            for (const auto& c : r.report.checks)
                if (c.status == workbench::CheckStatus::fail)
                    std::printf("FAILED %d %s  input=%s  expected=%s  actual=%s\n", r.number,
                                c.id.c_str(), c.inputs.c_str(), c.expected.c_str(),
                                c.actual.c_str());
        return workbench::all_pass(results) ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
        return 1;
    }
}
