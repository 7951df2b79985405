// Acceptance gate: runs every release criterion against the built library
// and CLI, prints one line per criterion, and exits nonzero on any failure.

#include <cstdio>
#include <vector>

#include "cv2design/report.hpp"

int main() {
    const std::vector<cv2design::CriterionResult> results =
        cv2design::run_acceptance(CV2DESIGN_CLI_PATH);
    bool all_pass = true;
    std::printf("%-3s %-6s %8s  %s\n", "id", "status", "seconds", "criterion");
    for (const cv2design::CriterionResult& r : results) {
        std::printf("%-3d %-6s %8.2f  %s\n    %s\n", r.id,
                    r.pass ? "PASS" : "FAIL", r.seconds, r.name.c_str(),
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    std::printf("\nacceptance: %s\n", all_pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 1;
}
