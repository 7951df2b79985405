#pragma once

// Desk-scale acceptance suite: ten self-contained checks covering the design
// norm bound, the closed-form round map, Monte-Carlo consistency, the prime-d
// variant, the discretisation error bound, the encryption scheme, the security
// bound formula, and CLI determinism.

#include <string>
#include <vector>

namespace cv2design {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;  // measured values next to their bounds
};

// cli_path is the cv2design binary exercised by the determinism criterion.
std::vector<CriterionResult> run_acceptance(const std::string& cli_path);

}  // namespace cv2design
