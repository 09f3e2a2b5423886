#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qaco/qap.hpp"

namespace qaco {

struct IterationRecord {
    int iteration = 0;       // 1-based
    std::string measured;    // raw outcome (best ant of the generation for ACO)
    std::string repaired;    // after the validity filter; equals measured when valid
    double fitness = 0.0;
    double beta = 0.0;       // exploration parameter used this iteration
};

// Trace of one optimizer run, shared by the quantum and classical solvers.
struct RunReport {
    Solution best;
    int exit_iteration = 0;
    std::vector<IterationRecord> trace;
};

// Line-oriented text record:
//   run v1
//   best <bits> <fitness>
//   exit <iteration>
//   iter <j> <measured> <repaired> <fitness> <beta>
//   end
void write_report(const RunReport& report, std::ostream& out);
RunReport parse_report(std::istream& in);

} // namespace qaco
