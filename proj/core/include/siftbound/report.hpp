#pragma once

#include <string>
#include <vector>

namespace siftbound {

struct CheckResult {
    std::string name;
    enum class Status { pass, fail, skipped } status = Status::skipped;
    std::string details;
    double seconds = 0;
};

struct ReportOptions {
    bool long_mode = false;      // adds the hours-scale computations
    std::string zeros_dir;       // enables the zero-table checks when set
    std::string envelope_path;   // regenerated envelope table (csv)
    unsigned threads = 1;
};

// desk-scale verification matrix keyed by lemma/theorem
std::vector<CheckResult> run_checks(const ReportOptions& opt);

} // namespace siftbound
