#pragma once

#include "disk_squeeze/serialize.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace disk_squeeze::cli {

struct VerifyTolerances {
    double overlap = 1e-10;
    double hs = 1e-9;
    double hs_closed_form = 1e-12;
    double flow = 1e-6;
    double group_law = 1e-9;
    double metric_min = 3.5;
    double metric_max = 4.5;
    double isometry = 1e-12;
    double bounds = 1e-9;
    double synthesis = 1e-6;
    double closed_form = 1e-12;
    double asymptotic = 0.01;
    double adiabatic = 1e-12;
};

struct VerifyOptions {
    std::string suite = "all";
    std::size_t dim = 128;
    std::uint64_t seed = 1;
    std::size_t pairs = 1000;
    std::size_t sequences = 10000;
    std::size_t targets = 1000;
    VerifyTolerances tol;
};

inline const std::vector<std::string> kSuites{"overlap", "flow", "metric", "control"};

// Fills "checks", "pass" and the echoed settings into a report.
Json run_verify(const VerifyOptions& options);

Json tolerances_json(const VerifyTolerances& t);

}  // namespace disk_squeeze::cli
