#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccsim {

struct ResultRow {
    std::string scheme;
    std::string model;
    double p = 0.0;
    int L = 0;
    std::string boundary;
    int64_t trials = 0;
    int64_t failures = 0;
    double p_l = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    uint64_t master_seed = 0;
};

// Identity of a data point for resume purposes (everything but the outcome).
std::string result_key(const ResultRow& row);

std::string format_double(double v);

// Appends rows to a CSV results file, creating it (with header) if absent.
void append_results_csv(const std::string& path, const std::vector<ResultRow>& rows);

std::vector<ResultRow> read_results_csv(const std::string& path);

}  // namespace ccsim
