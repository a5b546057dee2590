#include "ccsim/results_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ccsim {

namespace {
const char* kHeader = "scheme,model,p,L,boundary,trials,failures,p_L,ci_low,ci_high,master_seed";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string result_key(const ResultRow& row) {
    std::ostringstream os;
    os << row.scheme << '|' << row.model << '|' << format_double(row.p) << '|' << row.L << '|'
       << row.boundary << '|' << row.trials << '|' << row.master_seed;
    return os.str();
}

void append_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    bool exists = false;
    {
        std::ifstream probe(path);
        exists = probe.good() && probe.peek() != std::ifstream::traits_type::eof();
    }
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open results file for writing: " + path);
    if (!exists) out << kHeader << '\n';
    for (const auto& r : rows) {
        out << r.scheme << ',' << r.model << ',' << format_double(r.p) << ',' << r.L << ','
            << r.boundary << ',' << r.trials << ',' << r.failures << ',' << format_double(r.p_l)
            << ',' << format_double(r.ci_low) << ',' << format_double(r.ci_high) << ','
            << r.master_seed << '\n';
    }
    if (!out) throw std::runtime_error("failed writing results to " + path);
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
    std::vector<ResultRow> rows;
    std::ifstream in(path);
    if (!in) return rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("scheme,", 0) == 0) continue;
        }
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 11) throw std::runtime_error("malformed results row: " + line);
        ResultRow r;
        r.scheme = fields[0];
        r.model = fields[1];
        r.p = std::stod(fields[2]);
        r.L = std::stoi(fields[3]);
        r.boundary = fields[4];
        r.trials = std::stoll(fields[5]);
        r.failures = std::stoll(fields[6]);
        r.p_l = std::stod(fields[7]);
        r.ci_low = std::stod(fields[8]);
        r.ci_high = std::stod(fields[9]);
        r.master_seed = std::stoull(fields[10]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace ccsim
