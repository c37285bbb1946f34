#pragma once

#include <string>
#include <vector>

namespace clusterft {

// Figure-ready CSV: fixed header, one row per grid point per quantity,
// period decimal separator.
struct CsvRow {
    double p_g = 0.0;
    std::string quantity;
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    uint64_t trials = 0;
};

std::string csv_render(const std::vector<CsvRow>& rows);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace clusterft
