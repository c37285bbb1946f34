#include "clusterft/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace clusterft {

std::string csv_render(const std::vector<CsvRow>& rows) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(12);
    os << "p_g,quantity,value,ci_low,ci_high,trials\n";
    for (const auto& r : rows)
        os << r.p_g << ',' << r.quantity << ',' << r.value << ',' << r.ci_low << ',' << r.ci_high << ','
           << r.trials << "\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace clusterft
