#include "c2flow/csvio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace c2flow {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string probe_csv(const std::vector<LabeledSeries>& series) {
    std::string out = "time,quantity,probe_x,probe_y,solver,value\n";
    for (const auto& ls : series) {
        const std::string prefix = std::string(to_string(ls.series.quantity)) + "," +
                                   fmt_g17(ls.series.location.first) + "," +
                                   fmt_g17(ls.series.location.second) + "," + ls.solver + ",";
        for (const auto& [t, v] : ls.series.samples)
            out += fmt_g17(t) + "," + prefix + fmt_g17(v) + "\n";
    }
    return out;
}

std::string snapshot_csv(const FluidState& s, const RunConfig& cfg, int step) {
    std::string out;
    out += "# n=" + std::to_string(s.grid().n) + "\n";
    out += "# dt=" + fmt_g17(cfg.dt) + "\n";
    out += "# step=" + std::to_string(step) + "\n";
    out += "# scenario=" + std::string(to_string(cfg.scenario)) + "\n";
    out += "ix,iy,rho,chi,ax,ay\n";
    for (int iy = 0; iy < s.grid().n; ++iy)
        for (int ix = 0; ix < s.grid().n; ++ix)
            out += std::to_string(ix) + "," + std::to_string(iy) + "," +
                   fmt_g17(s.rho.at(ix, iy)) + "," + fmt_g17(s.chi.at(ix, iy)) + "," +
                   fmt_g17(s.ax.at(ix, iy)) + "," + fmt_g17(s.ay.at(ix, iy)) + "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::ios_base::failure("cannot open for writing: " + path);
    out << text;
    if (!out)
        throw std::ios_base::failure("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open for reading: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

bool is_number_char(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' ||
           c == 'e' || c == 'E';
}

// splits into numeric and non-numeric tokens
std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < s.size()) {
        if (is_number_char(s[i])) {
            size_t j = i;
            while (j < s.size() && is_number_char(s[j]))
                ++j;
            tokens.push_back(s.substr(i, j - i));
            i = j;
        } else {
            size_t j = i;
            while (j < s.size() && !is_number_char(s[j]))
                ++j;
            tokens.push_back(s.substr(i, j - i));
            i = j;
        }
    }
    return tokens;
}

bool as_number(const std::string& t, double& out) {
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end != t.c_str() && *end == '\0';
}

} // namespace

std::string compare_numeric_text(const std::string& got, const std::string& want, double rtol,
                                 double atol) {
    const auto gt = tokenize(got);
    const auto wt = tokenize(want);
    if (gt.size() != wt.size())
        return "token count differs (" + std::to_string(gt.size()) + " vs " +
               std::to_string(wt.size()) + ")";
    for (size_t i = 0; i < gt.size(); ++i) {
        double a, b;
        if (as_number(gt[i], a) && as_number(wt[i], b)) {
            const double diff = std::fabs(a - b);
            if (diff > atol + rtol * std::fabs(b))
                return "value mismatch: " + gt[i] + " vs " + wt[i];
        } else if (gt[i] != wt[i]) {
            return "text mismatch: '" + gt[i] + "' vs '" + wt[i] + "'";
        }
    }
    return "";
}

} // namespace c2flow
