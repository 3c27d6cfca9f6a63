#include "c2flow/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "c2flow/errors.hpp"

namespace c2flow {

const char* to_string(Scenario s) {
    switch (s) {
    case Scenario::logistic: return "logistic";
    case Scenario::kolmogorov: return "kolmogorov";
    case Scenario::two_mode: return "two_mode";
    }
    return "?";
}

const char* to_string(Solver s) {
    switch (s) {
    case Solver::c2: return "c2";
    case Solver::nshj: return "nshj";
    case Solver::ns: return "ns";
    }
    return "?";
}

double RunConfig::logistic_a() const {
    if (a > 0.0)
        return a;
    return std::sqrt(b * f / g2);
}

bool RunConfig::has_solver(Solver s) const {
    for (Solver x : solvers)
        if (x == s)
            return true;
    return false;
}

RunConfig default_config(Scenario scenario) {
    RunConfig c;
    c.scenario = scenario;
    switch (scenario) {
    case Scenario::kolmogorov:
        c.grid_n = 64;
        c.nu = 1.0 / 6.0;
        c.cs2 = 1.0 / 3.0;
        c.u0 = 0.05;
        c.f0 = 0.009;
        c.dt = c.characteristic_time() / 500.0; // T/dt = 500
        c.steps = 2500;                         // 5 T
        c.solvers = {Solver::nshj, Solver::ns};
        c.probes = {{0.0, 0.0}, {1.5, 1.5}, {0.7, 2.5}};
        c.probe_quantities = {ProbeQuantity::vx, ProbeQuantity::vy};
        break;
    case Scenario::two_mode:
        c.grid_n = 64;
        c.nu = 1.0 / 16.0;
        c.cs2 = 1.0 / 3.0;
        c.u1 = 0.05;
        c.u2 = c.u1 / 8.0;
        c.f1 = 0.01;
        c.f2 = c.f1 / 8.0;
        c.dt = 0.03;
        c.steps = 3000;
        c.solvers = {Solver::nshj, Solver::ns};
        c.probes = {{0.0, 0.0}, {1.5, 1.5}, {0.7, 2.5}};
        c.probe_quantities = {ProbeQuantity::vx, ProbeQuantity::vy};
        break;
    case Scenario::logistic:
        c.b = 1.0;
        c.f = 1.0;
        c.g2 = 0.1;
        c.a = -1.0; // derive from g2
        c.x0 = 0.0;
        c.dt = 0.01;
        c.steps = 700;
        c.snapshot_every = 0;
        break;
    }
    return c;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

double parse_real(const std::string& source, int line, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        fail(source, line, "not a number: '" + v + "'");
    return x;
}

int parse_int(const std::string& source, int line, const std::string& v) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        fail(source, line, "not an integer: '" + v + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& source, int line, const std::string& v) {
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    fail(source, line, "not a boolean: '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(trim(item));
    if (!out.empty() && out.back().empty())
        out.pop_back();
    return out;
}

Scenario parse_scenario(const std::string& source, int line, const std::string& v) {
    if (v == "logistic")
        return Scenario::logistic;
    if (v == "kolmogorov")
        return Scenario::kolmogorov;
    if (v == "two_mode")
        return Scenario::two_mode;
    fail(source, line, "unknown scenario '" + v + "'");
}

Solver parse_solver(const std::string& source, int line, const std::string& v) {
    if (v == "c2")
        return Solver::c2;
    if (v == "nshj")
        return Solver::nshj;
    if (v == "ns")
        return Solver::ns;
    fail(source, line, "unknown solver '" + v + "'");
}

ProbeQuantity parse_quantity(const std::string& source, int line, const std::string& v) {
    if (v == "vx")
        return ProbeQuantity::vx;
    if (v == "vy")
        return ProbeQuantity::vy;
    if (v == "rho")
        return ProbeQuantity::rho;
    if (v == "chi")
        return ProbeQuantity::chi;
    if (v == "omega")
        return ProbeQuantity::omega;
    fail(source, line, "unknown probe quantity '" + v + "'");
}

struct KeyValue {
    std::string key, value;
    int line;
};

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& source) {
    std::vector<KeyValue> pairs;
    {
        std::stringstream ss(text);
        std::string raw;
        int lineno = 0;
        while (std::getline(ss, raw)) {
            ++lineno;
            const auto hash = raw.find('#');
            if (hash != std::string::npos)
                raw.erase(hash);
            const std::string line = trim(raw);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                fail(source, lineno, "expected 'key = value'");
            KeyValue kv{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
            if (kv.key.empty())
                fail(source, lineno, "empty key");
            pairs.push_back(std::move(kv));
        }
    }

    Scenario scenario = Scenario::kolmogorov;
    bool scenario_seen = false;
    for (const auto& kv : pairs) {
        if (kv.key == "scenario") {
            scenario = parse_scenario(source, kv.line, kv.value);
            scenario_seen = true;
        }
    }
    if (!scenario_seen)
        throw ConfigError(source + ": missing required key 'scenario'");

    RunConfig c = default_config(scenario);
    std::set<std::string> seen;
    for (const auto& kv : pairs) {
        seen.insert(kv.key);
        const std::string& v = kv.value;
        const int ln = kv.line;
        if (kv.key == "scenario") {
            // handled above
        } else if (kv.key == "solvers") {
            c.solvers.clear();
            for (const auto& item : split(v, ',')) {
                const Solver s = parse_solver(source, ln, item);
                if (!c.has_solver(s))
                    c.solvers.push_back(s);
            }
        } else if (kv.key == "grid_n") {
            c.grid_n = parse_int(source, ln, v);
        } else if (kv.key == "dt") {
            c.dt = parse_real(source, ln, v);
        } else if (kv.key == "steps") {
            c.steps = parse_int(source, ln, v);
        } else if (kv.key == "nu") {
            c.nu = parse_real(source, ln, v);
        } else if (kv.key == "cs2") {
            c.cs2 = parse_real(source, ln, v);
        } else if (kv.key == "u0") {
            c.u0 = parse_real(source, ln, v);
        } else if (kv.key == "f0") {
            c.f0 = parse_real(source, ln, v);
        } else if (kv.key == "u1") {
            c.u1 = parse_real(source, ln, v);
        } else if (kv.key == "u2") {
            c.u2 = parse_real(source, ln, v);
        } else if (kv.key == "f1") {
            c.f1 = parse_real(source, ln, v);
        } else if (kv.key == "f2") {
            c.f2 = parse_real(source, ln, v);
        } else if (kv.key == "a") {
            c.a = parse_real(source, ln, v);
        } else if (kv.key == "b") {
            c.b = parse_real(source, ln, v);
        } else if (kv.key == "f") {
            c.f = parse_real(source, ln, v);
        } else if (kv.key == "g2") {
            c.g2 = parse_real(source, ln, v);
        } else if (kv.key == "x0") {
            c.x0 = parse_real(source, ln, v);
        } else if (kv.key == "probes") {
            c.probes.clear();
            for (const auto& item : split(v, ';')) {
                const auto parts = split(item, ',');
                if (parts.size() != 2)
                    fail(source, ln, "probe must be 'x,y': '" + item + "'");
                c.probes.emplace_back(parse_real(source, ln, parts[0]),
                                      parse_real(source, ln, parts[1]));
            }
        } else if (kv.key == "probe_quantities") {
            c.probe_quantities.clear();
            for (const auto& item : split(v, ','))
                c.probe_quantities.push_back(parse_quantity(source, ln, item));
        } else if (kv.key == "snapshot_every") {
            c.snapshot_every = parse_int(source, ln, v);
        } else if (kv.key == "output_dir") {
            c.output_dir = v;
        } else if (kv.key == "allow_large_memory") {
            c.allow_large_memory = parse_bool(source, ln, v);
        } else if (kv.key == "quiet") {
            c.quiet = parse_bool(source, ln, v);
        } else if (kv.key == "steady_tol") {
            c.steady_tol = parse_real(source, ln, v);
        } else if (kv.key == "verify_rtol") {
            c.verify_rtol = parse_real(source, ln, v);
        } else {
            fail(source, ln, "unknown key '" + kv.key + "'");
        }
    }

    // coupled defaults
    if (scenario == Scenario::kolmogorov && !seen.count("dt"))
        c.dt = c.characteristic_time() / 500.0;

    // validation
    if (scenario != Scenario::logistic) {
        if (c.grid_n < 4 || c.grid_n % 2 != 0)
            throw ConfigError(source + ": grid_n must be even and >= 4");
        if (!(c.nu > 0.0))
            throw ConfigError(source + ": nu must be positive");
        if (!(c.cs2 > 0.0))
            throw ConfigError(source + ": cs2 must be positive");
        if (c.solvers.empty())
            throw ConfigError(source + ": no solver selected");
    } else {
        if (!(c.b > 0.0) || c.f < 0.0)
            throw ConfigError(source + ": logistic needs b > 0 and f >= 0");
        if (seen.count("a") && seen.count("g2")) {
            const double implied = c.b * c.f / (c.a * c.a);
            if (std::fabs(implied - c.g2) > 1e-9)
                throw ConfigError(source + ": a and g2 are inconsistent");
        }
        if (!seen.count("a") && !(c.g2 > 0.0))
            throw ConfigError(source + ": g2 must be positive when a is not given");
        if (!(c.logistic_a() > 0.0))
            throw ConfigError(source + ": decay rate must be positive");
        if (!(c.b * c.f / (c.logistic_a() * c.logistic_a()) < 0.25))
            throw ConfigError(source + ": g^2 must stay below 1/4 (bounded regime)");
    }
    if (!(c.dt > 0.0))
        throw ConfigError(source + ": dt must be positive");
    if (c.steps < 0)
        throw ConfigError(source + ": steps must be >= 0");
    if (c.snapshot_every < 0)
        throw ConfigError(source + ": snapshot_every must be >= 0");
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

} // namespace c2flow
