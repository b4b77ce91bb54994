#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hil {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Absolute tolerance for metric-axiom and inequality checks on data read
// from files. Exact comparisons are used wherever values come from a finite
// candidate set.
inline constexpr double kDefaultTol = 1e-9;

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// Round-trippable decimal rendering (17 significant digits); infinities
// print as "inf". Trailing zeros are trimmed by %g.
inline std::string format_value(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline double parse_value(const std::string& tok) {
    if (tok == "inf" || tok == "+inf") return kInf;
    if (tok == "-inf") return -kInf;
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw parse_error("bad numeric token: " + tok);
    return v;
}

}  // namespace hil
