#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "gps/mixed.hpp"
#include "gps/series.hpp"

namespace gps {

// Line-based text format:
//
//   gps 1 vars=<m> yvars=<n> [ydeg=<d>]
//   support <var> <finite|arith:<step>|logint|sumclosure> cutoff=<real>
//   term <exp_1> ... <exp_m> <ydeg_1> ... <ydeg_n> <re> <im>
//   tail r=<real> bound=<real>
//
// '#' starts a comment. Exponents accept p/q and log(n). "finite" and
// "sumclosure" refer to the exponents stored for that variable.
struct GpsFile {
    std::size_t m = 1, n = 0;
    GenSeries series;   // Gevrey part, meaningful when n == 0
    MixedSeries mixed;  // always filled
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& msg);
    std::size_t line;
};

GpsFile parse_gps(std::istream& in);
GpsFile parse_gps_string(const std::string& text);
GpsFile load_gps(const std::string& path);

void write_gps(std::ostream& out, const GenSeries& f);
void write_gps(std::ostream& out, const MixedSeries& f);

}  // namespace gps
