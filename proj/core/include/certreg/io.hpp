#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "certreg/pathalg.hpp"
#include "certreg/staircase.hpp"

namespace certreg {

/// Certificate JSON with a fixed key order; reals use 17 significant
/// digits, so parse_certificate_json(certificate_json(c)) == c.
std::string certificate_json(const Certificate& cert);
void write_certificate_json(std::ostream& out, const Certificate& cert);
/// Throws DataError on malformed input or missing keys.
Certificate parse_certificate_json(const std::string& text);

/// Columns C_breakpoint,value_left_of_breakpoint,value_right_of_breakpoint.
void write_staircase_csv(std::ostream& out, const StaircaseBound& s);
/// Columns C,lb,ub, one row per solved C in solve order.
void write_point_bounds_csv(std::ostream& out, const Certificate& cert);
/// Columns T,grid_epsilon,bound_guided_epsilon.
void write_epsilon_curve_csv(std::ostream& out, std::span<const EpsilonCurvePoint> curve);
/// Columns C_start,C_end,lb,ub,validation_error; one row per path segment.
void write_path_csv(std::ostream& out, const PathResult& path, const Problem& problem);

/// Reads whitespace- or comma-separated positive C values.
std::vector<double> read_c_list(std::istream& in);
std::vector<double> load_c_list(const std::string& path);

/// printf("%.17g") of a finite value.
std::string format_real(double v);

}  // namespace certreg
