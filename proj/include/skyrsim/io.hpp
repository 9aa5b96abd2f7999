#pragma once

#include <string>
#include <vector>

#include "skyrsim/verify.hpp"

namespace skyrsim {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);

// Writes content to path atomically (temp file in the same directory, then
// rename).
void atomic_write(const std::string& path, const std::string& content);

// Minimal polyline plot, no external dependencies.
std::string svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::string& title);

// Machine-readable report: array of {check_name, eq_tag, value, tol, pass}.
std::string report_to_json(const VerificationReport& rep);

}  // namespace skyrsim
