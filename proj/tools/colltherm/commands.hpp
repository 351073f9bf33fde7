#pragma once

#include <iosfwd>
#include <string>

#include "colltherm/config.hpp"

namespace colltherm::cli {

/// %.17g, with "-inf", "inf" and "nan" spelled out.
std::string format_double(double v);

/// log10 of a nonnegative ratio; 0 maps to -infinity (printed as "-inf").
double log10_ratio(double ratio);

void write_fig1a(const RunConfig& config, std::ostream& out);
void write_fig1b(const RunConfig& config, std::ostream& out);
void write_fig1c(const RunConfig& config, std::ostream& out);
void write_fig2(const RunConfig& config, std::ostream& out);
void write_fig3(const RunConfig& config, std::ostream& out);

/// Single-point evaluation of every diagnostic.
nlohmann::json compute_record(const RunConfig& config);

/// Quick internal consistency checks; one line per check. Returns the number of failures.
int run_selftest(std::ostream& out);

/// gnuplot script that plots `csv_path` as written by the named figure command.
std::string plot_script(const std::string& figure, const std::string& csv_path);

}  // namespace colltherm::cli
