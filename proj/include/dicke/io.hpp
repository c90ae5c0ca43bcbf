#pragma once

#include <map>
#include <string>
#include <vector>

#include "dicke/scaling.hpp"
#include "dicke/sweep.hpp"

namespace dicke::io {

/// Shortest 17-significant-digit decimal form; round-trips any double.
std::string g17(double v);

std::string scan_csv(const std::vector<ScanPoint>& points);
std::vector<ScanPoint> parse_scan_csv(const std::string& text);

std::string collapse_csv(const std::vector<CollapsePoint>& points);
std::string criticals_csv(const std::vector<CriticalPoint>& points);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// gnuplot scripts consuming the emitted CSVs; one per figure analog.
std::string scan_plot_script(const std::string& csv_path, const std::string& column,
                             const std::string& title);
std::string fit_plot_script(const std::string& criticals_csv_path, const ScalingFit& fit,
                            const std::string& which);
std::string collapse_plot_script(const std::string& csv_path,
                                 const std::vector<int>& n_list);

}  // namespace dicke::io
