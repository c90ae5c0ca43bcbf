#include "dicke/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dicke::io {

namespace {

const char* kScanHeader = "gamma,fidelity,chi_f,delta_p,energy,degenerate";

double parse_double(std::string_view field, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " field: " + std::string(field));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

}  // namespace

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string scan_csv(const std::vector<ScanPoint>& points) {
  std::string out = kScanHeader;
  out += '\n';
  for (const ScanPoint& p : points) {
    out += g17(p.gamma);
    out += ',';
    out += g17(p.fidelity);
    out += ',';
    out += g17(p.chi_f);
    out += ',';
    out += g17(p.delta_p);
    out += ',';
    out += g17(p.energy);
    out += ',';
    out += p.degenerate ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::vector<ScanPoint> parse_scan_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kScanHeader) {
    throw std::invalid_argument("missing or unexpected scan CSV header");
  }
  std::vector<ScanPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 6) throw std::invalid_argument("bad scan CSV row: " + line);
    ScanPoint p;
    p.gamma = parse_double(fields[0], "gamma");
    p.fidelity = parse_double(fields[1], "fidelity");
    p.chi_f = parse_double(fields[2], "chi_f");
    p.delta_p = parse_double(fields[3], "delta_p");
    p.energy = parse_double(fields[4], "energy");
    if (fields[5] != "0" && fields[5] != "1") {
      throw std::invalid_argument("bad degenerate flag: " + line);
    }
    p.degenerate = fields[5] == "1";
    points.push_back(p);
  }
  return points;
}

std::string collapse_csv(const std::vector<CollapsePoint>& points) {
  std::string out = "n_atoms,x,y\n";
  for (const CollapsePoint& p : points) {
    out += std::to_string(p.n_atoms);
    out += ',';
    out += g17(p.x);
    out += ',';
    out += g17(p.y);
    out += '\n';
  }
  return out;
}

std::string criticals_csv(const std::vector<CriticalPoint>& points) {
  std::string out = "n_atoms,gamma_max,f_min,chi_max,delta_p_peak_gamma\n";
  for (const CriticalPoint& p : points) {
    out += std::to_string(p.n_atoms);
    out += ',';
    out += g17(p.gamma_max);
    out += ',';
    out += g17(p.f_min);
    out += ',';
    out += g17(p.chi_max);
    out += ',';
    out += g17(p.delta_p_peak_gamma);
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("short write: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string scan_plot_script(const std::string& csv_path, const std::string& column,
                             const std::string& title) {
  int col = 2;
  if (column == "chi_f") col = 3;
  if (column == "delta_p") col = 4;
  if (column == "energy") col = 5;
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key off\n"
    << "set xlabel 'gamma'\n"
    << "set ylabel '" << title << "'\n"
    << "plot '" << csv_path << "' every ::1 using 1:" << col << " with lines\n";
  return s.str();
}

std::string fit_plot_script(const std::string& criticals_csv_path, const ScalingFit& fit,
                            const std::string& which) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key left\n";
  if (which == "gamma") {
    s << "set xlabel 'log10(N)'\nset ylabel 'log10(gamma_max - gamma_c)'\n"
      << "gamma_c = 0.5\n"
      << "f(x) = " << g17(fit.coefficients[0]) << " + " << g17(fit.coefficients[1]) << "*x\n"
      << "plot '" << criticals_csv_path
      << "' every ::1 using (log10($1)):(log10($2 - gamma_c)) with points title 'data', "
      << "f(x) with lines title 'fit'\n";
  } else if (which == "chi") {
    s << "set xlabel 'log10(N)'\nset ylabel 'log10(chi_max)'\n"
      << "f(x) = " << g17(fit.coefficients[0]) << " + " << g17(fit.coefficients[1]) << "*x\n"
      << "plot '" << criticals_csv_path
      << "' every ::1 using (log10($1)):(log10($4)) with points title 'data', "
      << "f(x) with lines title 'fit'\n";
  } else {
    s << "set xlabel 'N'\nset ylabel 'log10(F_min)'\n"
      << "f(x) = " << g17(fit.coefficients[0]) << " + " << g17(fit.coefficients[1])
      << "*x + " << g17(fit.coefficients[2]) << "*x**2\n"
      << "plot '" << criticals_csv_path
      << "' every ::1 using 1:(log10($3)) with points title 'data', "
      << "f(x) with lines title 'fit'\n";
  }
  return s.str();
}

std::string collapse_plot_script(const std::string& csv_path,
                                 const std::vector<int>& n_list) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set xlabel 'N^nu (gamma - gamma_max)'\n"
    << "set ylabel 'chi_s'\n"
    << "set key top left\n"
    << "plot ";
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (i) s << ", \\\n     ";
    s << "'" << csv_path << "' every ::1 using ($1==" << n_list[i]
      << "? $2 : 1/0):3 with lines title 'N=" << n_list[i] << "'";
  }
  s << '\n';
  return s.str();
}

}  // namespace dicke::io
