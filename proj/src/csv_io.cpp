#include "zygmund/csv_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "zygmund/errors.hpp"

namespace zygmund {

namespace {

double parse_double(const std::string& field) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ParameterError("malformed number in CSV: '" + field + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_trig_poly_csv(std::ostream& os, const TrigPoly& p) {
  os << "a0," << format_double(p.a0) << '\n' << "k,a_k,b_k\n";
  for (int k = 1; k <= p.degree(); ++k)
    os << k << ',' << format_double(p.at(k).a) << ','
       << format_double(p.at(k).b) << '\n';
}

TrigPoly read_trig_poly_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParameterError("empty polynomial CSV");
  auto head = split(line);
  if (head.size() != 2 || head[0] != "a0")
    throw ParameterError("polynomial CSV must start with 'a0,<value>'");
  TrigPoly p;
  p.a0 = parse_double(head[1]);
  if (!std::getline(is, line) || line != "k,a_k,b_k")
    throw ParameterError("polynomial CSV lacks the 'k,a_k,b_k' header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != 3) throw ParameterError("bad polynomial row: " + line);
    const auto k = static_cast<int>(parse_double(fields[0]));
    if (k != p.degree() + 1)
      throw ParameterError("polynomial rows must list k = 1, 2, ... in order");
    p.terms.push_back({parse_double(fields[1]), parse_double(fields[2])});
  }
  return p;
}

void write_rate_report_csv(std::ostream& os, const RateReport& report) {
  os << "n,deviation,lower_bound,upper_rate,ratio\n";
  for (std::size_t i = 0; i < report.n_grid.size(); ++i) {
    os << report.n_grid[i] << ',' << format_double(report.deviations[i]) << ','
       << format_double(report.lower_bounds[i]) << ','
       << format_double(report.upper_rates[i]) << ','
       << format_double(report.deviations[i] / report.upper_rates[i]) << '\n';
  }
}

void write_witness_header(std::ostream& os) {
  os << "n,alpha0,I_closed,I_quadrature,lower_bound,deviation\n";
}

void write_witness_row(std::ostream& os, int n, const WitnessResult& w) {
  os << n << ',' << format_double(w.alpha0) << ','
     << format_double(w.pairing.closed_form) << ','
     << format_double(w.pairing.quadrature) << ','
     << format_double(w.lower_bound) << ','
     << format_double(w.measured_deviation) << '\n';
}

void write_plot_data(std::ostream& os, const std::vector<int>& n,
                     const std::vector<double>& values) {
  for (std::size_t i = 0; i < n.size(); ++i)
    os << n[i] << ' ' << format_double(values[i]) << '\n';
}

}  // namespace zygmund
