#pragma once

// CSV and plot-data serialization. Numbers use the shortest decimal form
// that round-trips to the same double.

#include <iosfwd>
#include <string>
#include <vector>

#include "zygmund/extremal_witness.hpp"
#include "zygmund/rate_laws.hpp"
#include "zygmund/trig_poly.hpp"

namespace zygmund {

std::string format_double(double v);

/// Layout:
///   a0,<a0>
///   k,a_k,b_k
///   1,<a_1>,<b_1>
///   ...
void write_trig_poly_csv(std::ostream& os, const TrigPoly& p);
TrigPoly read_trig_poly_csv(std::istream& is);

/// Columns n,deviation,lower_bound,upper_rate,ratio.
void write_rate_report_csv(std::ostream& os, const RateReport& report);

void write_witness_header(std::ostream& os);
/// Columns n,alpha0,I_closed,I_quadrature,lower_bound,deviation.
void write_witness_row(std::ostream& os, int n, const WitnessResult& w);

/// Two whitespace-separated columns: n value.
void write_plot_data(std::ostream& os, const std::vector<int>& n,
                     const std::vector<double>& values);

}  // namespace zygmund
