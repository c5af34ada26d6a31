#pragma once

// CSV outputs. Floating-point fields use 17 significant digits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fnlw/experiments.hpp"
#include "fnlw/model.hpp"

namespace fnlw {

std::string format_double(double v);

// step,time,sobolev_pair_norm,hamiltonian
std::string timeseries_csv(const RunRecord& record);

struct SummaryRow {
  std::int64_t N = 0;
  DataKind kind = DataKind::truncated;
  double S_sup = 0.0;
  std::optional<double> delta;
  std::optional<double> e_inf;
};

std::vector<SummaryRow> summary_rows(const SweepResult& result);
// N,kind,S_sup,delta,e_inf; empty cells for undefined values
std::string summary_csv(const std::vector<SummaryRow>& rows);
// Throws FormatError naming a missing column or the offending line.
std::vector<SummaryRow> parse_summary_csv(const std::string& text);

// Fits per kind in order of first appearance; identical to sweep_rates on
// the same data.
std::vector<SeriesRate> summary_rates(const std::vector<SummaryRow>& rows);
// kind,series,exponent,residual
std::string rates_csv(const std::vector<SeriesRate>& rates);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace fnlw
