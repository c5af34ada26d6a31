#include "fnlw/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fnlw/error.hpp"

namespace fnlw {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timeseries_csv(const RunRecord& record) {
  std::string out = "step,time,sobolev_pair_norm,hamiltonian\n";
  for (std::size_t j = 0; j < record.times.size(); ++j) {
    const std::int64_t step = static_cast<std::int64_t>(j) * record.steps_per_snapshot;
    out += std::to_string(step) + ',' + format_double(record.times[j]) + ',' + format_double(record.S[j]) + ',' +
           format_double(record.H[j]) + '\n';
  }
  return out;
}

std::vector<SummaryRow> summary_rows(const SweepResult& result) {
  std::vector<SummaryRow> rows;
  for (const SweepRun& r : result.runs) rows.push_back({r.N, r.kind, r.record.S_sup, r.delta, r.record.e_inf});
  return rows;
}

namespace {

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& cell, const std::string& column, std::size_t line) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (cell.empty() || end != begin + cell.size() || errno == ERANGE) {
    throw FormatError("line " + std::to_string(line) + ": column '" + column + "' is not a number: '" + cell + "'");
  }
  return v;
}

}  // namespace

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "N,kind,S_sup,delta,e_inf\n";
  for (const SummaryRow& r : rows) {
    out += std::to_string(r.N) + ',' + std::string(to_string(r.kind)) + ',' + format_double(r.S_sup) + ',' +
           optional_cell(r.delta) + ',' + optional_cell(r.e_inf) + '\n';
  }
  return out;
}

std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("summary is empty (no header)");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split(line);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw FormatError("missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cN = column("N"), cKind = column("kind"), cSup = column("S_sup"), cDelta = column("delta"),
                    cErr = column("e_inf");

  std::vector<SummaryRow> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size()) {
      throw FormatError("line " + std::to_string(number) + ": expected " + std::to_string(header.size()) +
                        " fields, found " + std::to_string(cells.size()));
    }
    SummaryRow r;
    const double n = parse_number(cells[cN], "N", number);
    if (n != std::floor(n) || n < 0) throw FormatError("line " + std::to_string(number) + ": column 'N' must be a non-negative integer");
    r.N = static_cast<std::int64_t>(n);
    try {
      r.kind = parse_data_kind(cells[cKind]);
    } catch (const ValidationError&) {
      throw FormatError("line " + std::to_string(number) + ": column 'kind' has unknown value '" + cells[cKind] + "'");
    }
    r.S_sup = parse_number(cells[cSup], "S_sup", number);
    if (!cells[cDelta].empty()) r.delta = parse_number(cells[cDelta], "delta", number);
    if (!cells[cErr].empty()) r.e_inf = parse_number(cells[cErr], "e_inf", number);
    rows.push_back(r);
  }
  return rows;
}

std::vector<SeriesRate> summary_rates(const std::vector<SummaryRow>& rows) {
  std::vector<DataKind> kinds;
  std::vector<SweepRun> runs;
  for (const SummaryRow& r : rows) {
    if (std::find(kinds.begin(), kinds.end(), r.kind) == kinds.end()) kinds.push_back(r.kind);
    SweepRun run;
    run.N = r.N;
    run.kind = r.kind;
    run.record.S_sup = r.S_sup;
    run.delta = r.delta;
    runs.push_back(std::move(run));
  }
  return sweep_rates(runs, kinds);
}

std::string rates_csv(const std::vector<SeriesRate>& rates) {
  std::string out = "kind,series,exponent,residual\n";
  for (const SeriesRate& r : rates) {
    out += std::string(to_string(r.kind)) + ',' + r.series + ',' + format_double(r.fit.exponent) + ',' +
           format_double(r.fit.residual) + '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error("error while writing '" + path + "'");
}

}  // namespace fnlw
