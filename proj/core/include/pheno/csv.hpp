#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pheno {

// Minimal CSV layer tuned for the pipeline's data shape: no quoting, no
// embedded commas/newlines in values, header row always present. Numeric
// round-trips use from_chars/to_chars so parse+format is the hot-loop cost.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col(std::string_view name) const;        // -1 when absent
  int col_required(std::string_view name) const;  // throws MissingTimestampColumn-ish
};

CsvTable parse_csv(std::string_view text);
std::string write_csv(const CsvTable& table);

// Split one line on commas (no allocation for the line itself).
std::vector<std::string_view> split_fields(std::string_view line);

// Fast scalar conversions. parse_* throw Errc::BadArgument on garbage.
std::int64_t parse_i64(std::string_view s);
double parse_f64(std::string_view s);
bool try_parse_i64(std::string_view s, std::int64_t& out);
bool try_parse_f64(std::string_view s, double& out);

// Shortest round-trip double formatting; integers render without exponent.
std::string format_f64(double v);
void append_f64(std::string& out, double v);
void append_i64(std::string& out, std::int64_t v);

// Feature-file convention: missing values render as "nan".
void append_cell(std::string& out, double v);

}  // namespace pheno
