#include "pheno/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "pheno/error.hpp"

namespace pheno {

int CsvTable::col(std::string_view name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

int CsvTable::col_required(std::string_view name) const {
  int c = col(name);
  if (c < 0) {
    if (name == "timestamp")
      throw Error(Errc::MissingTimestampColumn, "no 'timestamp' column in header");
    throw Error(Errc::BadArgument, "missing column '" + std::string(name) + "'");
  }
  return c;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        (nl == std::string_view::npos) ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (first) {
      for (auto f : fields) t.header.emplace_back(f);
      first = false;
    } else {
      std::vector<std::string> row;
      row.reserve(fields.size());
      for (auto f : fields) row.emplace_back(f);
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

std::string write_csv(const CsvTable& table) {
  std::string out;
  size_t est = 16;
  for (const auto& h : table.header) est += h.size() + 1;
  out.reserve(est * (table.rows.size() + 1));
  for (size_t i = 0; i < table.header.size(); ++i) {
    if (i) out.push_back(',');
    out += table.header[i];
  }
  out.push_back('\n');
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += row[i];
    }
    out.push_back('\n');
  }
  return out;
}

std::int64_t parse_i64(std::string_view s) {
  std::int64_t v;
  if (!try_parse_i64(s, v)) throw Error(Errc::BadArgument, "bad integer '" + std::string(s) + "'");
  return v;
}

bool try_parse_i64(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

double parse_f64(std::string_view s) {
  double v;
  if (!try_parse_f64(s, v)) throw Error(Errc::BadArgument, "bad number '" + std::string(s) + "'");
  return v;
}

bool try_parse_f64(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s == "nan" || s == "NaN") {
    out = std::nan("");
    return true;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void append_i64(std::string& out, std::int64_t v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

void append_f64(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "nan";
    return;
  }
  // Integral doubles print as integers; everything else shortest round-trip.
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    append_i64(out, static_cast<std::int64_t>(v));
    return;
  }
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

std::string format_f64(double v) {
  std::string s;
  append_f64(s, v);
  return s;
}

void append_cell(std::string& out, double v) { append_f64(out, v); }

}  // namespace pheno
