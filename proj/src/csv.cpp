#include "latbound/csv.hpp"

#include <cstdio>

#include "latbound/error.hpp"

namespace latbound {

void Table::add(std::vector<std::string> row) {
  if (row.size() != header.size()) raise(ErrorKind::invariant, "csv row width differs from header");
  rows.push_back(std::move(row));
}

namespace {
std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += quote(cells[i]);
  }
  out += '\n';
}
}  // namespace

std::string Table::to_csv() const {
  std::string out;
  line(out, header);
  for (const auto& r : rows) line(out, r);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(long v) { return std::to_string(v); }

}  // namespace latbound
