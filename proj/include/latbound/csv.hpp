#pragma once

#include <string>
#include <vector>

namespace latbound {

/// Rows of preformatted cells; fixed column order.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  std::string to_csv() const;
};

/// %.17g, so values round-trip exactly.
std::string fmt(double v);
std::string fmt(long v);
inline std::string fmt(int v) { return fmt(static_cast<long>(v)); }
inline std::string fmt(bool v) { return v ? "true" : "false"; }

}  // namespace latbound
