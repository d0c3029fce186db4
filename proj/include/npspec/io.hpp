#pragma once
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace npspec {

//! Lossless decimal rendering; identical configs give byte-identical files.
inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void csv_begin(std::ostream& os, const std::string& command, const std::string& hash,
                      const std::vector<std::string>& columns) {
  os << "# npspec " << command << " config=" << hash << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    os << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

}  // namespace npspec
