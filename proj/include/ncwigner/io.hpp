#pragma once

#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

#include "ncwigner/wigner.hpp"

namespace ncwigner::io {

/// Shortest-safe round-trip text for a double: 17 significant digits.
inline std::string format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// One CSV record; fields are separated by ',' and the line ends with LF.
inline void write_row(std::ostream& os, std::initializer_list<double> fields) {
  bool first = true;
  for (double v : fields) {
    if (!first) os << ',';
    os << format(v);
    first = false;
  }
  os << '\n';
}

/// Dense text block: N lines of N space-separated values, row i at r = coord(i).
inline void write_matrix(std::ostream& os, const Field2D& f) {
  const int n = f.grid.samples;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) os << ' ';
      os << format(f.at(i, j));
    }
    os << '\n';
  }
}

/// Long-format CSV rows `prefix r,k,value` for every grid point.
inline void write_long(std::ostream& os, const Field2D& f, std::string_view prefix = {}) {
  const int n = f.grid.samples;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      os << prefix << format(f.grid.coord(i)) << ',' << format(f.grid.coord(j)) << ','
         << format(f.at(i, j)) << '\n';
}

/// 64-bit FNV-1a hash.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace ncwigner::io
