// Copyright 2026 The clgeom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "clgeom/geometry.hpp"
#include "clgeom/lineclass.hpp"

namespace clgeom {

/// Thrown when a line-class file was written against a different line table.
class UniverseMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// index, then the six Plücker coordinates. For k > 1 each coordinate takes
/// k integer columns, little-endian (p12_0, p12_1, ...).
inline void write_line_table_csv(std::ostream& out, const Geometry& geo) {
  const int k = geo.field().k();
  out << "index";
  for (const char* name : {"p12", "p13", "p14", "p23", "p24", "p34"}) {
    if (k == 1) {
      out << ',' << name;
    } else {
      for (int j = 0; j < k; ++j) out << ',' << name << '_' << j;
    }
  }
  out << '\n';
  for (LineIndex l = 0; l < geo.num_lines(); ++l) {
    out << l;
    for (auto e : geo.plucker(l))
      for (int c : geo.field().coeffs(e)) out << ',' << c;
    out << '\n';
  }
}

/// Header row, then one line index per row.
inline void write_line_class(std::ostream& out, const Geometry& geo, const LineClass& lc) {
  out << "# clgeom-lineclass q=" << geo.q() << " hash=" << hash_hex(geo.line_table_hash()) << " name=" << lc.name
      << " x=" << lc.x << '\n';
  for (auto l : lc.members.members()) out << l << '\n';
}

/// Reads a line-class file. The header is optional; when present its q and
/// hash must match the geometry. Without a header the caller's x is used.
inline LineClass read_line_class(std::istream& in, const Geometry& geo, long default_x = 0) {
  LineClass lc{"file", IndexSet(geo.num_lines()), default_x};
  std::string row;
  std::size_t row_no = 0;
  while (std::getline(in, row)) {
    ++row_no;
    if (row.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (row[0] == '#') {
      std::istringstream hdr(row.substr(1));
      std::string tok;
      while (hdr >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "q" && std::stol(val) != geo.q())
          throw UniverseMismatch("line class was written for q=" + val + ", not q=" + std::to_string(geo.q()));
        if (key == "hash" && val != hash_hex(geo.line_table_hash()))
          throw UniverseMismatch("line table hash mismatch: file " + val + ", current " + hash_hex(geo.line_table_hash()));
        if (key == "name") lc.name = val;
        if (key == "x" && default_x == 0) lc.x = std::stol(val);
      }
      continue;
    }
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(row, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("line " + std::to_string(row_no) + ": not an integer");
    }
    if (row.find_first_not_of(" \t\r", pos) != std::string::npos)
      throw std::invalid_argument("line " + std::to_string(row_no) + ": trailing characters");
    if (v < 0 || static_cast<std::size_t>(v) >= geo.num_lines())
      throw std::invalid_argument("line " + std::to_string(row_no) + ": index " + std::to_string(v) + " out of range");
    if (lc.members.contains(static_cast<std::size_t>(v)))
      throw std::invalid_argument("line " + std::to_string(row_no) + ": duplicate index " + std::to_string(v));
    lc.members.insert(static_cast<std::size_t>(v));
  }
  return lc;
}

}  // namespace clgeom
