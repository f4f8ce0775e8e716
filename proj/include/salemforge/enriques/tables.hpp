#pragma once

#include <string>
#include <vector>

#include "salemforge/io/jsonio.hpp"

namespace salemforge {

// One row of a reproduced table: the fixture text against what the library computes.
struct TableRow {
  std::string key;
  std::string expected;
  std::string computed;
  bool match = false;
  std::string detail;  // first mismatch, empty on match
};

struct TableReport {
  int table = 0;
  std::vector<TableRow> rows;
  double seconds = 0;
  bool all_match() const;
  io::Json to_json() const;
};

// Recomputes table n (1: candidate Salem numbers, 2: cyclotomic polynomials mod 2, 3: smallest Salem
// numbers by degree) and diffs it against data_dir/tables/table<n>.json.
TableReport reproduce_table(int n, const std::string& data_dir);

// Truncated decimal expansion of x with the given number of digits after the point.
std::string decimal_string(const Rat& x, int digits);

// True when the root lies in [v, v + 10^-d) for the decimal string v with d digits after the point.
bool truncation_brackets(const std::string& decimal, const IntPoly& p, std::string* interval = nullptr);

}  // namespace salemforge
