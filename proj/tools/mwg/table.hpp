#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mwgcli {

using Cell = std::variant<double, long long, std::string>;

// A named data table with ordered key/value metadata. Written as CSV with
// "# key: value" header lines, or as JSON.
struct Table {
  std::string name;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column(const std::string& name) const;
};

// Shortest representation that reads back to the same double.
std::string format_number(double v);

void write_csv(const Table& t, std::ostream& out);
void write_json(const Table& t, std::ostream& out);

// Inverse of write_csv. Cells that parse completely as numbers come back as double
// (or long long for integer literals), anything else as string.
Table read_csv(std::istream& in);

}  // namespace mwgcli
