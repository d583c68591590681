#include "table.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace mwgcli {

namespace {

bool needs_quotes(const std::string& s) {
  return s.empty() || s.find_first_of(",\"\n\r#") != std::string::npos || s.front() == ' ' ||
         s.back() == ' ';
}

Cell parse_cell(const std::string& s, bool quoted);

// Strings that would read back as numbers are quoted as well.
std::string quote(const std::string& s) {
  if (!needs_quotes(s) && std::holds_alternative<std::string>(parse_cell(s, false))) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_number(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  return quote(std::get<std::string>(c));
}

std::vector<std::string> split_csv_line(const std::string& line, std::vector<bool>* quoted) {
  std::vector<std::string> out;
  std::string cur;
  bool in_quotes = false, was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = was_quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      if (quoted) quoted->push_back(was_quoted);
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  if (in_quotes) throw std::runtime_error("unterminated quote in CSV line");
  out.push_back(cur);
  if (quoted) quoted->push_back(was_quoted);
  return out;
}

Cell parse_cell(const std::string& s, bool quoted) {
  if (quoted || s.empty()) return s;
  const char* b = s.data();
  const char* e = b + s.size();
  if (s.find_first_of(".eEn") == std::string::npos) {
    long long i = 0;
    auto r = std::from_chars(b, e, i);
    if (r.ec == std::errc() && r.ptr == e) return i;
  }
  double d = 0;
  auto r = std::from_chars(b, e, d);
  if (r.ec == std::errc() && r.ptr == e) return d;
  return s;
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return *d;
  }
  if (auto i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& col) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == col) return i;
  throw std::out_of_range("table " + name + " has no column " + col);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_csv(const Table& t, std::ostream& out) {
  for (const auto& [k, v] : t.metadata) out << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << quote(t.columns[i]);
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << "\n";
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json j;
  j["name"] = t.name;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) meta[k] = v;
  j["metadata"] = meta;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  out << j.dump(1) << "\n";
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header && line.rfind("# ", 0) == 0) {
      auto colon = line.find(": ", 2);
      if (colon == std::string::npos) throw std::runtime_error("malformed metadata line: " + line);
      t.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
      continue;
    }
    if (!have_header) {
      t.columns = split_csv_line(line, nullptr);
      have_header = true;
      continue;
    }
    std::vector<bool> quoted;
    auto fields = split_csv_line(line, &quoted);
    if (fields.size() != t.columns.size())
      throw std::runtime_error("CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(t.columns.size()));
    std::vector<Cell> row;
    for (std::size_t i = 0; i < fields.size(); ++i) row.push_back(parse_cell(fields[i], quoted[i]));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("CSV has no header row");
  return t;
}

}  // namespace mwgcli
