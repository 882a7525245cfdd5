#include "panelbreak/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "panelbreak/errors.hpp"

namespace panelbreak {

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

// Splits one physical line that is known not to contain embedded newlines.
// Quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_record(const std::string& line, const std::string& where) {
  std::vector<std::string> out;
  std::string field;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  if (in_quotes)
    throw Error(ErrorKind::parse_error, where + ": unterminated quoted field");
  out.push_back(field);
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& in, const std::string& source_name) {
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      t.header = split_record(line, source_name + ":1");
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_record(line, source_name + ":" + std::to_string(lineno));
    if (fields.size() != t.header.size())
      throw Error(ErrorKind::parse_error,
                  source_name + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(t.header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    t.rows.push_back(std::move(fields));
  }
  if (t.header.empty())
    throw Error(ErrorKind::parse_error, source_name + ": missing header row");
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::parse_error, "cannot open input file: " + path);
  return read_csv(in, path);
}

std::string csv_escape(const std::string& field) {
  const bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  out += "\"";
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

}  // namespace panelbreak
