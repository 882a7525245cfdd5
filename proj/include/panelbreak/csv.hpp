#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace panelbreak {

// Minimal RFC-4180-ish CSV: comma delimiter, double-quote quoting, header
// row required on read. Enough for the panel tables this project consumes
// and emits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by header name, -1 when absent.
  int column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in, const std::string& source_name);
CsvTable read_csv_file(const std::string& path);

std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace panelbreak
