#pragma once

#include <string>
#include <vector>

namespace airytrap {

/// Shortest decimal that parses back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Header line plus one line per row. Throws EmptyDataError without a header and
/// ConfigError when a row width differs from the header.
std::string to_csv(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);

/// Parses what to_csv writes. ConfigError on malformed numbers or ragged rows.
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

void write_text(const std::string& path, const std::string& content);

}  // namespace airytrap
