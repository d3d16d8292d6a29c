#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "trs/types.hpp"

namespace trs {

// Minimal delimited-text reader.  Handles the quoting rules used by GTFS
// (RFC-4180 style: fields may be wrapped in double quotes, embedded quotes
// are doubled).  Rows are exposed by header name so column order in the
// source file does not matter.
class CsvTable {
 public:
  // Throws InputError naming the file and 1-based row on malformed input.
  static CsvTable read_file(const std::string& path, char delim = ',');
  static CsvTable from_string(const std::string& text, const std::string& name,
                              char delim = ',');

  bool has_column(const std::string& name) const;
  std::size_t row_count() const { return rows_.size(); }
  const std::string& source_name() const { return name_; }

  // Cell accessors throw InputError with file/row/column context when the
  // column is missing or a numeric cell does not parse.
  const std::string& cell(std::size_t row, const std::string& col) const;
  std::string cell_or(std::size_t row, const std::string& col,
                      const std::string& fallback) const;
  std::int64_t cell_int(std::size_t row, const std::string& col) const;
  double cell_double(std::size_t row, const std::string& col) const;

  // 1-based line number of the row in the source file, for messages.
  std::size_t file_line(std::size_t row) const { return row_lines_.at(row); }

 private:
  std::string name_;
  std::vector<std::string> header_;
  std::unordered_map<std::string, std::size_t> col_index_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> row_lines_;
};

// Splits one delimited line honouring double-quote escaping.
std::vector<std::string> split_delimited(const std::string& line, char delim);

// Parses "H:MM:SS" or "HH:MM:SS" (hours may exceed 24 for service days that
// wrap past midnight) into seconds.  Throws InputError on malformed input;
// `where` is prepended to the message.
Seconds parse_hms(const std::string& text, const std::string& where);

// Formats seconds as HH:MM:SS (hours may exceed 24).
std::string format_hms(Seconds t);

}  // namespace trs
