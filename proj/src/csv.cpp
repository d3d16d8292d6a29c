#include "trs/csv.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace trs {

namespace {

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

std::vector<std::string> split_delimited(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delim) {
      out.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(field);
  return out;
}

CsvTable CsvTable::read_file(const std::string& path, char delim) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str(), path, delim);
}

CsvTable CsvTable::from_string(const std::string& text, const std::string& name,
                               char delim) {
  CsvTable t;
  t.name_ = name;
  std::istringstream in(text);
  std::string line;
  std::size_t skipped = 0;
  // Leading '#' lines carry provenance comments written by this tool.
  do {
    if (!std::getline(in, line)) throw InputError(name + ": empty file");
    ++skipped;
  } while (!line.empty() && line[0] == '#');
  // Some feeds ship a UTF-8 BOM on the header line.
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
    line = line.substr(3);
  for (auto& h : split_delimited(strip_cr(line), delim)) {
    std::string key = trim(h);
    t.col_index_.emplace(key, t.header_.size());
    t.header_.push_back(key);
  }
  std::size_t line_no = skipped;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_delimited(line, delim);
    if (fields.size() != t.header_.size()) {
      throw InputError(name + " line " + std::to_string(line_no) + ": expected " +
                       std::to_string(t.header_.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    t.rows_.push_back(std::move(fields));
    t.row_lines_.push_back(line_no);
  }
  return t;
}

bool CsvTable::has_column(const std::string& name) const {
  return col_index_.count(name) > 0;
}

const std::string& CsvTable::cell(std::size_t row, const std::string& col) const {
  auto it = col_index_.find(col);
  if (it == col_index_.end())
    throw InputError(name_ + ": missing column '" + col + "'");
  return rows_.at(row)[it->second];
}

std::string CsvTable::cell_or(std::size_t row, const std::string& col,
                              const std::string& fallback) const {
  auto it = col_index_.find(col);
  if (it == col_index_.end()) return fallback;
  const std::string& v = rows_.at(row)[it->second];
  return v.empty() ? fallback : v;
}

std::int64_t CsvTable::cell_int(std::size_t row, const std::string& col) const {
  const std::string& v = cell(row, col);
  errno = 0;
  char* end = nullptr;
  long long x = std::strtoll(v.c_str(), &end, 10);
  if (errno != 0 || end == v.c_str() || *end != '\0')
    throw InputError(name_ + " line " + std::to_string(file_line(row)) +
                     ": column '" + col + "': not an integer: '" + v + "'");
  return x;
}

double CsvTable::cell_double(std::size_t row, const std::string& col) const {
  const std::string& v = cell(row, col);
  errno = 0;
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (errno != 0 || end == v.c_str() || *end != '\0')
    throw InputError(name_ + " line " + std::to_string(file_line(row)) +
                     ": column '" + col + "': not a number: '" + v + "'");
  return x;
}

Seconds parse_hms(const std::string& text, const std::string& where) {
  int h = 0, m = 0, s = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(trim(text));
  in >> h >> c1 >> m >> c2 >> s;
  if (in.fail() || c1 != ':' || c2 != ':' || h < 0 || m < 0 || m > 59 || s < 0 ||
      s > 59)
    throw InputError(where + ": bad time '" + text + "' (want HH:MM:SS)");
  return Seconds(h) * 3600 + Seconds(m) * 60 + s;
}

std::string format_hms(Seconds t) {
  if (t < 0) return "-" + format_hms(-t);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld",
                static_cast<long long>(t / 3600),
                static_cast<long long>((t / 60) % 60),
                static_cast<long long>(t % 60));
  return buf;
}

}  // namespace trs
