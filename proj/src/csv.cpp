#include "pea/csv.hpp"

#include <charconv>
#include <cmath>

#include "pea/errors.hpp"

namespace pea {

std::string csv_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string line;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  line += '\n';
  return line;
}

CsvFile::CsvFile(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), width_(header.size()) {
  if (!out_) fail(Err::BadConfig, "cannot open output file " + path);
  out_ << csv_join(header);
}

void CsvFile::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_)
    fail(Err::LengthMismatch, "CSV row width does not match header");
  out_ << csv_join(fields);
}

void CsvFile::close() { out_.close(); }

}  // namespace pea
