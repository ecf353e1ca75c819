#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace pea {

// Shortest decimal string that round-trips the exact double, so CSV output
// is byte-identical across runs and platforms.
std::string csv_double(double v);

std::string csv_join(const std::vector<std::string>& fields);

// Line-oriented CSV writer; opens in binary mode and uses '\n' so the bytes
// written are fully determined by the rows.
class CsvFile {
 public:
  CsvFile(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::ofstream out_;
  size_t width_ = 0;
};

}  // namespace pea
