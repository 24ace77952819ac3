#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace seqsmooth {

// Shortest round-trip decimal form of a double, identical across runs
// of the same build; keeps experiment CSVs byte-reproducible.
std::string format_double(double v);

// Minimal CSV emitter: header row up front, one row per call.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void row(std::span<const double> values);
  void row(const std::vector<std::string>& cells);

  const std::string& path() const { return path_; }

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t columns_;
};

}  // namespace seqsmooth
