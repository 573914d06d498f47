#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace floqlab {

// Shortest round-trip decimal form, independent of any locale.
std::string format_double(double v);

// Column-ordered CSV with a mandatory header row and dot decimal separators.
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);

    void row(const std::vector<double>& values);

  private:
    std::ofstream out_;
    std::size_t n_columns_;
};

}  // namespace floqlab
