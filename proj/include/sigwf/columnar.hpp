#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sigwf/series.hpp"

namespace sigwf {

/// Columnar diagnostic file: `# digest=<hex>` comment, header row, then one
/// comma-separated row per bar with shortest round-trip floats (NaN for
/// not-yet-valid entries).
struct ColumnarFile {
  std::string digest;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // column-major
};

void write_columnar(const std::filesystem::path& path, const std::string& digest,
                    const std::vector<std::string>& names,
                    const std::vector<const ArrayXd*>& columns,
                    const std::vector<int64_t>* timestamps = nullptr);

ColumnarFile read_columnar(const std::filesystem::path& path);

/// Shortest round-trip decimal text for a double.
std::string format_double(double v);

}  // namespace sigwf
