#include "sigwf/columnar.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "sigwf/errors.hpp"

namespace sigwf {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_columnar(const std::filesystem::path& path, const std::string& digest,
                    const std::vector<std::string>& names,
                    const std::vector<const ArrayXd*>& columns,
                    const std::vector<int64_t>* timestamps) {
  if (names.size() != columns.size())
    throw PipelineError("write_columnar: names/columns size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write columnar file: " + path.string());

  out << "# digest=" << digest << "\n";
  if (timestamps) out << "timestamp";
  for (size_t c = 0; c < names.size(); ++c) {
    if (c > 0 || timestamps) out << ',';
    out << names[c];
  }
  out << "\n";

  const Index rows = columns.empty() ? 0 : columns[0]->size();
  for (const ArrayXd* col : columns)
    if (col->size() != rows) throw PipelineError("write_columnar: ragged columns");
  for (Index r = 0; r < rows; ++r) {
    if (timestamps) out << (*timestamps)[static_cast<size_t>(r)];
    for (size_t c = 0; c < columns.size(); ++c) {
      if (c > 0 || timestamps) out << ',';
      out << format_double((*columns[c])[r]);
    }
    out << "\n";
  }
}

ColumnarFile read_columnar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("columnar file not found: " + path.string());
  ColumnarFile file;

  std::string line;
  if (!std::getline(in, line)) throw DataError("columnar file empty: " + path.string());
  const std::string prefix = "# digest=";
  if (line.rfind(prefix, 0) != 0)
    throw DataError("columnar file missing digest line: " + path.string());
  file.digest = line.substr(prefix.size());

  if (!std::getline(in, line)) throw DataError("columnar file missing header: " + path.string());
  size_t start = 0;
  while (true) {
    size_t pos = line.find(',', start);
    file.names.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  file.columns.assign(file.names.size(), {});

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t field = 0;
    start = 0;
    while (true) {
      size_t pos = line.find(',', start);
      std::string tok = line.substr(start, pos == std::string::npos ? pos : pos - start);
      if (field >= file.names.size())
        throw DataError("columnar row with too many fields in " + path.string());
      double v = 0;
      if (tok == "nan") {
        v = std::numeric_limits<double>::quiet_NaN();
      } else {
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc()) throw DataError("bad numeric field '" + tok + "' in " + path.string());
      }
      file.columns[field++].push_back(v);
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  }
  return file;
}

}  // namespace sigwf
