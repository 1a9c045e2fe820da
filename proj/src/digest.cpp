#include "sigwf/digest.hpp"

#include <fstream>
#include <vector>

#include "sigwf/errors.hpp"

namespace sigwf {

std::string digest_hex(uint64_t h) {
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

uint64_t digest_file(const std::filesystem::path& path, uint64_t seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file for digest: " + path.string());
  uint64_t h = seed;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h = fnv1a64(std::string_view(buf.data(), static_cast<size_t>(in.gcount())), h);
  }
  return h;
}

}  // namespace sigwf
