#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace sigwf {

/// 64-bit FNV-1a. Used for run digests and algorithmic seeds; not a
/// cryptographic hash.
inline uint64_t fnv1a64(std::string_view bytes, uint64_t seed = 0xcbf29ce484222325ull) {
  uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_hex(uint64_t h);
uint64_t digest_file(const std::filesystem::path& path, uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace sigwf
