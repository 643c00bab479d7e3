#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bsr {

// SHA-256 of a byte buffer, hex-encoded.
std::string sha256_hex(const void* data, size_t len);
std::string sha256_hex(const std::string& s);

// Incremental SHA-256 for hashing large streams (files, parameter sets).
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  void update(const void* data, size_t len);
  void update(const std::string& s) { update(s.data(), s.size()); }
  std::string hex();  // finalizes

 private:
  void* ctx_;
  bool done_ = false;
  std::string digest_;
};

std::string sha256_file_hex(const std::string& path);

// CRC-32 (zlib polynomial) used by the demo file trailer.
uint32_t crc32_bytes(const void* data, size_t len, uint32_t seed = 0);

}  // namespace bsr
