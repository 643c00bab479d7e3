#include "bsr/util/hash.hpp"

#include <openssl/evp.h>
#include <zlib.h>

#include <cstdio>
#include <fstream>

#include "bsr/util/error.hpp"

namespace bsr {

static std::string to_hex(const unsigned char* d, unsigned n) {
  static const char* k = "0123456789abcdef";
  std::string out;
  out.resize(size_t(n) * 2);
  for (unsigned i = 0; i < n; ++i) {
    out[2 * i] = k[d[i] >> 4];
    out[2 * i + 1] = k[d[i] & 0xf];
  }
  return out;
}

std::string sha256_hex(const void* data, size_t len) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  EVP_Digest(data, len, md, &n, EVP_sha256(), nullptr);
  return to_hex(md, n);
}

std::string sha256_hex(const std::string& s) { return sha256_hex(s.data(), s.size()); }

Sha256::Sha256() {
  EVP_MD_CTX* c = EVP_MD_CTX_new();
  EVP_DigestInit_ex(c, EVP_sha256(), nullptr);
  ctx_ = c;
}

Sha256::~Sha256() {
  if (ctx_) EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_));
}

void Sha256::update(const void* data, size_t len) {
  if (done_) throw Error("Sha256: update after hex()");
  EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data, len);
}

std::string Sha256::hex() {
  if (!done_) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int n = 0;
    EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), md, &n);
    digest_ = to_hex(md, n);
    done_ = true;
  }
  return digest_;
}

std::string sha256_file_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for hashing: " + path);
  Sha256 h;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    h.update(buf, size_t(in.gcount()));
  }
  return h.hex();
}

uint32_t crc32_bytes(const void* data, size_t len, uint32_t seed) {
  return uint32_t(::crc32(seed, static_cast<const Bytef*>(data), uInt(len)));
}

}  // namespace bsr
