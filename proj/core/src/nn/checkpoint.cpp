#include "bsr/nn/checkpoint.hpp"

#include <cstring>
#include <fstream>

namespace bsr::nn {

namespace {

constexpr char kMagic[8] = {'B', 'S', 'R', 'C', 'K', 'P', 'T', '1'};

void put_u64(std::ostream& out, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (unsigned char)(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

uint64_t get_u64(std::istream& in, const std::string& what) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (in.gcount() != 8) throw IoError("checkpoint truncated while reading " + what);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const std::vector<NamedTensor>& entries) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path);
  out.write(kMagic, 8);
  put_u64(out, entries.size());
  for (const auto& e : entries) {
    put_u64(out, e.name.size());
    out.write(e.name.data(), std::streamsize(e.name.size()));
    put_u64(out, e.shape.size());
    for (int64_t ext : e.shape) put_u64(out, uint64_t(ext));
    static_assert(sizeof(float) == 4);
    out.write(reinterpret_cast<const char*>(e.data.data()),
              std::streamsize(e.data.size() * sizeof(float)));
  }
  if (!out) throw IoError("write failure on checkpoint: " + path);
}

std::vector<NamedTensor> load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  char magic[8];
  in.read(magic, 8);
  if (in.gcount() != 8 || std::memcmp(magic, kMagic, 8) != 0)
    throw IoError("not a checkpoint file (bad magic): " + path);
  uint64_t count = get_u64(in, "entry count");
  std::vector<NamedTensor> entries;
  entries.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    NamedTensor e;
    uint64_t nlen = get_u64(in, "name length");
    e.name.resize(nlen);
    in.read(e.name.data(), std::streamsize(nlen));
    if (uint64_t(in.gcount()) != nlen) throw IoError("checkpoint truncated in entry name");
    uint64_t rank = get_u64(in, "rank");
    uint64_t numel = 1;
    for (uint64_t r = 0; r < rank; ++r) {
      uint64_t ext = get_u64(in, "extent");
      e.shape.push_back(int64_t(ext));
      numel *= ext;
    }
    e.data.resize(numel);
    in.read(reinterpret_cast<char*>(e.data.data()), std::streamsize(numel * sizeof(float)));
    if (uint64_t(in.gcount()) != numel * sizeof(float))
      throw IoError("checkpoint truncated in payload of '" + e.name + "'");
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<NamedTensor> collect_entries(const Module& m) {
  std::vector<NamedTensor> out;
  for (const auto& [n, t] : m.params())
    out.push_back({m.name() + "/" + n, t->shape, t->data});
  return out;
}

void assign_entries(Module& m, const std::vector<NamedTensor>& entries) {
  for (auto& [n, t] : m.params()) {
    std::string full = m.name() + "/" + n;
    const NamedTensor* found = nullptr;
    for (const auto& e : entries)
      if (e.name == full) {
        found = &e;
        break;
      }
    if (!found) throw IoError("checkpoint is missing parameter '" + full + "'");
    if (found->shape != t->shape)
      throw ShapeError("checkpoint parameter '" + full + "' has shape " +
                       shape_str(found->shape) + ", module wants " + shape_str(t->shape));
    t->data = found->data;
  }
}

void save_module(const std::string& path, const Module& m) {
  save_checkpoint(path, collect_entries(m));
}

void load_module(const std::string& path, Module& m) {
  assign_entries(m, load_checkpoint(path));
}

}  // namespace bsr::nn
