#pragma once

#include <string>
#include <vector>

#include "bsr/nn/module.hpp"
#include "bsr/nn/tensor.hpp"

namespace bsr::nn {

// Checkpoint file layout (all integers little-endian u64, floats f32 LE):
//   magic "BSRCKPT1"
//   u64 entry_count
//   per entry: u64 name_len, name bytes, u64 rank, u64 extents[rank], f32 payload[]
// Round-trips are bit-exact.

struct NamedTensor {
  std::string name;
  Shape shape;
  std::vector<float> data;
};

void save_checkpoint(const std::string& path, const std::vector<NamedTensor>& entries);
std::vector<NamedTensor> load_checkpoint(const std::string& path);

// Module helpers: entries named "<module>/<param>".
std::vector<NamedTensor> collect_entries(const Module& m);
// Assigns matching entries into existing parameters; throws on missing or
// shape-mismatched parameters.
void assign_entries(Module& m, const std::vector<NamedTensor>& entries);

void save_module(const std::string& path, const Module& m);
void load_module(const std::string& path, Module& m);

}  // namespace bsr::nn
