#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace fdepth {

using Seed = std::uint64_t;

/// Named substream tags. Values are part of the reproducibility contract.
enum class Stream : std::uint64_t {
  Gaussian = 1,
  Uniform = 2,
  Contamination = 3,
  Projection = 4,
  TieBreak = 5,
  CvPlan = 6,
  CvTie = 7,
  Split = 8,
  Data = 9,
};

/// Independent engine derived from a master seed and a key path, e.g.
/// substream(seed, {Stream::Gaussian, group, index}).
inline std::mt19937_64 substream(Seed master, std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * keys.size());
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(master);
  for (auto k : keys) push(k);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

inline std::uint64_t key(Stream s) { return static_cast<std::uint64_t>(s); }

/// Child seed for a substream, for APIs that take a Seed rather than an engine.
inline Seed derive_seed(Seed master, std::initializer_list<std::uint64_t> keys) {
  return substream(master, keys)();
}

}  // namespace fdepth
