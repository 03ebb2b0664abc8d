// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace rcilab {

// Identifies one reproducible random stream: Monte Carlo trial i uses
// stream_id = i, so trials can be generated in any order on any thread.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

// Substream domains keep draws for different purposes statistically
// independent within one (master_seed, stream_id) pair.
enum class RngDomain : std::uint64_t {
  channel = 0,   // sample_channel
  estimate = 1,  // Hhat of a CSIT pair
  error = 2,     // E of a CSIT pair
  rvq = 3,       // RVQ codebook vectors
};

// Philox4x64-10 counter-based generator (Salmon et al., SC'11), matching the
// published Random123 test vectors. Key = (master_seed, stream_id), counter
// word 0 is the block index, counter word 1 the domain.
class Philox4x64 {
 public:
  using result_type = std::uint64_t;

  Philox4x64(const RngSpec& spec, RngDomain domain) noexcept
      : key_{spec.master_seed, spec.stream_id},
        ctr_{0, static_cast<std::uint64_t>(domain), 0, 0} {}

  // One keyed bijection of a 256-bit counter block; pure, KAT-testable.
  static std::array<std::uint64_t, 4> block(
      const std::array<std::uint64_t, 4>& ctr,
      const std::array<std::uint64_t, 2>& key) noexcept {
    constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
    constexpr std::uint64_t kM1 = 0xCA5A826395121157ULL;
    constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
    constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73BULL;

    std::array<std::uint64_t, 4> c = ctr;
    std::uint64_t k0 = key[0];
    std::uint64_t k1 = key[1];
    for (int round = 0; round < 10; ++round) {
      const auto p0 = static_cast<unsigned __int128>(kM0) * c[0];
      const auto p1 = static_cast<unsigned __int128>(kM1) * c[2];
      const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
      const auto lo0 = static_cast<std::uint64_t>(p0);
      const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
      const auto lo1 = static_cast<std::uint64_t>(p1);
      c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
      k0 += kW0;
      k1 += kW1;
    }
    return c;
  }

  std::uint64_t next() noexcept {
    if (pos_ == 4) {
      buf_ = block(ctr_, key_);
      ++ctr_[0];  // block index; 2^64 blocks per domain is plenty
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~0ULL; }
  std::uint64_t operator()() noexcept { return next(); }

 private:
  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> ctr_;
  std::array<std::uint64_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace rcilab
