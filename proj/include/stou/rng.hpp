#pragma once

#include <cstdint>

namespace stou {

/// Identifies a reproducible random stream. Equal (master_seed, stream_id)
/// pairs yield identical sequences on every platform and thread schedule.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Counter-based generator: the i-th output is a bijective 64-bit mix of
/// base + i*gamma (splitmix64), with base derived from the stream key.
/// One Rng instance must not be shared between tasks; derive a distinct
/// stream_id per task instead.
class Rng {
 public:
  explicit Rng(RngStream stream);

  std::uint64_t next_u64();

  /// Uniform on (0, 1]; never returns 0 so log() is always safe.
  double next_uniform();

  /// Standard normal via Box-Muller; pairs are cached.
  double next_normal();

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace stou
