#ifndef OMEGALAB_CORE_PRIMES_HPP
#define OMEGALAB_CORE_PRIMES_HPP

// Segmented sieve of Eratosthenes with odd-only bit flags, streaming
// visitation, deterministic parallel segment processing and on-disk
// pi(x) checkpoints.

#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace omegalab {

inline constexpr uint64_t kHardCap = 1ull << 40;
inline constexpr uint64_t kCheckpointStride = 10'000'000;

struct SieveConfig {
  uint64_t segment_odds = 1ull << 18; // odd entries per segment (cache resident)
  uint64_t x_max_cap = kHardCap;
  int threads = 1;
  // Checkpoint persistence: explicit dir > OMEGALAB_CACHE_DIR > $HOME/.cache/omegalab.
  // Empty override disables persistence.
  std::optional<std::string> cache_dir;
};

struct SieveSegment {
  uint64_t lo = 0;        // inclusive, >= 2
  uint64_t hi = 0;        // exclusive
  uint64_t first_odd = 0; // smallest odd >= lo within the segment
  uint64_t odd_count = 0;
  std::vector<uint64_t> flags; // bit set = composite

  bool flagged(uint64_t idx) const {
    return (flags[idx >> 6] >> (idx & 63)) & 1u;
  }
  // Appends the primes of the segment in increasing order.
  void extract(std::vector<uint64_t> &out) const;
};

// Primes <= limit by a plain sieve (base primes for the segmented passes).
std::vector<uint64_t> simple_sieve(uint64_t limit);

// Segment sieve with full precondition checks: 2 <= lo < hi and base_primes
// must contain exactly the primes needed up to sqrt(hi-1).
SieveSegment sieve_segment(uint64_t lo, uint64_t hi,
                           std::span<const uint64_t> base_primes);

struct PiCheckpoint {
  uint64_t x = 0;
  uint64_t pi_x = 0;
  uint64_t digest = 0; // checksum of the sieve configuration
};

uint64_t fnv1a64(const void *data, size_t n, uint64_t seed = 1469598103934665603ull);

class PrimePipeline {
public:
  explicit PrimePipeline(SieveConfig cfg = {});

  const SieveConfig &config() const { return cfg_; }
  void set_threads(int threads) { cfg_.threads = threads; }
  uint64_t config_digest() const;
  std::string cache_file_path() const; // "" when persistence is off

  // Exact count of primes <= x; resumes from the nearest stored checkpoint.
  uint64_t pi(uint64_t x);

  // Visits every prime <= x_max exactly once in increasing order; returns
  // pi(x_max).  Always starts from 2.
  uint64_t stream_primes(uint64_t x_max,
                         const std::function<void(uint64_t)> &visit);

  // Deterministic parallel map over the fixed segment grid covering
  // [2, x_max].  map runs on workers (any order); reduce is called once per
  // segment in ascending index order, so downstream compensated sums do not
  // depend on the thread count.
  template <typename Partial, typename MapFn, typename ReduceFn>
  void for_each_segment(uint64_t x_max, MapFn &&map, ReduceFn &&reduce) {
    check_range(x_max);
    ensure_base(isqrt(x_max));
    const uint64_t n_seg = segment_count(x_max);
    const int threads = std::max(1, cfg_.threads);
    if (threads == 1) {
      for (uint64_t k = 0; k < n_seg; ++k) {
        reduce(k, map(make_grid_segment(k, x_max)));
      }
      return;
    }
    const uint64_t batch = static_cast<uint64_t>(threads);
    std::vector<std::future<Partial>> futs(batch);
    for (uint64_t k0 = 0; k0 < n_seg; k0 += batch) {
      const uint64_t kn = std::min(batch, n_seg - k0);
      for (uint64_t i = 0; i < kn; ++i) {
        futs[i] = std::async(std::launch::async, [this, k0, i, x_max, &map] {
          return map(make_grid_segment(k0 + i, x_max));
        });
      }
      for (uint64_t i = 0; i < kn; ++i) {
        reduce(k0 + i, futs[i].get());
      }
    }
  }

  // Ordered checkpoints currently known (memory + cache file).
  std::vector<PiCheckpoint> checkpoints() const;
  // Checkpoint the last pi() call resumed from ({0,0} when none).
  std::pair<uint64_t, uint64_t> last_resume() const { return last_resume_; }

  void flush_cache(); // persist checkpoints (no-op when persistence is off)

private:
  void check_range(uint64_t x) const;
  void ensure_base(uint64_t limit);
  static uint64_t isqrt(uint64_t n);
  uint64_t segment_span() const { return 2 * cfg_.segment_odds; }
  uint64_t segment_count(uint64_t x_max) const;
  SieveSegment make_grid_segment(uint64_t k, uint64_t x_max) const;
  SieveSegment make_segment(uint64_t lo, uint64_t hi) const;
  uint64_t count_range(uint64_t lo, uint64_t hi_incl, uint64_t pi_before);
  void record_checkpoints(uint64_t pi_before, const SieveSegment &seg,
                          std::span<const uint64_t> primes);
  void load_cache();
  void maybe_record(uint64_t x, uint64_t pi_x);

  SieveConfig cfg_;
  std::vector<uint64_t> base_;
  uint64_t base_limit_ = 0;
  std::map<uint64_t, uint64_t> ckpts_; // x -> pi(x), x a multiple of the stride
  bool cache_loaded_ = false;
  bool cache_dirty_ = false;
  std::pair<uint64_t, uint64_t> last_resume_{0, 0};
};

// Checkpoint file helpers (binary, little endian: "OMGL", version u32,
// segment_size u64, (x,pi) u64 pairs, fnv1a64 trailer).
void write_checkpoint_file(const std::string &path, uint64_t segment_size,
                           const std::vector<PiCheckpoint> &rows);
std::vector<PiCheckpoint> read_checkpoint_file(const std::string &path,
                                               uint64_t *segment_size_out);

} // namespace omegalab

#endif
