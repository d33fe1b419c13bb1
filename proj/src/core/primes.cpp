#include "primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace omegalab {

void SieveSegment::extract(std::vector<uint64_t> &out) const {
  if (lo <= 2 && 2 < hi) out.push_back(2);
  for (uint64_t i = 0; i < odd_count; ++i) {
    if (!flagged(i)) out.push_back(first_odd + 2 * i);
  }
}

std::vector<uint64_t> simple_sieve(uint64_t limit) {
  std::vector<uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<uint8_t> is_comp(limit + 1, 0);
  for (uint64_t i = 2; i * i <= limit; ++i) {
    if (!is_comp[i]) {
      for (uint64_t j = i * i; j <= limit; j += i) is_comp[j] = 1;
    }
  }
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!is_comp[i]) primes.push_back(i);
  }
  return primes;
}

namespace {

uint64_t isqrt_u64(uint64_t n) {
  if (n == 0) return 0;
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

SieveSegment sieve_segment_impl(uint64_t lo, uint64_t hi,
                                std::span<const uint64_t> base) {
  SieveSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  seg.first_odd = (lo % 2 == 0) ? lo + 1 : lo;
  seg.odd_count = seg.first_odd < hi ? (hi - seg.first_odd + 1) / 2 : 0;
  seg.flags.assign((seg.odd_count + 63) / 64, 0);
  for (uint64_t p : base) {
    if (p == 2) continue;
    if (p * p >= hi) break;
    uint64_t start = p * p;
    if (start < lo) {
      start = ((lo + p - 1) / p) * p;
      if (start % 2 == 0) start += p;
    }
    for (uint64_t m = start; m < hi; m += 2 * p) {
      uint64_t idx = (m - seg.first_odd) / 2;
      seg.flags[idx >> 6] |= 1ull << (idx & 63);
    }
  }
  return seg;
}

} // namespace

SieveSegment sieve_segment(uint64_t lo, uint64_t hi,
                           std::span<const uint64_t> base_primes) {
  if (lo < 2) throw_domain("sieve_segment: lo must be >= 2");
  if (lo >= hi) throw_domain("sieve_segment: need lo < hi");
  if (hi > (kHardCap << 1)) throw_domain("sieve_segment: range exceeds index cap");
  const uint64_t need = isqrt_u64(hi - 1);
  // base_primes must be exactly the primes up to some bound >= sqrt(hi-1)
  uint64_t prev = 1;
  for (uint64_t p : base_primes) {
    if (p <= prev) throw_domain("sieve_segment: base_primes not strictly increasing");
    prev = p;
  }
  std::vector<uint64_t> expected = simple_sieve(need);
  if (base_primes.size() < expected.size() ||
      !std::equal(expected.begin(), expected.end(), base_primes.begin())) {
    throw_domain("sieve_segment: base_primes incomplete up to sqrt(hi)");
  }
  return sieve_segment_impl(lo, hi, base_primes);
}

uint64_t fnv1a64(const void *data, size_t n, uint64_t seed) {
  const auto *p = static_cast<const unsigned char *>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

PrimePipeline::PrimePipeline(SieveConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.x_max_cap > kHardCap) {
    throw_domain("x_max_cap exceeds the 2^40 hard cap");
  }
  if (cfg_.segment_odds < 64) throw_domain("segment size too small");
}

uint64_t PrimePipeline::isqrt(uint64_t n) { return isqrt_u64(n); }

uint64_t PrimePipeline::config_digest() const {
  struct {
    uint32_t version;
    uint64_t segment_odds;
  } blob{1u, cfg_.segment_odds};
  return fnv1a64(&blob, sizeof blob);
}

std::string PrimePipeline::cache_file_path() const {
  std::string dir;
  if (cfg_.cache_dir.has_value()) {
    dir = *cfg_.cache_dir;
  } else if (const char *env = std::getenv("OMEGALAB_CACHE_DIR")) {
    dir = env;
  } else if (const char *home = std::getenv("HOME")) {
    dir = std::string(home) + "/.cache/omegalab";
  }
  if (dir.empty()) return "";
  return dir + "/pi_checkpoints.bin";
}

void PrimePipeline::check_range(uint64_t x) const {
  if (x < 2) throw_domain("x must be >= 2");
  if (x > cfg_.x_max_cap) {
    throw_domain("x exceeds the configured sieve cap (" +
                 std::to_string(cfg_.x_max_cap) + ")");
  }
}

void PrimePipeline::ensure_base(uint64_t limit) {
  limit = std::max<uint64_t>(limit, 16);
  if (limit > base_limit_) {
    base_ = simple_sieve(limit);
    base_limit_ = limit;
  }
}

uint64_t PrimePipeline::segment_count(uint64_t x_max) const {
  return x_max / segment_span() + 1;
}

SieveSegment PrimePipeline::make_grid_segment(uint64_t k, uint64_t x_max) const {
  const uint64_t span = segment_span();
  const uint64_t lo = std::max<uint64_t>(2, k * span);
  const uint64_t hi = std::min((k + 1) * span, x_max + 1);
  return sieve_segment_impl(lo, hi, base_);
}

SieveSegment PrimePipeline::make_segment(uint64_t lo, uint64_t hi) const {
  return sieve_segment_impl(lo, hi, base_);
}

void PrimePipeline::maybe_record(uint64_t x, uint64_t pi_x) {
  auto [it, inserted] = ckpts_.try_emplace(x, pi_x);
  if (inserted) {
    cache_dirty_ = true;
  } else if (it->second != pi_x) {
    throw_io("checkpoint mismatch at x=" + std::to_string(x) +
             " (stale cache?)");
  }
}

void PrimePipeline::record_checkpoints(uint64_t pi_before,
                                       const SieveSegment &seg,
                                       std::span<const uint64_t> primes) {
  uint64_t b = ((seg.lo + kCheckpointStride - 1) / kCheckpointStride) *
               kCheckpointStride;
  if (b == 0) b = kCheckpointStride;
  size_t idx = 0;
  uint64_t count = pi_before;
  for (; b < seg.hi; b += kCheckpointStride) {
    while (idx < primes.size() && primes[idx] <= b) {
      ++count;
      ++idx;
    }
    maybe_record(b, count);
  }
}

uint64_t PrimePipeline::stream_primes(uint64_t x_max,
                                      const std::function<void(uint64_t)> &visit) {
  load_cache();
  uint64_t count = 0;
  std::vector<uint64_t> buf;
  for_each_segment<std::vector<uint64_t>>(
      x_max,
      [](const SieveSegment &seg) {
        std::vector<uint64_t> primes;
        primes.reserve(seg.odd_count / 8 + 8);
        seg.extract(primes);
        return primes;
      },
      [&](uint64_t k, std::vector<uint64_t> &&primes) {
        SieveSegment bounds; // only lo/hi used for checkpoint recording
        bounds.lo = std::max<uint64_t>(2, k * segment_span());
        bounds.hi = std::min((k + 1) * segment_span(), x_max + 1);
        record_checkpoints(count, bounds, primes);
        for (uint64_t p : primes) {
          visit(p);
        }
        count += primes.size();
      });
  flush_cache();
  return count;
}

uint64_t PrimePipeline::count_range(uint64_t lo, uint64_t hi_incl,
                                    uint64_t pi_before) {
  ensure_base(isqrt(hi_incl));
  uint64_t count = pi_before;
  const uint64_t span = segment_span();
  std::vector<uint64_t> primes;
  for (uint64_t a = lo; a <= hi_incl; a += span) {
    const uint64_t b = std::min(a + span, hi_incl + 1);
    SieveSegment seg = make_segment(a, b);
    primes.clear();
    seg.extract(primes);
    record_checkpoints(count, seg, primes);
    count += primes.size();
  }
  return count;
}

uint64_t PrimePipeline::pi(uint64_t x) {
  check_range(x);
  load_cache();
  last_resume_ = {0, 0};
  // resume from the nearest checkpoint at or below x
  auto it = ckpts_.upper_bound(x);
  uint64_t start = 2, seed = 0;
  if (it != ckpts_.begin()) {
    --it;
    start = it->first + 1;
    seed = it->second;
    last_resume_ = {it->first, it->second};
    if (it->first == x) return it->second;
  }
  uint64_t count = count_range(start, x, seed);
  flush_cache();
  return count;
}

std::vector<PiCheckpoint> PrimePipeline::checkpoints() const {
  std::vector<PiCheckpoint> rows;
  rows.reserve(ckpts_.size());
  const uint64_t digest = config_digest();
  for (auto &[x, pi_x] : ckpts_) rows.push_back({x, pi_x, digest});
  return rows;
}

void PrimePipeline::load_cache() {
  if (cache_loaded_) return;
  cache_loaded_ = true;
  const std::string path = cache_file_path();
  if (path.empty() || !std::filesystem::exists(path)) return;
  uint64_t seg = 0;
  std::vector<PiCheckpoint> rows = read_checkpoint_file(path, &seg);
  const uint64_t digest = config_digest();
  for (const PiCheckpoint &row : rows) {
    if (row.digest != digest) continue; // other sieve configuration
    ckpts_.try_emplace(row.x, row.pi_x);
  }
}

void PrimePipeline::flush_cache() {
  if (!cache_dirty_) return;
  const std::string path = cache_file_path();
  if (path.empty()) return;
  std::filesystem::path dir = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!dir.empty()) std::filesystem::create_directories(dir, ec);
  try {
    write_checkpoint_file(path, cfg_.segment_odds, checkpoints());
  } catch (const Error &) {
    // persistence is best effort; results are already in memory
  }
  cache_dirty_ = false;
}

namespace {

void put_u32(std::string &out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string &out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
uint64_t get_u64(const unsigned char *p) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
  return v;
}
uint32_t get_u32(const unsigned char *p) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(p[i]) << (8 * i);
  return v;
}

} // namespace

void write_checkpoint_file(const std::string &path, uint64_t segment_size,
                           const std::vector<PiCheckpoint> &rows) {
  std::string payload;
  payload.reserve(16 + rows.size() * 16 + 8);
  payload += "OMGL";
  put_u32(payload, 1u);
  put_u64(payload, segment_size);
  for (const PiCheckpoint &row : rows) {
    put_u64(payload, row.x);
    put_u64(payload, row.pi_x);
  }
  put_u64(payload, fnv1a64(payload.data(), payload.size()));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_io("cannot open checkpoint file for writing: " + path);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw_io("short write to checkpoint file: " + path);
}

std::vector<PiCheckpoint> read_checkpoint_file(const std::string &path,
                                               uint64_t *segment_size_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open checkpoint file: " + path);
  std::string raw((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (raw.size() < 24 || (raw.size() - 24) % 16 != 0) {
    throw_io("checkpoint file truncated: " + path);
  }
  const auto *p = reinterpret_cast<const unsigned char *>(raw.data());
  if (std::memcmp(p, "OMGL", 4) != 0) throw_io("bad checkpoint magic: " + path);
  const uint32_t version = get_u32(p + 4);
  if (version != 1u) throw_io("unsupported checkpoint version");
  const uint64_t segment_size = get_u64(p + 8);
  const uint64_t stored_sum = get_u64(p + raw.size() - 8);
  if (fnv1a64(raw.data(), raw.size() - 8) != stored_sum) {
    throw_io("checkpoint checksum mismatch: " + path);
  }
  if (segment_size_out) *segment_size_out = segment_size;
  struct {
    uint32_t version;
    uint64_t segment_odds;
  } blob{version, segment_size};
  const uint64_t digest = fnv1a64(&blob, sizeof blob);
  std::vector<PiCheckpoint> rows;
  for (size_t off = 16; off + 16 <= raw.size() - 8; off += 16) {
    rows.push_back({get_u64(p + off), get_u64(p + off + 8), digest});
  }
  return rows;
}

} // namespace omegalab
