#include "dseries/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dseries/error.hpp"

namespace dseries {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

constexpr std::uint64_t kDefaultSegment = std::uint64_t{1} << 18;

}  // namespace

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
  std::vector<std::uint32_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= bound; m += p) composite[m] = true;
  }
  return primes;
}

double SieveSegment::von_mangoldt(std::size_t i) const {
  const std::uint64_t p = prime_base[i];
  return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

ArithmeticTerm SieveSegment::term(std::size_t i) const {
  const std::uint64_t n = lo + i;
  return {n, mu[i], omega[i], std::log(static_cast<double>(n))};
}

std::vector<ArithmeticTerm> SieveSegment::terms() const {
  std::vector<ArithmeticTerm> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(term(i));
  return out;
}

SegmentedSieve::SegmentedSieve(std::uint64_t limit) : limit_(limit) {
  require(limit >= 1, ErrorKind::InvalidArgument, "sieve limit must be >= 1");
  require(limit < (std::uint64_t{1} << 62), ErrorKind::UnsupportedRange, "sieve limit too large");
  primes_ = primes_up_to(static_cast<std::uint32_t>(isqrt(limit)));
}

void SegmentedSieve::sieve(std::uint64_t lo, std::uint64_t hi, SieveSegment& out) const {
  require(lo >= 1 && lo < hi && hi <= limit_ + 1, ErrorKind::InvalidArgument,
          "segment [" + std::to_string(lo) + ", " + std::to_string(hi) + ") outside 1.." +
              std::to_string(limit_));
  const std::size_t len = hi - lo;
  out.lo = lo;
  out.mu.assign(len, 1);
  out.omega.assign(len, 0);
  out.mu_conv.assign(len, 1);
  out.prime_base.assign(len, 0);
  out.smooth.assign(len, 1);

  auto* mu = out.mu.data();
  auto* omega = out.omega.data();
  auto* conv = out.mu_conv.data();
  auto* base = out.prime_base.data();
  auto* smooth = out.smooth.data();

  for (const std::uint32_t p32 : primes_) {
    const std::uint64_t p = p32;
    if (p >= hi) break;
    std::uint64_t first = ((lo + p - 1) / p) * p;
    for (std::uint64_t m = first; m < hi; m += p) {
      const std::size_t i = m - lo;
      mu[i] = static_cast<std::int8_t>(-mu[i]);
      ++omega[i];
      conv[i] *= -2;
      base[i] = p;
      smooth[i] *= p;
    }
    // Higher powers: p^2 kills mu and turns the (mu*mu) local factor -2 into 1;
    // p^3 and beyond make (mu*mu) vanish.
    std::uint64_t pk = p * p;
    int power = 2;
    while (pk < hi) {
      first = ((lo + pk - 1) / pk) * pk;
      for (std::uint64_t m = first; m < hi; m += pk) {
        const std::size_t i = m - lo;
        smooth[i] *= p;
        if (power == 2) {
          mu[i] = 0;
          conv[i] /= -2;
        } else if (power == 3) {
          conv[i] = 0;
        }
      }
      if (pk > (hi - 1) / p) break;
      pk *= p;
      ++power;
    }
  }

  for (std::size_t i = 0; i < len; ++i) {
    const std::uint64_t n = lo + i;
    if (smooth[i] != n) {
      // Exactly one prime factor above sqrt(limit) remains.
      mu[i] = static_cast<std::int8_t>(-mu[i]);
      ++omega[i];
      conv[i] *= -2;
      base[i] = n / smooth[i];
    }
    if (omega[i] != 1) base[i] = 0;
  }
}

SegmentStream::SegmentStream(std::uint64_t limit, std::uint64_t segment_size)
    : sieve_(limit), segment_size_(segment_size) {
  require(segment_size >= 2, ErrorKind::InvalidArgument, "segment_size must be >= 2");
}

bool SegmentStream::next(SieveSegment& out) {
  if (next_lo_ > sieve_.limit()) return false;
  const std::uint64_t hi = std::min(sieve_.limit() + 1, next_lo_ + segment_size_);
  sieve_.sieve(next_lo_, hi, out);
  next_lo_ = hi;
  return true;
}

void stream_segments(std::uint64_t limit, std::uint64_t segment_size,
                     const std::function<void(const SieveSegment&)>& visit) {
  SegmentStream stream(limit, segment_size);
  SieveSegment segment;
  while (stream.next(segment)) visit(segment);
}

SieveTable build_sieve(std::uint64_t limit, const SieveOptions& options) {
  require(limit >= 1, ErrorKind::InvalidArgument, "sieve limit must be >= 1");
  const double bytes = 2.0 * (static_cast<double>(limit) + 1.0);
  require(bytes <= static_cast<double>(options.memory_cap_bytes), ErrorKind::ResourceLimit,
          "sieve table for limit " + std::to_string(limit) + " exceeds memory cap of " +
              std::to_string(options.memory_cap_bytes) + " bytes");
  SieveTable table;
  table.limit_ = limit;
  table.mu_.assign(limit + 1, 0);
  table.omega_.assign(limit + 1, 0);
  stream_segments(limit, std::min<std::uint64_t>(limit, kDefaultSegment) + 1,
                  [&](const SieveSegment& seg) {
                    std::copy(seg.mu.begin(), seg.mu.end(), table.mu_.begin() + seg.lo);
                    std::copy(seg.omega.begin(), seg.omega.end(), table.omega_.begin() + seg.lo);
                  });
  return table;
}

ArithmeticTerm lookup_term(const SieveTable& table, std::uint64_t n) {
  require(n >= 1 && n <= table.limit(), ErrorKind::InvalidArgument,
          "n = " + std::to_string(n) + " outside 1.." + std::to_string(table.limit()));
  return {n, table.mu(n), table.omega(n), std::log(static_cast<double>(n))};
}

}  // namespace dseries
