#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dseries {

/// One index of the arithmetic stream: n together with mu(n), omega(n) and log n.
struct ArithmeticTerm {
  std::uint64_t n = 1;
  int mu = 1;
  unsigned omega = 0;
  double log_n = 0.0;
};

/// Sieved data for the half-open range [lo, lo + size()).
///
/// Besides mu and omega the segment keeps the Dirichlet square of mu,
/// (mu*mu)(n), and for prime powers n = p^a the prime p, so that the
/// von Mangoldt function can be synthesized without another pass.
struct SieveSegment {
  std::uint64_t lo = 1;
  std::vector<std::int8_t> mu;
  std::vector<std::uint8_t> omega;
  std::vector<std::int32_t> mu_conv;
  std::vector<std::uint64_t> prime_base;  // p when n = p^a, else 0
  std::vector<std::uint64_t> smooth;      // scratch: part of n built from base primes

  std::size_t size() const noexcept { return mu.size(); }
  std::uint64_t hi() const noexcept { return lo + size(); }

  /// Lambda(n) for n = lo + i.
  double von_mangoldt(std::size_t i) const;
  ArithmeticTerm term(std::size_t i) const;
  std::vector<ArithmeticTerm> terms() const;
};

/// Segmented sieve over [1, limit] with base primes up to sqrt(limit).
/// Segments are independent, so one instance can feed several threads as
/// long as each thread owns its SieveSegment.
class SegmentedSieve {
 public:
  explicit SegmentedSieve(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> base_primes() const noexcept { return primes_; }

  /// Fills `out` for [lo, hi). Requires 1 <= lo < hi <= limit + 1.
  void sieve(std::uint64_t lo, std::uint64_t hi, SieveSegment& out) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
};

/// Ordered stream of segments covering 1..limit.
class SegmentStream {
 public:
  SegmentStream(std::uint64_t limit, std::uint64_t segment_size);

  /// Sieves the next segment into `out`; false once the range is exhausted.
  bool next(SieveSegment& out);

 private:
  SegmentedSieve sieve_;
  std::uint64_t segment_size_;
  std::uint64_t next_lo_ = 1;
};

/// Visits each segment of 1..limit in ascending order.
void stream_segments(std::uint64_t limit, std::uint64_t segment_size,
                     const std::function<void(const SieveSegment&)>& visit);

struct SieveOptions {
  std::size_t memory_cap_bytes = std::size_t{4} << 30;
};

/// Full table of mu(n) and omega(n) for n = 1..limit. Immutable once built.
class SieveTable {
 public:
  std::uint64_t limit() const noexcept { return limit_; }

  int mu(std::uint64_t n) const { return mu_[n]; }
  unsigned omega(std::uint64_t n) const { return omega_[n]; }

  /// Values for n = 1..limit (index 0 holds n = 1).
  std::span<const std::int8_t> mu_values() const noexcept { return {mu_.data() + 1, limit_}; }
  std::span<const std::uint8_t> omega_values() const noexcept { return {omega_.data() + 1, limit_}; }

 private:
  friend SieveTable build_sieve(std::uint64_t, const SieveOptions&);
  std::uint64_t limit_ = 0;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint8_t> omega_;
};

SieveTable build_sieve(std::uint64_t limit, const SieveOptions& options = {});

ArithmeticTerm lookup_term(const SieveTable& table, std::uint64_t n);

/// Primes up to `bound` by the plain sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

}  // namespace dseries
