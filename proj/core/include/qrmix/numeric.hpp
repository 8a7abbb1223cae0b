#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

namespace qrmix {

namespace detail {
__extension__ using u128 = unsigned __int128;
}  // namespace detail

using Complex = std::complex<double>;

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

inline double compensated_mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return compensated_sum(xs) / static_cast<double>(xs.size());
}

/// Number of worker threads used by the parallel loops. Results never depend
/// on this value: every loop writes per-index terms that are reduced in index
/// order afterwards.
std::size_t worker_count();
void set_worker_count(std::size_t workers);

/// Evaluates `fn(i)` for i in [0, n) into a vector, splitting the index range
/// into contiguous chunks across worker threads.
template <typename T, typename Fn>
std::vector<T> parallel_terms(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(n / 64, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&out, &fn, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic random streams.
//
// Everything seeded in this library goes through splitmix64 so that streams
// are identical across standard-library implementations.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed for one trial: splitmix64 chained over the master seed, the FNV-1a
/// hashes of the group descriptor and experiment name, and the trial index.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view descriptor,
                                    std::string_view experiment, std::uint64_t trial) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ fnv1a64(descriptor));
  h = splitmix64(h ^ fnv1a64(experiment));
  h = splitmix64(h ^ trial);
  return h;
}

/// splitmix64 generator; satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), unbiased (Lemire's method with rejection).
  std::uint64_t below(std::uint64_t bound) {
    detail::u128 m = static_cast<detail::u128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<detail::u128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace qrmix
