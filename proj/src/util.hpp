#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace irratio {

// Thrown when caller-supplied parameters violate a documented precondition.
// The message names the violated constraint; the C API maps this onto the
// usage error code (CLI exit 1).
class usage_error : public std::invalid_argument {
 public:
  explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when certificate input cannot be decoded (bad JSON, unparseable
// polynomial text, malformed rho table, ...).
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a file cannot be opened, read or replaced.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic 64-bit generator (splitmix64).  Oracle sampling must be
// bit-reproducible across platforms and standard libraries, so we do not
// use <random> distributions anywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (~0ULL / bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) acc = mulmod_u64(acc, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return acc;
}

// Modular inverse for 0 < a < m, gcd(a, m) = 1 (m need not be prime).
inline std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
  while (newr != 0) {
    const std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::domain_error("invmod: argument not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

inline bool is_odd_prime_u64(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t q = 3; q * q <= p; q += 2)
    if (p % q == 0) return false;
  return true;
}

}  // namespace irratio
