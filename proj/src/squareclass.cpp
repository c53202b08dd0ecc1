#include "squareclass.hpp"

#include <bit>
#include <stdexcept>

#include "util.hpp"

namespace irratio {

namespace {
void check_n(int n) {
  if (n < 0 || n > SquareClass::kMaxN)
    throw usage_error("square class: 0 <= n <= 60 violated (n=" + std::to_string(n) + ")");
}
}  // namespace

SquareClass::SquareClass(int n, std::uint64_t exps, bool b, bool t)
    : n_(n), exps_(exps), b_(b), t_(t) {}

SquareClass SquareClass::trivial(int n) {
  check_n(n);
  return SquareClass(n, 0, false, false);
}

SquareClass SquareClass::coordinate_ratio(int i, int j, int n) {
  check_n(n);
  if (i < 0 || i > n || j < 0 || j > n)
    throw usage_error("coordinate_ratio: index out of range");
  if (i == j) throw usage_error("coordinate_ratio: i != j violated");
  return SquareClass(n, (1ULL << i) | (1ULL << j), false, false);
}

SquareClass SquareClass::b_class(int n) {
  check_n(n);
  return SquareClass(n, 0, true, false);
}

SquareClass SquareClass::t_class(int n) {
  check_n(n);
  return SquareClass(n, 0, false, true);
}

SquareClass SquareClass::from_monomial(int n, const std::vector<long long>& exps) {
  check_n(n);
  if (exps.size() != static_cast<std::size_t>(n + 1))
    throw usage_error("from_monomial: expected n+1 exponents");
  std::uint64_t bits = 0;
  for (int i = 0; i <= n; ++i)
    if (exps[static_cast<std::size_t>(i)] % 2 != 0) bits |= 1ULL << i;
  return SquareClass(n, bits, false, false);
}

bool SquareClass::exp(int i) const {
  if (i < 0 || i > n_) throw usage_error("exp: index out of range");
  return (exps_ >> i) & 1;
}

bool SquareClass::odd_weight() const {
  return std::popcount(exps_) % 2 != 0;
}

SquareClass SquareClass::operator*(const SquareClass& other) const {
  if (n_ != other.n_)
    throw usage_error("square class multiply: ambient dimensions differ");
  return SquareClass(n_, exps_ ^ other.exps_, b_ != other.b_, t_ != other.t_);
}

std::strong_ordering SquareClass::operator<=>(const SquareClass& other) const {
  if (auto c = n_ <=> other.n_; c != 0) return c;
  // lexicographic on the exponent sequence x_0, x_1, ...: bit-reverse order
  for (int i = 0; i <= n_; ++i) {
    const bool a = (exps_ >> i) & 1, b = (other.exps_ >> i) & 1;
    if (a != b) return a <=> b;
  }
  if (auto c = b_ <=> other.b_; c != 0) return c;
  return t_ <=> other.t_;
}

bool SquareClass::valuation_parity(int i) const {
  if (i < 1 || i > n_)
    throw usage_error("valuation_parity: 1 <= i <= n violated");
  return (exps_ >> i) & 1;
}

SquareClass SquareClass::reduce_along(int i, BReduction mode) const {
  if (i < 1 || i > n_)
    throw usage_error("reduce_along: 1 <= i <= n violated");
  if (valuation_parity(i))
    throw std::domain_error("reduce_along: odd valuation along the divisor");
  if (b_ && mode == BReduction::Undefined)
    throw std::domain_error(
        "reduce_along: b restricted along a divisor where g is not known to "
        "reduce to a square");
  const std::uint64_t low = exps_ & ((1ULL << i) - 1);
  const std::uint64_t high = (exps_ >> (i + 1)) << i;
  // b restricts to the class of a square (the attested condition), so the
  // flag clears; t is a unit scalar on every chart and survives.
  return SquareClass(n_ - 1, low | high, false, t_);
}

std::string SquareClass::to_string() const {
  std::string out;
  for (int i = 0; i <= n_; ++i) {
    if ((exps_ >> i) & 1) {
      if (!out.empty()) out += '*';
      out += 'x';
      out += std::to_string(i);
    }
  }
  if (b_) {
    if (!out.empty()) out += '*';
    out += 'b';
  }
  if (t_) {
    if (!out.empty()) out += '*';
    out += 't';
  }
  return out.empty() ? "1" : out;
}

SquareClass SquareClass::parse(int n, const std::string& text) {
  check_n(n);
  SquareClass out = trivial(n);
  if (text == "1") return out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('*', pos);
    if (end == std::string::npos) end = text.size();
    const std::string tok = text.substr(pos, end - pos);
    if (tok == "b") {
      out.b_ = !out.b_;
    } else if (tok == "t") {
      out.t_ = !out.t_;
    } else if (tok.size() >= 2 && tok[0] == 'x') {
      int idx = -1;
      try {
        idx = std::stoi(tok.substr(1));
      } catch (const std::exception&) {
        throw parse_error("square class: bad factor '" + tok + "'");
      }
      if (idx < 0 || idx > n)
        throw parse_error("square class: coordinate out of range in '" + tok + "'");
      out.exps_ ^= 1ULL << idx;
    } else {
      throw parse_error("square class: bad factor '" + tok + "'");
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace irratio
