#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace irratio {

// How the distinguished class b behaves under restriction to a coordinate
// hyperplane.  Restriction of b is only defined when the form g behind it
// restricts to a square (the square-mod-coordinates condition); the caller
// attests to that when reducing.
enum class BReduction {
  BecomesSquare,  // g mod x_i is a square: b_flag clears on reduction
  Undefined,      // no such guarantee: reducing a b-flagged class is an error
};

// An element of K*/(K*)^2 for K the rational function field of P^n,
// restricted to the multiplicative span of the coordinate ratios plus two
// formal generators: b (an even-degree form over x_0^deg) and the scalar t.
// The base field is assumed to contain a square root of -1, so signs are
// quotiented away.  Stored data: one GF(2) exponent per coordinate
// x_0..x_n plus the two flags.
class SquareClass {
 public:
  static constexpr int kMaxN = 60;

  // The trivial class (the class of squares) over P^n.
  static SquareClass trivial(int n);
  // Class of x_i/x_j (i != j).
  static SquareClass coordinate_ratio(int i, int j, int n);
  // The formal generator b.
  static SquareClass b_class(int n);
  // The formal scalar t.
  static SquareClass t_class(int n);
  // Class of a monomial given arbitrary integer exponents (reduced mod 2).
  static SquareClass from_monomial(int n, const std::vector<long long>& exps);

  int n() const { return n_; }
  bool exp(int i) const;        // GF(2) exponent of x_i, 0 <= i <= n
  bool b_flag() const { return b_; }
  bool t_flag() const { return t_; }
  bool is_trivial() const { return exps_ == 0 && !b_ && !t_; }
  // Sum of coordinate exponents mod 2 (0 for classes of degree-0 functions).
  bool odd_weight() const;

  // Group law of K*/(K*)^2: exponents add mod 2.
  SquareClass operator*(const SquareClass& other) const;
  bool operator==(const SquareClass& other) const = default;
  // Canonical total order: lexicographic on (exps, b_flag, t_flag).
  std::strong_ordering operator<=>(const SquareClass& other) const;

  // Parity of the valuation along the divisor {x_i = 0}, 1 <= i <= n.
  bool valuation_parity(int i) const;

  // Restriction to {x_i = 0} followed by the identification of the divisor
  // with P^{n-1} (coordinate i deleted, higher indices shift down).
  // Requires even valuation along the divisor.
  SquareClass reduce_along(int i, BReduction mode = BReduction::BecomesSquare) const;

  // "1", "x0*x1", "x1*x2*b", "t", ...
  std::string to_string() const;
  static SquareClass parse(int n, const std::string& text);

 private:
  SquareClass(int n, std::uint64_t exps, bool b, bool t);

  int n_ = 0;
  std::uint64_t exps_ = 0;  // bit i = exponent of x_i mod 2
  bool b_ = false;
  bool t_ = false;
};

}  // namespace irratio
