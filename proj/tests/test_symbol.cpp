#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "squareclass.hpp"
#include "symbol.hpp"
#include "util.hpp"

using irratio::alpha_symbol;
using irratio::BReduction;
using irratio::certify_alpha_nonzero;
using irratio::ResidueCertificate;
using irratio::SplitMix64;
using irratio::SquareClass;
using irratio::Symbol;

namespace {

SquareClass random_unit_class(SplitMix64& rng, int n) {
  // even-weight coordinate part, no flags: a ratio of monomials of equal
  // degree, i.e. a function on P^n
  SquareClass c = SquareClass::trivial(n);
  for (int k = 0; k < 3; ++k) {
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
    if (i != j) c = c * SquareClass::coordinate_ratio(i, j, n);
  }
  return c;
}

Symbol random_symbol(SplitMix64& rng, int n, int degree, int terms) {
  Symbol s = Symbol::zero(n, degree);
  for (int t = 0; t < terms; ++t) {
    std::vector<SquareClass> entries;
    for (int j = 0; j < degree; ++j) entries.push_back(random_unit_class(rng, n));
    s = s + Symbol::make(n, entries);
  }
  return s;
}

}  // namespace

TEST_CASE("normal form drops trivial and repeated entries") {
  const int n = 3;
  const SquareClass a = SquareClass::coordinate_ratio(1, 0, n);
  const SquareClass b = SquareClass::coordinate_ratio(2, 0, n);

  // a tuple containing the class of squares is zero
  CHECK(Symbol::make(n, {a, SquareClass::trivial(n)}).is_zero());
  // a tuple with a repeated class is zero (it factors through a norm)
  CHECK(Symbol::make(n, {a, b, a}).is_zero());
  // entries are sorted, so the two orders give the same stored tuple
  CHECK(Symbol::make(n, {a, b}) == Symbol::make(n, {b, a}));
}

TEST_CASE("GF(2) addition cancels duplicate tuples") {
  const int n = 2;
  const SquareClass a = SquareClass::coordinate_ratio(1, 0, n);
  const SquareClass b = SquareClass::coordinate_ratio(2, 0, n);
  const Symbol s = Symbol::make(n, {a, b});
  CHECK((s + s).is_zero());
  CHECK((s + Symbol::zero(n, 2)) == s);

  const Symbol u = Symbol::make(n, {a, a * b});
  const Symbol sum = s + u;
  CHECK(sum.terms().size() == 2);
  CHECK(sum + s == u);
}

TEST_CASE("degree-0 symbols and the unit") {
  CHECK(Symbol::one(2).terms().size() == 1);
  CHECK(Symbol::one(2).to_string() == "1");
  CHECK(Symbol::zero(2, 0).is_zero());
  CHECK((Symbol::one(2) + Symbol::one(2)).is_zero());
}

TEST_CASE("cup product is bilinear concatenation") {
  const int n = 3;
  const SquareClass a = SquareClass::coordinate_ratio(1, 0, n);
  const SquareClass b = SquareClass::coordinate_ratio(2, 0, n);
  const SquareClass c = SquareClass::coordinate_ratio(3, 0, n);

  const Symbol sa = Symbol::make(n, {a});
  const Symbol sb = Symbol::make(n, {b});
  const Symbol sc = Symbol::make(n, {c});

  CHECK(sa.cup(sb) == Symbol::make(n, {a, b}));
  CHECK(sa.cup(sb).degree() == 2);
  // (a) cup (a) contains a repeat: zero
  CHECK(sa.cup(sa).is_zero());
  // bilinearity over GF(2)
  CHECK((sa + sb).cup(sc) == sa.cup(sc) + sb.cup(sc));
  // the unit is neutral
  CHECK(Symbol::one(n).cup(sa) == sa);
}

TEST_CASE("residue of a pure unit tuple vanishes") {
  const int n = 2;
  // both entries are units along {x_2 = 0}
  const Symbol s = Symbol::make(n, {SquareClass::coordinate_ratio(1, 0, n)});
  CHECK(s.residue(2).is_zero());
}

TEST_CASE("residue splits off the uniformizer") {
  const int n = 2;
  const SquareClass pi = SquareClass::coordinate_ratio(2, 0, n);  // x2/x0
  const SquareClass u = SquareClass::coordinate_ratio(1, 0, n);   // x1/x0

  // (pi, u): residue along x_2 = the reduction of u on P^1
  const Symbol s = Symbol::make(n, {pi, u});
  const Symbol r = s.residue(2);
  CHECK(r.n() == 1);
  CHECK(r.degree() == 1);
  CHECK(r == Symbol::make(1, {SquareClass::coordinate_ratio(1, 0, 1)}));

  // (pi): residue is the unit 0-symbol
  CHECK(Symbol::make(n, {pi}).residue(2) == Symbol::one(1));

  // (pi, pi*u) = two uniformizer entries pi*1 and pi*u.  Omitting the
  // first leaves (ubar); omitting the second leaves (1bar), which
  // normalizes away.  Net residue: the single tuple (ubar).
  const Symbol two = Symbol::make(n, {pi, pi * u});
  CHECK(two.residue(2) == Symbol::make(1, {u.reduce_along(2)}));
}

TEST_CASE("residue is additive") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const int deg = 1 + static_cast<int>(rng.below(3));
    const Symbol s = random_symbol(rng, n, deg, 2);
    const Symbol u = random_symbol(rng, n, deg, 2);
    const int i = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    CHECK((s + u).residue(i) == s.residue(i) + u.residue(i));
  }
}

TEST_CASE("alpha symbol lists the coordinate ratios") {
  const Symbol a2 = alpha_symbol(2);
  CHECK(a2.degree() == 2);
  CHECK(a2.terms().size() == 1);
  CHECK(a2.to_string() == "(x0*x2, x0*x1)");

  const Symbol a1 = alpha_symbol(1);
  CHECK(a1.to_string() == "(x0*x1)");
}

TEST_CASE("alpha residue chain certifies nonvanishing for n = 1..16") {
  for (int n = 1; n <= 16; ++n) {
    const ResidueCertificate rc = certify_alpha_nonzero(n);
    CHECK(rc.n == n);
    CHECK(rc.verdict == ResidueCertificate::Verdict::Nonzero);
    CHECK(rc.divisors.size() == static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    // chain runs x_n, x_{n-1}, ..., x_2
    for (std::size_t k = 0; k < rc.divisors.size(); ++k)
      CHECK(rc.divisors[k] == n - static_cast<int>(k));
    // each step drops the degree and the ambient dimension by one
    CHECK(rc.final_symbol().degree() == 1);
    CHECK(rc.final_symbol().n() == 1);
    CHECK(rc.final_symbol().to_string() == "(x0*x1)");
  }
}

TEST_CASE("frozen transcripts") {
  CHECK(certify_alpha_nonzero(2).to_string() ==
        "start (P^2): (x0*x2, x0*x1)\n"
        "residue along x2: (x0*x1)\n"
        "verdict: NONZERO");
  CHECK(certify_alpha_nonzero(4).to_string() ==
        "start (P^4): (x0*x4, x0*x3, x0*x2, x0*x1)\n"
        "residue along x4: (x0*x3, x0*x2, x0*x1)\n"
        "residue along x3: (x0*x2, x0*x1)\n"
        "residue along x2: (x0*x1)\n"
        "verdict: NONZERO");
  CHECK(certify_alpha_nonzero(1).to_string() ==
        "start (P^1): (x0*x1)\n"
        "verdict: NONZERO");
}

TEST_CASE("residue chains commute with addition down the alpha chain") {
  // sanity for the certification logic: the residue of alpha along x_n is
  // exactly alpha of the divisor P^{n-1}
  for (int n = 2; n <= 8; ++n) {
    const Symbol a = alpha_symbol(n);
    CHECK(a.residue(n) == alpha_symbol(n - 1));
  }
}

TEST_CASE("mismatched dimensions and degrees are rejected") {
  CHECK_THROWS_AS(Symbol::zero(2, 1) + Symbol::zero(3, 1), irratio::usage_error);
  CHECK_THROWS_AS(Symbol::zero(2, 1) + Symbol::zero(2, 2), irratio::usage_error);
  CHECK_THROWS_AS(alpha_symbol(0), irratio::usage_error);
  CHECK_THROWS_AS(Symbol::zero(2, 1).residue(0), irratio::usage_error);
  CHECK_THROWS_AS(Symbol::zero(2, 1).residue(3), irratio::usage_error);
}
