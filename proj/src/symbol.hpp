#pragma once

#include <set>
#include <string>
#include <vector>

#include "squareclass.hpp"

namespace irratio {

// Formal mod-2 cohomology symbols over the function field of P^n: GF(2)
// sums of tuples (a_1, ..., a_i) of square classes.  The stored normal
// form removes tuples containing the trivial class or a repeated class,
// sorts each tuple, and cancels duplicate tuples mod 2.  That normal form
// is sound for zero detection but not complete: a symbol that normalizes
// to 0 is the zero class, while a nonzero normal form on its own proves
// nothing.  Nonvanishing is certified separately via residue chains.
class Symbol {
 public:
  using Term = std::vector<SquareClass>;

  Symbol() = default;  // the zero 0-symbol over P^0

  static Symbol zero(int n, int degree);
  // The nonzero 0-symbol (the unit of H^0 = Z/2).
  static Symbol one(int n);
  // Single tuple from entries; normalizes (may come out zero).
  static Symbol make(int n, const std::vector<SquareClass>& entries);

  int n() const { return n_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::set<Term>& terms() const { return terms_; }

  // GF(2) sum; degrees and ambient dimensions must agree.
  Symbol operator+(const Symbol& other) const;
  bool operator==(const Symbol& other) const = default;

  // Cup product: tuple-wise concatenation, bilinear over GF(2).
  Symbol cup(const Symbol& other) const;

  // Residue along the divisor {x_i = 0} (1 <= i <= n), landing on the
  // divisor identified with P^{n-1}.  Uniformizer convention: the chart
  // x_0 = 1 fixes pi = x_i/x_0.  For a tuple with entries pi*a_1, ...,
  // pi*a_m, u_1, ..., u_k (a_j, u_l units along the divisor) the residue
  // is (sum_j (a_1bar, ..., a_jbar omitted, ..., a_mbar)) cup
  // (u_1bar, ..., u_kbar); the sum is the unit 0-symbol when m = 1 and
  // zero when m = 0.
  Symbol residue(int i, BReduction mode = BReduction::BecomesSquare) const;

  // "0", "1", "(x0*x1)", "(x0*x1, x0*x2) + (x1*x2)"
  std::string to_string() const;

 private:
  Symbol(int n, int degree) : n_(n), degree_(degree) {}
  void insert_term_mod2(Term term);

  int n_ = 0;
  int degree_ = 0;
  std::set<Term> terms_;
};

// The distinguished n-symbol (a_1, ..., a_n) with a_i = -x_i/x_0; signs
// carry no information here, so entry i is stored as the class of x_i/x_0.
Symbol alpha_symbol(int n);

// Transcript of a residue chain used to certify a symbol nonzero.
struct ResidueCertificate {
  enum class Verdict { Nonzero, Inconclusive };

  int n = 0;
  Symbol start;
  std::vector<int> divisors;  // coordinate labels, applied in order
  std::vector<Symbol> steps;  // symbol after each residue
  Verdict verdict = Verdict::Inconclusive;

  const Symbol& final_symbol() const { return steps.empty() ? start : steps.back(); }
  std::string to_string() const;
};

// Runs the residue chain along x_n, x_{n-1}, ..., x_2 starting from the
// distinguished n-symbol.  Verdict Nonzero iff the final symbol is a
// single nontrivial 1-symbol with odd valuation along some remaining
// coordinate divisor: such a 1-symbol is the class of a non-square, hence
// nonzero, and a symbol with a nonzero residue is itself nonzero, so
// nonvanishing propagates back up the chain.
ResidueCertificate certify_alpha_nonzero(int n);

}  // namespace irratio
