#include "symbol.hpp"

#include <algorithm>
#include <stdexcept>

#include "util.hpp"

namespace irratio {

Symbol Symbol::zero(int n, int degree) {
  if (degree < 0) throw usage_error("symbol: degree >= 0 violated");
  return Symbol(n, degree);
}

Symbol Symbol::one(int n) {
  Symbol s(n, 0);
  s.terms_.insert(Term{});
  return s;
}

Symbol Symbol::make(int n, const std::vector<SquareClass>& entries) {
  Symbol s(n, static_cast<int>(entries.size()));
  for (const auto& e : entries)
    if (e.n() != n) throw usage_error("symbol: entry dimension mismatch");
  s.insert_term_mod2(entries);
  return s;
}

void Symbol::insert_term_mod2(Term term) {
  // (a, a) = 0 because (a, -a) = 0 and -1 is a square; tuples with a
  // trivial entry vanish outright.
  for (const auto& e : term)
    if (e.is_trivial()) return;
  std::sort(term.begin(), term.end());
  for (std::size_t i = 1; i < term.size(); ++i)
    if (term[i] == term[i - 1]) return;
  auto it = terms_.find(term);
  if (it != terms_.end())
    terms_.erase(it);
  else
    terms_.insert(std::move(term));
}

Symbol Symbol::operator+(const Symbol& other) const {
  if (n_ != other.n_) throw usage_error("symbol add: ambient dimensions differ");
  if (degree_ != other.degree_) throw usage_error("symbol add: degrees differ");
  Symbol out(*this);
  for (const auto& t : other.terms_) out.insert_term_mod2(t);
  return out;
}

Symbol Symbol::cup(const Symbol& other) const {
  if (n_ != other.n_) throw usage_error("symbol cup: ambient dimensions differ");
  Symbol out(n_, degree_ + other.degree_);
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      Term cat = a;
      cat.insert(cat.end(), b.begin(), b.end());
      out.insert_term_mod2(std::move(cat));
    }
  }
  return out;
}

Symbol Symbol::residue(int i, BReduction mode) const {
  if (i < 1 || i > n_) throw usage_error("residue: 1 <= i <= n violated");
  if (degree_ < 1) throw usage_error("residue: degree >= 1 violated");
  const SquareClass pi = SquareClass::coordinate_ratio(i, 0, n_);
  Symbol out(n_ - 1, degree_ - 1);
  for (const auto& term : terms_) {
    std::vector<SquareClass> unit_parts;   // a_j for entries pi * a_j
    std::vector<SquareClass> units;        // entries already units
    for (const auto& e : term) {
      if (e.valuation_parity(i))
        unit_parts.push_back((e * pi).reduce_along(i, mode));
      else
        units.push_back(e.reduce_along(i, mode));
    }
    if (unit_parts.empty()) continue;  // unramified tuple: residue zero
    for (std::size_t omit = 0; omit < unit_parts.size(); ++omit) {
      Term reduced;
      reduced.reserve(term.size() - 1);
      for (std::size_t j = 0; j < unit_parts.size(); ++j)
        if (j != omit) reduced.push_back(unit_parts[j]);
      reduced.insert(reduced.end(), units.begin(), units.end());
      out.insert_term_mod2(std::move(reduced));
    }
  }
  return out;
}

std::string Symbol::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& term : terms_) {
    if (!out.empty()) out += " + ";
    if (term.empty()) {
      out += "1";
      continue;
    }
    out += '(';
    for (std::size_t j = 0; j < term.size(); ++j) {
      if (j) out += ", ";
      out += term[j].to_string();
    }
    out += ')';
  }
  return out;
}

Symbol alpha_symbol(int n) {
  if (n < 1) throw usage_error("alpha symbol: n >= 1 violated");
  std::vector<SquareClass> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    entries.push_back(SquareClass::coordinate_ratio(i, 0, n));
  return Symbol::make(n, entries);
}

std::string ResidueCertificate::to_string() const {
  std::string out = "start (P^" + std::to_string(n) + "): " + start.to_string() + "\n";
  for (std::size_t k = 0; k < divisors.size(); ++k) {
    out += "residue along x" + std::to_string(divisors[k]) + ": " +
           steps[k].to_string() + "\n";
  }
  out += "verdict: ";
  out += (verdict == Verdict::Nonzero ? "NONZERO" : "INCONCLUSIVE");
  return out;
}

namespace {
ResidueCertificate::Verdict judge(const Symbol& s) {
  if (s.degree() != 1 || s.terms().size() != 1)
    return ResidueCertificate::Verdict::Inconclusive;
  const auto& cls = s.terms().begin()->front();
  for (int i = 1; i <= s.n(); ++i)
    if (cls.valuation_parity(i)) return ResidueCertificate::Verdict::Nonzero;
  return ResidueCertificate::Verdict::Inconclusive;
}
}  // namespace

ResidueCertificate certify_alpha_nonzero(int n) {
  if (n < 1) throw usage_error("certify: n >= 1 violated");
  ResidueCertificate cert;
  cert.n = n;
  cert.start = alpha_symbol(n);
  Symbol cur = cert.start;
  // Always peel the last coordinate, so surviving labels never shift.
  for (int m = n; m >= 2; --m) {
    cur = cur.residue(m);
    cert.divisors.push_back(m);
    cert.steps.push_back(cur);
  }
  cert.verdict = judge(cur);
  return cert;
}

}  // namespace irratio
