#include "witness.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "util.hpp"

namespace irratio {

namespace {

using nlohmann::ordered_json;

constexpr char kSchema[] = "irratio-cert/1";
constexpr char kRhoFill[] = "graded-lex";

std::uint32_t full_mask(int n) { return (1u << n) - 1; }

int g_degree_for(int n) { return 2 * ((n + 2) / 2); }

int expected_entries(const WitnessParams& p) {
  return static_cast<int>(p.r) + (p.construction == Construction::DoubleCover ? 1 : 2);
}

// Exponent vector over x_0..x_n for the subset monomial of a mask
// (mask bit i-1 <-> x_i).
Monomial mask_exponents(int n, std::uint32_t mask) {
  Monomial m(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i)
    m[static_cast<std::size_t>(i)] = (mask >> (i - 1)) & 1u;
  return m;
}

// x-monomial (given by exponents over x_0..x_n, plus an extra power of
// x_0) inside the full certificate ring.
Poly x_monomial(const Field& f, const VarSpace& s, const Monomial& xexps,
                std::uint32_t extra_x0) {
  Monomial m(static_cast<std::size_t>(s.vars()), 0);
  for (std::size_t i = 0; i < xexps.size(); ++i) m[i] = xexps[i];
  m[0] += extra_x0;
  return Poly::monomial(f, s, m, 1);
}

// Class of (monomial * x_0^extra) as a square class over P^n.
SquareClass monomial_class(int n, const Monomial& xexps, long long extra_x0) {
  std::vector<long long> e(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < e.size() && i < xexps.size(); ++i) e[i] = xexps[i];
  e[0] += extra_x0;
  return SquareClass::from_monomial(n, e);
}

// Class of a one-term polynomial in x variables only, times x_0^norm;
// nullopt if the entry is not such a monomial (constants are units of the
// base field and carry no class: the base field is taken algebraically
// closed, like the coefficient conventions in SquareClass).
std::optional<SquareClass> entry_class(const Poly& e, int n, long long norm) {
  if (e.term_count() != 1) return std::nullopt;
  const Monomial& mono = e.terms().begin()->first;
  for (std::size_t v = static_cast<std::size_t>(n) + 1; v < mono.size(); ++v)
    if (mono[v] != 0) return std::nullopt;
  Monomial xpart(mono.begin(), mono.begin() + n + 1);
  return monomial_class(n, xpart, norm);
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------------- names

std::string construction_name(Construction c) {
  switch (c) {
    case Construction::Hypersurface: return "hypersurface";
    case Construction::DoubleCover: return "double-cover";
    case Construction::Conic: return "conic";
  }
  throw std::logic_error("unknown construction");
}

Construction construction_from_name(const std::string& name) {
  if (name == "hypersurface") return Construction::Hypersurface;
  if (name == "double-cover") return Construction::DoubleCover;
  if (name == "conic") return Construction::Conic;
  throw parse_error("unknown construction \"" + name + "\"");
}

std::string base_name(GVariant v) {
  switch (v) {
    case GVariant::Parametric: return "parametric";
    case GVariant::FiniteField: return "finite-field";
    case GVariant::Integral: return "integral";
  }
  throw std::logic_error("unknown base variant");
}

GVariant base_from_name(const std::string& name) {
  if (name == "parametric") return GVariant::Parametric;
  if (name == "finite-field") return GVariant::FiniteField;
  if (name == "integral") return GVariant::Integral;
  throw parse_error("unknown base variant \"" + name + "\"");
}

AlphaRecord alpha_record(const ResidueCertificate& rc) {
  AlphaRecord out;
  out.start = rc.start.to_string();
  out.divisors = rc.divisors;
  for (const Symbol& s : rc.steps) out.steps.push_back(s.to_string());
  out.verdict = rc.verdict == ResidueCertificate::Verdict::Nonzero
                    ? "nonzero"
                    : "inconclusive";
  return out;
}

// -------------------------------------------------------------- validation

void validate_params(const WitnessParams& p) {
  if (p.n < 2 || p.n > 16)
    throw usage_error("2 <= n <= 16 violated (n=" + std::to_string(p.n) + ")");
  const long long rmax = (1LL << p.n) - 2;
  if (p.r < 1) throw usage_error("r >= 1 violated (r=" + std::to_string(p.r) + ")");
  if (p.r > rmax)
    throw usage_error("r <= 2^n - 2 violated (r=" + std::to_string(p.r) +
                      ", bound " + std::to_string(rmax) + ")");
  if (p.d < p.n + 2)
    throw usage_error("d >= n + 2 violated (d=" + std::to_string(p.d) +
                      ", bound " + std::to_string(p.n + 2) + ")");
  if (p.construction == Construction::Conic && p.r != 1)
    throw usage_error("conic construction requires r = 1");
  if (p.construction == Construction::DoubleCover) {
    if (p.d % 2 != 0) throw usage_error("double cover requires even d");
    const int dmin = g_degree_for(p.n) + 2;
    if (p.d < dmin)
      throw usage_error("d >= deg g + 2 violated for double covers (d=" +
                        std::to_string(p.d) + ", bound " + std::to_string(dmin) + ")");
    // At n = 2 the full subset x1*x2 is both the cover pin and the only
    // subset avoiding the branch variables, so entry coprimality forces
    // the other two subsets x1, x2 to appear, i.e. r = 2.
    if (p.n == 2 && p.r != 2)
      throw usage_error("double cover at n = 2 requires r = 2");
  }
  switch (p.base) {
    case GVariant::Parametric:
      if (p.base_param != 0)
        throw usage_error("parametric base takes no base parameter");
      break;
    case GVariant::FiniteField:
      if (!is_odd_prime_u64(p.base_param) || p.base_param > 101)
        throw usage_error("finite-field base needs an odd prime p <= 101");
      if (p.r != rmax)
        throw usage_error("finite-field base requires r = 2^n - 2 (r=" +
                          std::to_string(p.r) + ", needed " + std::to_string(rmax) + ")");
      if (p.oracle_p != p.base_param)
        throw usage_error("finite-field base samples in its own field: oracle_p must equal the base prime");
      break;
    case GVariant::Integral:
      if (!is_odd_prime_u64(p.base_param) || p.base_param >= (1ULL << 31))
        throw usage_error("integral base needs an odd prime p0 < 2^31");
      break;
  }
  if (p.samples < 1 || p.samples > 1000000)
    throw usage_error("1 <= samples <= 10^6 violated");
  if (!is_odd_prime_u64(p.oracle_p) || p.oracle_p >= (1ULL << 31))
    throw usage_error("oracle prime must be an odd prime below 2^31");
}

// --------------------------------------------------------------------- rho

RhoMap choose_rho(int n, long long r, Construction construction) {
  if (n < 1 || n > 30) throw usage_error("choose_rho: 1 <= n <= 30 violated");
  const std::size_t size = 1ull << n;
  if (r < 1 || static_cast<std::size_t>(r) + 1 >= size)
    throw usage_error("choose_rho: 1 <= r <= 2^n - 2 violated");
  std::vector<std::uint32_t> table(size, 0);
  std::vector<bool> slot_used(size, false), mask_used(size, false);
  auto pin = [&](std::size_t slot, std::uint32_t mask) {
    if (slot_used[slot] || mask_used[mask])
      throw std::logic_error("choose_rho: pin clash");
    table[slot] = mask;
    slot_used[slot] = true;
    mask_used[mask] = true;
  };
  pin(0, 0);
  const std::uint32_t full = full_mask(n);
  switch (construction) {
    case Construction::Hypersurface:
      pin(1, full);
      break;
    case Construction::Conic:
      pin(1, full);
      pin(2, full & ~1u);  // {2..n}
      break;
    case Construction::DoubleCover:
      // The degeneration pin {1..n} and the cover pin {1,2} coincide at
      // n = 2; the cover pin wins and also serves the degeneration.
      if (n >= 3) pin(1, full);
      pin(static_cast<std::size_t>(r) + 1, 0b11u);
      break;
  }
  std::vector<std::uint32_t> rest;
  rest.reserve(size);
  for (std::uint32_t m = 0; m < size; ++m)
    if (!mask_used[m]) rest.push_back(m);
  std::sort(rest.begin(), rest.end(), [](std::uint32_t a, std::uint32_t b) {
    const int wa = std::popcount(a), wb = std::popcount(b);
    return wa != wb ? wa < wb : a < b;
  });
  std::size_t k = 0;
  for (std::size_t slot = 0; slot < size; ++slot)
    if (!slot_used[slot]) table[slot] = rest[k++];
  return RhoMap(n, std::move(table));
}

// ------------------------------------------------------------------ oracle

namespace {

struct OracleOutcome {
  OracleReport report;
  bool equiv_clean = true;
  bool closure_clean = true;
};

std::string point_text(const std::vector<std::uint64_t>& pt, const VarSpace& s) {
  std::string out = "(";
  for (int i = 0; i < s.nx; ++i) {
    if (i) out += ", ";
    out += "x" + std::to_string(i) + "=" + std::to_string(pt[static_cast<std::size_t>(i)]);
  }
  if (s.with_t)
    out += ", t=" + std::to_string(pt[static_cast<std::size_t>(s.t_index())]);
  return out + ")";
}

// Value of the subset monomial c_mask / x_0^{|mask|}, realized as the
// same square class c_mask * x_0^{|mask|}.
std::uint64_t mask_value(std::uint32_t mask, const std::vector<std::uint64_t>& pt,
                         int n, std::uint64_t p) {
  std::uint64_t v = powmod_u64(pt[0], static_cast<std::uint64_t>(std::popcount(mask)), p);
  for (int i = 1; i <= n; ++i)
    if ((mask >> (i - 1)) & 1u) v = mulmod_u64(v, pt[static_cast<std::size_t>(i)], p);
  return v;
}

// Value of a square class at the sample point; the formal generator b is
// realized as g * x_0^{deg g}, the scalar t as the sampled t value.
std::uint64_t class_value(const SquareClass& cls, const std::vector<std::uint64_t>& pt,
                          std::uint64_t b_val, std::uint64_t t_val, std::uint64_t p) {
  std::uint64_t v = 1;
  for (int i = 0; i <= cls.n(); ++i)
    if (cls.exp(i)) v = mulmod_u64(v, pt[static_cast<std::size_t>(i)], p);
  if (cls.b_flag()) v = mulmod_u64(v, b_val, p);
  if (cls.t_flag()) v = mulmod_u64(v, t_val, p);
  return v;
}

OracleOutcome run_oracle(const WitnessCertificate& cert) {
  const WitnessParams& P = cert.params;
  const std::uint64_t p = P.oracle_p;
  const int n = P.n;
  const VarSpace& space = cert.F.space();
  const bool dc = P.construction == Construction::DoubleCover;
  const int deg_g = cert.g.degree();
  const std::size_t slots = static_cast<std::size_t>(P.r) + 2;
  // The character-closure scan is quadratic in the slot count; cap it so
  // certificates with huge fiber rank stay checkable.
  const std::size_t closure_slots = std::min<std::size_t>(slots, 64);

  OracleOutcome out;
  out.report.seed = P.seed;
  out.report.p = p;
  out.report.samples = P.samples;

  auto fail = [&](bool& clean, const std::string& what) {
    clean = false;
    out.report.failures += 1;
    if (out.report.first_failure.empty()) out.report.first_failure = what;
  };

  SplitMix64 rng(P.seed);
  long long attempts = 1000LL * P.samples;
  int done = 0;
  while (done < P.samples) {
    if (attempts-- <= 0) {
      fail(out.equiv_clean, "sampling rejection budget exhausted");
      break;
    }
    std::vector<std::uint64_t> pt(static_cast<std::size_t>(space.vars()), 1);
    for (int i = 0; i <= n; ++i)
      pt[static_cast<std::size_t>(i)] = 1 + rng.below(p - 1);
    std::uint64_t t_val = 1;
    if (space.with_t)
      t_val = pt[static_cast<std::size_t>(space.t_index())] = 1 + rng.below(p - 1);

    const std::uint64_t g_val = cert.g.value_at(pt, p);
    if (g_val == 0) continue;
    std::vector<std::uint64_t> e_val(cert.e.size());
    bool rejected = false;
    for (std::size_t i = 0; i < cert.e.size(); ++i) {
      e_val[i] = cert.e[i].value_at(pt, p);
      if (e_val[i] == 0) { rejected = true; break; }
    }
    if (rejected) continue;
    ++done;

    const std::uint64_t x0 = pt[0];
    const std::uint64_t b_val =
        mulmod_u64(g_val, powmod_u64(x0, static_cast<std::uint64_t>(deg_g), p), p);

    // Left side: q = <b, c_1/x0^{w_1}, ..., c_{r+1}/x0^{w_{r+1}}>.
    std::vector<std::uint64_t> left(slots);
    left[0] = b_val;
    for (std::size_t j = 1; j < slots; ++j)
      left[j] = mask_value(cert.rho.eps(j), pt, n, p);

    // Right side: mu times the fiber form of the actual entry polynomials.
    const std::uint64_t mu_val = class_value(cert.mu, pt, b_val, t_val, p);
    std::vector<std::uint64_t> right;
    right.reserve(slots);
    if (dc) right.push_back(mu_val);
    right.push_back(mulmod_u64(
        mu_val, mulmod_u64(e_val[0], powmod_u64(x0, static_cast<std::uint64_t>(P.d), p), p), p));
    const std::uint64_t x0_dm2 = powmod_u64(x0, static_cast<std::uint64_t>(P.d - 2), p);
    for (std::size_t i = 1; i < cert.e.size(); ++i)
      right.push_back(mulmod_u64(mu_val, mulmod_u64(e_val[i], x0_dm2, p), p));

    if (!ff_forms_equivalent(FiniteFieldForm{p, left}, FiniteFieldForm{p, right})) {
      fail(out.equiv_clean, "specialized forms differ at sample " +
                                std::to_string(done) + " " + point_text(pt, space));
      break;
    }

    bool closure_bad = false;
    for (std::size_t ja = 0; ja < closure_slots && !closure_bad; ++ja) {
      for (std::size_t jb = ja + 1; jb < closure_slots; ++jb) {
        const std::uint32_t ma = cert.rho.eps(ja), mb = cert.rho.eps(jb);
        const int chi_a = legendre_chi(mask_value(ma, pt, n, p), p);
        const int chi_b = legendre_chi(mask_value(mb, pt, n, p), p);
        const int chi_ab = legendre_chi(mask_value(ma ^ mb, pt, n, p), p);
        if (chi_a * chi_b != chi_ab) {
          fail(out.closure_clean,
               "character closure broke for slots " + std::to_string(ja) + "," +
                   std::to_string(jb) + " at sample " + std::to_string(done) + " " +
                   point_text(pt, space));
          closure_bad = true;
          break;
        }
      }
    }
    if (closure_bad) break;
  }
  return out;
}

// ----------------------------------------------------------- check battery

bool rho_pins_ok(const WitnessCertificate& cert, std::string* detail) {
  const int n = cert.params.n;
  const long long r = cert.params.r;
  const RhoMap& rho = cert.rho;
  const std::uint32_t full = full_mask(n);
  if (rho.eps(0) != 0) {
    *detail = "slot 0 must carry the empty subset";
    return false;
  }
  switch (cert.params.construction) {
    case Construction::Hypersurface:
      if (rho.eps(1) != full) {
        *detail = "slot 1 must carry the full product x1*..*x" + std::to_string(n);
        return false;
      }
      *detail = "slot 0 = 1, slot 1 = x1*..*x" + std::to_string(n);
      return true;
    case Construction::Conic:
      if (rho.eps(1) != full) {
        *detail = "slot 1 must carry the full product x1*..*x" + std::to_string(n);
        return false;
      }
      if (rho.eps(2) != (full & ~1u)) {
        *detail = "slot 2 must carry x2*..*x" + std::to_string(n);
        return false;
      }
      *detail = "slot 0 = 1, slot 1 = x1*..*x" + std::to_string(n) +
                ", slot 2 = x2*..*x" + std::to_string(n);
      return true;
    case Construction::DoubleCover: {
      if (rho.eps(static_cast<std::size_t>(r) + 1) != 0b11u) {
        *detail = "slot r+1 must carry x1*x2";
        return false;
      }
      bool full_present = false;
      for (std::size_t j = 1; j <= static_cast<std::size_t>(r) + 1; ++j)
        if (rho.eps(j) == full) full_present = true;
      if (!full_present) {
        *detail = "the full product x1*..*x" + std::to_string(n) +
                  " must appear among slots 1..r+1";
        return false;
      }
      *detail = "slot 0 = 1, slot r+1 = x1*x2, full product present";
      return true;
    }
  }
  *detail = "unknown construction";
  return false;
}

struct BatteryOutput {
  std::vector<CheckResult> checks;
  OracleReport report;
};

BatteryOutput run_battery(const WitnessCertificate& cert, const ResidueCertificate& rc) {
  const WitnessParams& P = cert.params;
  const int n = P.n;
  const int d = P.d;
  BatteryOutput out;
  auto push = [&](std::string name, bool pass, std::string detail) {
    out.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  {
    const std::vector<int> missing = missing_pure_powers(cert.g, n);
    push("pure_powers", missing.empty(),
         missing.empty()
             ? "x_i^" + std::to_string(cert.g.degree()) + " present for every i = 0.." +
                   std::to_string(n)
             : "missing pure powers at coordinates " + join_ints(missing));
  }
  {
    const bool ok = check_cond_square_mod_coords(cert.g, n);
    push("square_mod_coordinates", ok,
         ok ? "g mod x_i is a polynomial square for every i = 0.." + std::to_string(n)
            : "some restriction g mod x_i is not a square");
  }
  {
    std::string detail;
    const bool ok = rho_pins_ok(cert, &detail);
    push("rho_pinning", ok, detail);
  }
  {
    bool ok = false;
    std::string detail;
    try {
      const FactorStructure fs{cert.h, cert.h_exp, cert.m0, cert.g};
      ok = structured_coprimality(cert.e, fs, &detail);
      if (ok) detail = "no coordinate divides every entry";
    } catch (const usage_error& err) {
      detail = err.what();
    }
    push("coprimality", ok, detail);
  }

  const SquareClass b = SquareClass::b_class(n);
  const DiagonalForm q = q_form(n, P.r, b, cert.rho);
  {
    bool ok = true;
    std::string detail;
    DiagonalForm fiber;
    fiber.n = n;
    if (P.construction == Construction::DoubleCover)
      fiber.entries.push_back(SquareClass::trivial(n));
    fiber.entries.push_back(b * monomial_class(n, cert.m0, cert.g.degree() + d));
    for (std::size_t i = 1; i < cert.e.size() && ok; ++i) {
      const auto cls = entry_class(cert.e[i], n, d - 2);
      if (!cls) {
        ok = false;
        detail = "entry " + std::to_string(i) + " is not a pure x-monomial";
      } else {
        fiber.entries.push_back(*cls);
      }
    }
    if (ok) {
      ok = scaling_isometry_holds(q, fiber, cert.mu);
      detail = "mu = " + cert.mu.to_string() +
               (ok ? " carries the fiber form onto q (rank " +
                         std::to_string(q.rank()) + ")"
                   : " does not carry the fiber form onto q; fiber = " +
                         fiber.to_string());
    }
    push("isometry_scaling", ok, detail);
  }
  {
    DiagonalForm sub;
    sub.n = n;
    sub.entries.assign(q.entries.begin() + 1, q.entries.end());
    const DiagonalForm ambient = pfister_form(n, cert.rho);
    const bool ok = scaling_subform_holds(sub, ambient, cert.lambda);
    push("subform_scaling", ok,
         "lambda = " + cert.lambda.to_string() +
             (ok ? " embeds the subset part of q into the rank-" +
                       std::to_string(ambient.rank()) + " subset form"
                 : " does not embed the subset part of q"));
  }
  if (P.base != GVariant::FiniteField) {
    bool ok = false;
    std::string detail;
    const Poly degen = P.base == GVariant::Parametric
                           ? cert.g.set_var_zero(cert.g.space().t_index())
                           : cert.g.coefficients_mod(P.base_param);
    const char* what = P.base == GVariant::Parametric ? "t -> 0" : "mod p0";
    std::optional<SquareClass> red;
    if (degen.term_count() == 1)
      red = entry_class(degen, n, cert.g.degree());
    if (!red) {
      detail = std::string("degeneration of g (") + what + ") is not a pure x-monomial";
    } else if (P.construction == Construction::DoubleCover) {
      const auto slot = isotropy_entry(q, *red);
      ok = slot.has_value();
      detail = ok ? "b degenerates (" + std::string(what) + ") to the slot-" +
                        std::to_string(*slot) + " entry; <c, c> splits off"
                  : "the degeneration class of b is missing from the fiber form";
    } else {
      ok = t0_isotropy_check(q, *red);
      detail = ok ? "b degenerates (" + std::string(what) +
                        ") to the slot-1 entry; <c, c> splits off"
                  : "the degeneration class of b does not match the slot-1 entry";
    }
    push("specialization_isotropy", ok, detail);
  }
  {
    const bool ok = rc.verdict == ResidueCertificate::Verdict::Nonzero;
    push("symbol_nonzero", ok,
         "residue chain of length " + std::to_string(rc.steps.size()) +
             " ends at " + rc.final_symbol().to_string() +
             (ok ? " (odd valuation found)" : " (no odd valuation)"));
  }
  {
    const auto root = multivariate_sqrt(cert.g.monic());
    push("b_not_square", !root.has_value(),
         root ? "g is a square: g = lc * (" + root->to_string() + ")^2"
              : "g has no polynomial square root, so its class b is nontrivial");
  }
  {
    const PlaneCheck pc = jacobian_vanishes_on_plane(cert.F);
    const bool ok = pc.vanishes && pc.multiplicity == d - 2;
    push("plane_multiplicity", ok,
         "vanishing multiplicity " + std::to_string(pc.multiplicity) +
             " along the fiber coordinate plane, expected " + std::to_string(d - 2) +
             (pc.vanishes ? "" : "; gradient criterion failed"));
  }

  const OracleOutcome oo = run_oracle(cert);
  out.report = oo.report;
  const std::string clean_detail = std::to_string(P.samples) + " samples at p=" +
                                   std::to_string(P.oracle_p) + ", seed=" +
                                   std::to_string(P.seed);
  push("oracle_equivalence", oo.equiv_clean,
       oo.equiv_clean ? clean_detail : oo.report.first_failure);
  push("oracle_group_closure", oo.closure_clean,
       oo.closure_clean ? clean_detail : oo.report.first_failure);

  if (P.construction == Construction::Conic) {
    const ConicSimilarity cs = conic_similarity_check(n, b, cert.rho);
    push("conic_similarity", cs.similar,
         cs.similar ? "q ~ " + cs.displayed.to_string() + " via the scaling " +
                          cs.scaling.to_string()
                    : "q is not a scaling of the displayed conic");
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------------- build

WitnessCertificate build_witness(const WitnessParams& in) {
  WitnessParams params = in;
  if (params.base == GVariant::FiniteField) params.oracle_p = params.base_param;
  validate_params(params);
  const int n = params.n;
  const int d = params.d;
  const bool dc = params.construction == Construction::DoubleCover;

  const GPoly gp = build_g(n, params.base, params.base_param);
  const Field field = params.base == GVariant::FiniteField
                          ? Field::prime(params.base_param)
                          : Field::rationals();
  const int ny = static_cast<int>(params.r) + (dc ? 0 : 1);
  const VarSpace space{n + 1, ny, params.base == GVariant::Parametric};

  WitnessCertificate cert;
  cert.params = params;
  cert.rho = choose_rho(n, params.r, params.construction);
  cert.g = gp.g.embedded(space);
  cert.h = Poly::variable(field, space, 0) + Poly::variable(field, space, 1);

  Monomial m0(static_cast<std::size_t>(n) + 1, 0);
  SquareClass mu = SquareClass::trivial(n);
  std::vector<long long> mu_exps(static_cast<std::size_t>(n) + 1, 0);
  const bool odd_d = d % 2 != 0;
  if (dc) {
    cert.h_exp = d - gp.deg - 2;
    m0[1] = m0[2] = 1;
    mu_exps[1] = mu_exps[2] = 1;
    mu = SquareClass::from_monomial(n, mu_exps);
  } else if (odd_d) {
    cert.h_exp = d - gp.deg - 1;
    m0[1] = 1;
    mu_exps[0] = mu_exps[1] = 1;
    mu = SquareClass::from_monomial(n, mu_exps);
  } else {
    cert.h_exp = d - gp.deg;
  }
  if (cert.h_exp < 0 || cert.h_exp % 2 != 0)
    throw std::logic_error("witness build: h exponent must be even and nonnegative");
  cert.m0 = m0;
  cert.mu = mu;
  cert.lambda = mu;

  cert.e.push_back(cert.h.pow(static_cast<std::uint32_t>(cert.h_exp)) *
                   x_monomial(field, space, m0, 0) * cert.g);
  for (int j = 1; j <= ny; ++j) {
    const std::uint32_t mask = cert.rho.eps(static_cast<std::size_t>(j));
    Monomial cm;
    if (dc) {
      cm = mask_exponents(n, mask ^ 0b11u);  // x1 x2 c_j with squares dropped
    } else {
      cm = mask_exponents(n, mask);
      if (odd_d) cm[1] = 1 - cm[1];  // x1^{1-eps_1} prod_{i>=2} x_i^{eps_i}
    }
    int w = 0;
    for (const std::uint32_t e : cm) w += static_cast<int>(e);
    if (d - 2 - w < 0)
      throw std::logic_error("witness build: entry exponent underflow");
    cert.e.push_back(x_monomial(field, space, cm, static_cast<std::uint32_t>(d - 2 - w)));
  }

  cert.F = cert.e[0];
  for (int j = 1; j <= ny; ++j)
    cert.F = cert.F + cert.e[static_cast<std::size_t>(j)] *
                          Poly::variable(field, space, space.y_index(j), 2);

  recompute_records(cert);
  return cert;
}

void recompute_records(WitnessCertificate& cert) {
  const ResidueCertificate rc = certify_alpha_nonzero(cert.params.n);
  cert.alpha = alpha_record(rc);
  BatteryOutput bat = run_battery(cert, rc);
  cert.checks = std::move(bat.checks);
  cert.oracle = bat.report;
  cert.pass = std::all_of(cert.checks.begin(), cert.checks.end(),
                          [](const CheckResult& c) { return c.pass; });
}

// ------------------------------------------------------------------ verify

namespace {

std::optional<std::string> structural_violation(const WitnessCertificate& cert) {
  try {
    validate_params(cert.params);
  } catch (const usage_error& err) {
    return "parameters: " + std::string(err.what());
  }
  const WitnessParams& P = cert.params;
  if (static_cast<int>(cert.e.size()) != expected_entries(P))
    return "entry count " + std::to_string(cert.e.size()) +
           " does not match the construction (expected " +
           std::to_string(expected_entries(P)) + ")";
  const Field& field = cert.F.field();
  const VarSpace& space = cert.F.space();
  if (space.nx != P.n + 1 || space.ny != static_cast<int>(cert.e.size()) - 1 ||
      space.with_t != (P.base == GVariant::Parametric))
    return "polynomial ring shape does not match the parameters";
  if (P.base == GVariant::FiniteField
          ? field.characteristic() != P.base_param
          : !field.is_rationals())
    return "coefficient field does not match the base variant";
  for (const Poly* poly : {&cert.g, &cert.h})
    if (!(poly->space() == space) || !(poly->field() == field))
      return "polynomial ring mismatch between stored polynomials";
  for (const Poly& e : cert.e)
    if (!(e.space() == space) || !(e.field() == field))
      return "polynomial ring mismatch between stored polynomials";
  if (cert.g.is_zero()) return "g is zero";
  if (cert.h.is_zero()) return "h is zero";
  if (cert.m0.size() != static_cast<std::size_t>(P.n) + 1)
    return "e0 monomial has the wrong arity";
  if (cert.h_exp < 0 || cert.h_exp % 2 != 0)
    return "h exponent must be a nonnegative even integer";
  if (cert.rho.n() != P.n || cert.rho.size() != (1ull << P.n))
    return "rho table has the wrong shape";
  if (cert.lambda.n() != P.n || cert.mu.n() != P.n)
    return "scaling classes have the wrong arity";

  const Poly e0 = cert.h.pow(static_cast<std::uint32_t>(cert.h_exp)) *
                  x_monomial(field, space, cert.m0, 0) * cert.g;
  if (!(e0 == cert.e[0])) return "e_0 != h^h_exp * m0 * g";
  Poly F = cert.e[0];
  for (std::size_t i = 1; i < cert.e.size(); ++i)
    F = F + cert.e[i] * Poly::variable(field, space, space.y_index(static_cast<int>(i)), 2);
  if (!(F == cert.F)) return "F != e_0 + sum e_i y_i^2";
  return std::nullopt;
}

std::optional<std::string> records_mismatch(const WitnessCertificate& stored,
                                            const WitnessCertificate& redo) {
  if (stored.checks.size() != redo.checks.size())
    return "stored check list has " + std::to_string(stored.checks.size()) +
           " entries, recomputation has " + std::to_string(redo.checks.size());
  for (std::size_t i = 0; i < redo.checks.size(); ++i) {
    if (stored.checks[i].name != redo.checks[i].name)
      return "stored check " + std::to_string(i) + " is named \"" +
             stored.checks[i].name + "\", recomputation says \"" +
             redo.checks[i].name + "\"";
    if (stored.checks[i].pass != redo.checks[i].pass)
      return "stored outcome of " + stored.checks[i].name +
             " disagrees with recomputation";
  }
  if (!(stored.alpha == redo.alpha))
    return "stored residue transcript disagrees with recomputation";
  const OracleReport &a = stored.oracle, &b = redo.oracle;
  if (a.seed != b.seed || a.p != b.p || a.samples != b.samples ||
      a.failures != b.failures || a.first_failure != b.first_failure)
    return "stored oracle report disagrees with recomputation";
  if (stored.pass != redo.pass)
    return "stored verdict disagrees with recomputation";
  return std::nullopt;
}

}  // namespace

VerifyResult verify_certificate(const WitnessCertificate& cert) {
  VerifyResult res;
  if (const auto why = structural_violation(cert)) {
    res.status = VerifyStatus::Tampered;
    res.message = *why;
    return res;
  }
  WitnessCertificate redo = cert;
  recompute_records(redo);
  res.checks = redo.checks;
  std::string failed;
  for (const CheckResult& c : redo.checks)
    if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
  if (!failed.empty()) {
    res.status = VerifyStatus::Fail;
    res.message = "failing checks: " + failed;
    return res;
  }
  if (const auto why = records_mismatch(cert, redo)) {
    res.status = VerifyStatus::Tampered;
    res.message = *why;
    return res;
  }
  res.status = VerifyStatus::Pass;
  res.message = "all checks pass and the stored records match";
  return res;
}

// -------------------------------------------------------------------- JSON

std::string certificate_to_json_text(const WitnessCertificate& cert) {
  ordered_json j;
  j["schema_version"] = kSchema;
  j["params"] = {{"n", cert.params.n},
                 {"r", cert.params.r},
                 {"d", cert.params.d},
                 {"construction", construction_name(cert.params.construction)},
                 {"base", base_name(cert.params.base)},
                 {"base_param", cert.params.base_param},
                 {"seed", cert.params.seed},
                 {"samples", cert.params.samples},
                 {"oracle_p", cert.params.oracle_p}};
  ordered_json rho = ordered_json::array();
  for (std::size_t slot = 0; slot < cert.rho.size(); ++slot) {
    ordered_json row = ordered_json::array();
    for (int i = 1; i <= cert.params.n; ++i)
      row.push_back((cert.rho.eps(slot) >> (i - 1)) & 1u);
    rho.push_back(std::move(row));
  }
  j["rho"] = std::move(rho);
  j["rho_fill"] = kRhoFill;
  ordered_json e = ordered_json::array();
  for (const Poly& poly : cert.e) e.push_back(poly.to_string());
  j["polynomials"] = {{"g", cert.g.to_string()},
                      {"h", cert.h.to_string()},
                      {"h_exp", cert.h_exp},
                      {"e0_monomial", cert.m0},
                      {"e", std::move(e)},
                      {"F", cert.F.to_string()}};
  j["scalings"] = {{"lambda", cert.lambda.to_string()},
                   {"mu", cert.mu.to_string()}};
  j["alpha"] = {{"start", cert.alpha.start},
                {"divisors", cert.alpha.divisors},
                {"steps", cert.alpha.steps},
                {"verdict", cert.alpha.verdict}};
  ordered_json checks = ordered_json::array();
  for (const CheckResult& c : cert.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = std::move(checks);
  j["oracle"] = {{"seed", cert.oracle.seed},
                 {"p", cert.oracle.p},
                 {"samples", cert.oracle.samples},
                 {"failures", cert.oracle.failures},
                 {"first_failure", cert.oracle.first_failure}};
  j["verdict"] = cert.pass ? "PASS" : "FAIL";
  return j.dump(2) + "\n";
}

WitnessCertificate certificate_from_json_text(const std::string& text) {
  try {
    const ordered_json j = ordered_json::parse(text);
    if (j.at("schema_version").get<std::string>() != kSchema)
      throw parse_error("unsupported schema version");

    WitnessCertificate cert;
    const auto& jp = j.at("params");
    cert.params.n = jp.at("n").get<int>();
    cert.params.r = jp.at("r").get<long long>();
    cert.params.d = jp.at("d").get<int>();
    cert.params.construction =
        construction_from_name(jp.at("construction").get<std::string>());
    cert.params.base = base_from_name(jp.at("base").get<std::string>());
    cert.params.base_param = jp.at("base_param").get<std::uint64_t>();
    cert.params.seed = jp.at("seed").get<std::uint64_t>();
    cert.params.samples = jp.at("samples").get<int>();
    cert.params.oracle_p = jp.at("oracle_p").get<std::uint64_t>();
    const int n = cert.params.n;
    if (n < 1 || n > 30) throw parse_error("n out of representable range");
    if (cert.params.r < 0 || cert.params.r > (1LL << 30))
      throw parse_error("r out of representable range");
    if (cert.params.d < 0 || cert.params.d > 1000000)
      throw parse_error("d out of representable range");

    const auto& jrho = j.at("rho");
    std::vector<std::uint32_t> table;
    table.reserve(jrho.size());
    for (const auto& row : jrho) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
        throw parse_error("rho row must list one bit per coordinate x1..xn");
      std::uint32_t mask = 0;
      for (int i = 1; i <= n; ++i) {
        const int bit = row.at(static_cast<std::size_t>(i - 1)).get<int>();
        if (bit != 0 && bit != 1) throw parse_error("rho entries must be 0 or 1");
        mask |= static_cast<std::uint32_t>(bit) << (i - 1);
      }
      table.push_back(mask);
    }
    cert.rho = RhoMap(n, std::move(table));
    if (j.at("rho_fill").get<std::string>() != kRhoFill)
      throw parse_error("unknown rho fill rule");

    const auto& jpoly = j.at("polynomials");
    const auto& je = jpoly.at("e");
    if (!je.is_array() || je.size() < 2)
      throw parse_error("certificate needs e_0 and at least one fiber entry");
    const Field field = cert.params.base == GVariant::FiniteField
                            ? Field::prime(cert.params.base_param)
                            : Field::rationals();
    const VarSpace space{n + 1, static_cast<int>(je.size()) - 1,
                         cert.params.base == GVariant::Parametric};
    cert.g = Poly::parse(field, space, jpoly.at("g").get<std::string>());
    cert.h = Poly::parse(field, space, jpoly.at("h").get<std::string>());
    cert.h_exp = jpoly.at("h_exp").get<int>();
    cert.m0 = jpoly.at("e0_monomial").get<Monomial>();
    for (const auto& s : je)
      cert.e.push_back(Poly::parse(field, space, s.get<std::string>()));
    cert.F = Poly::parse(field, space, jpoly.at("F").get<std::string>());

    const auto& js = j.at("scalings");
    cert.lambda = SquareClass::parse(n, js.at("lambda").get<std::string>());
    cert.mu = SquareClass::parse(n, js.at("mu").get<std::string>());

    const auto& ja = j.at("alpha");
    cert.alpha.start = ja.at("start").get<std::string>();
    cert.alpha.divisors = ja.at("divisors").get<std::vector<int>>();
    cert.alpha.steps = ja.at("steps").get<std::vector<std::string>>();
    cert.alpha.verdict = ja.at("verdict").get<std::string>();
    if (cert.alpha.verdict != "nonzero" && cert.alpha.verdict != "inconclusive")
      throw parse_error("alpha verdict must be \"nonzero\" or \"inconclusive\"");

    for (const auto& jc : j.at("checks"))
      cert.checks.push_back({jc.at("name").get<std::string>(),
                             jc.at("pass").get<bool>(),
                             jc.at("detail").get<std::string>()});

    const auto& jo = j.at("oracle");
    cert.oracle.seed = jo.at("seed").get<std::uint64_t>();
    cert.oracle.p = jo.at("p").get<std::uint64_t>();
    cert.oracle.samples = jo.at("samples").get<int>();
    cert.oracle.failures = jo.at("failures").get<int>();
    cert.oracle.first_failure = jo.at("first_failure").get<std::string>();

    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict != "PASS" && verdict != "FAIL")
      throw parse_error("verdict must be PASS or FAIL");
    cert.pass = verdict == "PASS";
    return cert;
  } catch (const nlohmann::json::exception& err) {
    throw parse_error(std::string("certificate decode: ") + err.what());
  }
}

// --------------------------------------------------------------------- I/O

void write_certificate_file(const WitnessCertificate& cert, const std::string& path) {
  const std::string text = certificate_to_json_text(cert);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + tmp + " for writing");
    out << text;
    out.flush();
    if (!out) throw io_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw io_error("cannot move certificate into place at " + path);
  }
}

WitnessCertificate read_certificate_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("read failure on " + path);
  return certificate_from_json_text(buf.str());
}

// ------------------------------------------------------------------ report

std::string certificate_summary(const WitnessCertificate& cert) {
  const WitnessParams& P = cert.params;
  std::ostringstream o;
  o << kSchema << " " << construction_name(P.construction) << " n=" << P.n
    << " r=" << P.r << " d=" << P.d << " base=" << base_name(P.base);
  if (P.base != GVariant::Parametric) o << "(" << P.base_param << ")";
  o << "\n";
  o << "dimension N=" << P.n + P.r << ", fiber rank " << P.r + 2
    << ", deg g = " << cert.g.degree() << "\n";
  o << "scalings: lambda = " << cert.lambda.to_string()
    << ", mu = " << cert.mu.to_string() << "\n";
  o << "alpha: " << cert.alpha.verdict << " after " << cert.alpha.steps.size()
    << " residue step(s), final " << cert.alpha.final_symbol() << "\n";
  std::size_t passed = 0;
  std::string failing;
  for (const CheckResult& c : cert.checks) {
    if (c.pass) ++passed;
    else failing += (failing.empty() ? "" : ", ") + c.name;
  }
  o << "checks: " << passed << "/" << cert.checks.size() << " pass";
  if (!failing.empty()) o << " (failing: " << failing << ")";
  o << "\n";
  o << "oracle: " << cert.oracle.samples << " samples at p=" << cert.oracle.p
    << ", failures=" << cert.oracle.failures << "\n";
  o << "verdict: " << (cert.pass ? "PASS" : "FAIL") << "\n";
  return o.str();
}

}  // namespace irratio
