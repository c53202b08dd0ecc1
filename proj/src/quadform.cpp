#include "quadform.hpp"

#include <algorithm>
#include <bit>

#include "util.hpp"

namespace irratio {

std::string DiagonalForm::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ", ";
    out += entries[i].to_string();
  }
  return out + ">";
}

RhoMap::RhoMap(int n, std::vector<std::uint32_t> table)
    : n_(n), table_(std::move(table)) {
  if (n < 1 || n > 30) throw usage_error("rho: 1 <= n <= 30 violated");
  const std::size_t size = 1ULL << n;
  if (table_.size() != size)
    throw parse_error("rho: table must list all 2^n subsets");
  std::vector<bool> seen(size, false);
  for (const std::uint32_t eps : table_) {
    if (eps >= size) throw parse_error("rho: subset mask out of range");
    if (seen[eps]) throw parse_error("rho: table is not a bijection");
    seen[eps] = true;
  }
}

std::uint32_t RhoMap::eps(std::size_t idx) const {
  if (idx >= table_.size()) throw usage_error("rho: index out of range");
  return table_[idx];
}

int RhoMap::weight(std::size_t idx) const { return std::popcount(eps(idx)); }

SquareClass RhoMap::c_class(std::size_t idx) const {
  const std::uint32_t mask = eps(idx);
  std::vector<long long> exps(static_cast<std::size_t>(n_ + 1), 0);
  exps[0] = std::popcount(mask);  // divide by x_0^{deg c}
  for (int i = 1; i <= n_; ++i)
    if ((mask >> (i - 1)) & 1) exps[static_cast<std::size_t>(i)] = 1;
  return SquareClass::from_monomial(n_, exps);
}

Monomial RhoMap::c_monomial(std::size_t idx) const {
  const std::uint32_t mask = eps(idx);
  Monomial m(static_cast<std::size_t>(n_ + 1), 0);
  for (int i = 1; i <= n_; ++i)
    if ((mask >> (i - 1)) & 1) m[static_cast<std::size_t>(i)] = 1;
  return m;
}

DiagonalForm pfister_form(int n, const RhoMap& rho) {
  if (rho.n() != n) throw usage_error("pfister form: rho dimension mismatch");
  DiagonalForm out;
  out.n = n;
  out.entries.reserve(rho.size());
  for (std::size_t idx = 0; idx < rho.size(); ++idx)
    out.entries.push_back(rho.c_class(idx));
  return out;
}

DiagonalForm q_form(int n, long long r, const SquareClass& b, const RhoMap& rho) {
  if (rho.n() != n) throw usage_error("q form: rho dimension mismatch");
  if (r < 1 || r > (1LL << n) - 2)
    throw usage_error("q form: 1 <= r <= 2^n - 2 violated (r=" + std::to_string(r) +
                      ", n=" + std::to_string(n) + ")");
  if (!b.b_flag()) throw usage_error("q form: entry 0 must carry the b flag");
  DiagonalForm out;
  out.n = n;
  out.entries.push_back(b);
  for (long long idx = 1; idx <= r + 1; ++idx)
    out.entries.push_back(rho.c_class(static_cast<std::size_t>(idx)));
  return out;
}

namespace {
std::vector<SquareClass> sorted_entries(const DiagonalForm& f) {
  std::vector<SquareClass> v = f.entries;
  std::sort(v.begin(), v.end());
  return v;
}
}  // namespace

bool scaling_isometry_holds(const DiagonalForm& A, const DiagonalForm& B,
                            const SquareClass& mu) {
  if (A.rank() != B.rank()) return false;
  DiagonalForm scaled;
  scaled.n = B.n;
  scaled.entries.reserve(B.rank());
  for (const auto& e : B.entries) scaled.entries.push_back(mu * e);
  return sorted_entries(scaled) == sorted_entries(A);
}

std::optional<SquareClass> find_scaling_isometry(const DiagonalForm& A,
                                                 const DiagonalForm& B) {
  if (A.rank() != B.rank())
    throw usage_error("scaling isometry: ranks differ");
  if (A.rank() == 0) throw usage_error("scaling isometry: empty forms");
  for (const auto& bj : B.entries) {
    const SquareClass mu = A.entries[0] * bj;  // mu * bj = A_0 candidates
    if (scaling_isometry_holds(A, B, mu)) return mu;
  }
  return std::nullopt;
}

bool scaling_subform_holds(const DiagonalForm& sub, const DiagonalForm& ambient,
                           const SquareClass& lambda) {
  const std::vector<SquareClass> amb = sorted_entries(ambient);
  std::vector<SquareClass> scaled;
  scaled.reserve(sub.rank());
  for (const auto& e : sub.entries) scaled.push_back(lambda * e);
  std::sort(scaled.begin(), scaled.end());
  // multiset inclusion; a repeated scaled entry can never embed into the
  // pairwise-distinct ambient entries, which std::includes gets right
  return std::includes(amb.begin(), amb.end(), scaled.begin(), scaled.end());
}

std::optional<SquareClass> find_scaling_subform(const DiagonalForm& sub,
                                                const DiagonalForm& ambient) {
  if (sub.rank() == 0 || ambient.rank() == 0)
    throw usage_error("scaling subform: empty forms");
  {
    std::vector<SquareClass> amb = sorted_entries(ambient);
    if (std::adjacent_find(amb.begin(), amb.end()) != amb.end())
      throw usage_error("scaling subform: ambient entries must be pairwise distinct");
  }
  for (const auto& ak : ambient.entries) {
    const SquareClass lambda = ak * sub.entries[0];
    if (scaling_subform_holds(sub, ambient, lambda)) return lambda;
  }
  return std::nullopt;
}

bool t0_isotropy_check(const DiagonalForm& q, const SquareClass& reduction) {
  if (q.rank() < 2) throw usage_error("degeneration isotropy: rank >= 2 violated");
  return q.entries[1] == reduction;
}

std::optional<std::size_t> isotropy_entry(const DiagonalForm& q,
                                          const SquareClass& reduction) {
  for (std::size_t i = 1; i < q.rank(); ++i)
    if (q.entries[i] == reduction) return i;
  return std::nullopt;
}

ConicSimilarity conic_similarity_check(int n, const SquareClass& b, const RhoMap& rho) {
  ConicSimilarity out;
  const DiagonalForm q = q_form(n, 1, b, rho);
  // <b * x_2...x_n / x_0^{n-1}, x_1/x_0, 1>
  std::vector<long long> tail(static_cast<std::size_t>(n + 1), 1);
  tail[0] = n - 1;
  tail[1] = 0;
  out.displayed.n = n;
  out.displayed.entries = {
      b * SquareClass::from_monomial(n, tail),
      SquareClass::coordinate_ratio(1, 0, n),
      SquareClass::trivial(n),
  };
  const auto mu = find_scaling_isometry(q, out.displayed);
  out.similar = mu.has_value();
  if (mu) out.scaling = *mu;
  return out;
}

// ------------------------------------------------------------------ F_p

int legendre_chi(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw usage_error("legendre: unit argument required");
  return powmod_u64(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

bool ff_isotropic(const FiniteFieldForm& f) {
  const std::uint64_t p = f.p;
  if (!is_odd_prime_u64(p) || p > 101)
    throw usage_error("ff isotropy: odd prime p <= 101 violated");
  if (f.rank() < 1 || f.rank() > 6)
    throw usage_error("ff isotropy: 1 <= rank <= 6 violated");
  for (const auto c : f.coeffs)
    if (c % p == 0) throw usage_error("ff isotropy: zero coefficient");

  const std::size_t k = f.rank();
  std::vector<std::uint64_t> x(k, 0);
  std::uint64_t budget = 2'000'000;
  // odometer scan over F_p^k, skipping the origin
  while (true) {
    std::size_t i = 0;
    while (i < k && x[i] == p - 1) x[i++] = 0;
    if (i == k) return false;  // wrapped: search space exhausted
    ++x[i];
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < k; ++j)
      v = (v + mulmod_u64(f.coeffs[j] % p, mulmod_u64(x[j], x[j], p), p)) % p;
    if (v == 0) return true;
    if (--budget == 0)
      throw std::runtime_error("ff isotropy: search budget exceeded");
  }
}

bool ff_forms_equivalent(const FiniteFieldForm& a, const FiniteFieldForm& b) {
  if (a.p != b.p) throw usage_error("ff equivalence: fields differ");
  if (!is_odd_prime_u64(a.p)) throw usage_error("ff equivalence: odd prime required");
  if (a.rank() != b.rank()) return false;
  std::uint64_t da = 1, db = 1;
  for (const auto c : a.coeffs) {
    if (c % a.p == 0) throw usage_error("ff equivalence: zero coefficient");
    da = mulmod_u64(da, c % a.p, a.p);
  }
  for (const auto c : b.coeffs) {
    if (c % b.p == 0) throw usage_error("ff equivalence: zero coefficient");
    db = mulmod_u64(db, c % b.p, b.p);
  }
  return legendre_chi(da, a.p) == legendre_chi(db, b.p);
}

FiniteFieldForm specialize_form(const std::vector<Poly>& entries,
                                const std::vector<std::uint64_t>& point,
                                std::uint64_t p) {
  if (!is_odd_prime_u64(p)) throw usage_error("specialize: odd prime required");
  FiniteFieldForm out;
  out.p = p;
  out.coeffs.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::uint64_t v = entries[i].value_at(point, p);
    if (v == 0)
      throw specialization_rejected("entry " + std::to_string(i) +
                                    " vanishes at the sample point");
    out.coeffs.push_back(v);
  }
  return out;
}

}  // namespace irratio
