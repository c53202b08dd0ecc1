#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poly.hpp"
#include "squareclass.hpp"

namespace irratio {

// Diagonal quadratic form over the function field of P^n, entries tracked
// as square classes (diagonal forms are classified here only up to
// entrywise square-class data; that is exactly the granularity the
// scaling searches need).
struct DiagonalForm {
  int n = 0;
  std::vector<SquareClass> entries;

  std::size_t rank() const { return entries.size(); }
  std::string to_string() const;
};

// Bijection idx -> eps in {0,1}^n selecting which coordinate-subset
// monomial c_eps = prod x_i^{eps_i} sits at which slot.  Slot 0 always
// carries the empty product in well-formed tables; mask bit (i-1)
// corresponds to eps_i.
class RhoMap {
 public:
  RhoMap() = default;
  RhoMap(int n, std::vector<std::uint32_t> table);  // validates bijection

  int n() const { return n_; }
  std::size_t size() const { return table_.size(); }
  std::uint32_t eps(std::size_t idx) const;
  int weight(std::size_t idx) const;  // deg c_idx
  // Square class of c_idx / x_0^{deg c_idx}.
  SquareClass c_class(std::size_t idx) const;
  // Exponent vector of the monomial c_idx over x_0..x_n.
  Monomial c_monomial(std::size_t idx) const;
  const std::vector<std::uint32_t>& table() const { return table_; }

 private:
  int n_ = 0;
  std::vector<std::uint32_t> table_;
};

// The 2^n-dimensional form with one entry per coordinate subset:
// <1, c_1/x0^{d_1}, ..., c_{2^n-1}/x0^{d_{2^n-1}}> in rho's slot order.
DiagonalForm pfister_form(int n, const RhoMap& rho);

// <b, c_1/x0^{d_1}, ..., c_{r+1}/x0^{d_{r+1}}>, rank r+2, 1 <= r <= 2^n-2.
DiagonalForm q_form(int n, long long r, const SquareClass& b, const RhoMap& rho);

// Entrywise scaling isometry: a class mu with mu * B = A as multisets of
// square classes.  Candidates are A_0 * B_j for every j; the first match
// in slot order is returned, so the search is deterministic.
std::optional<SquareClass> find_scaling_isometry(const DiagonalForm& A,
                                                 const DiagonalForm& B);
bool scaling_isometry_holds(const DiagonalForm& A, const DiagonalForm& B,
                            const SquareClass& mu);

// Scaling subform containment: lambda with lambda * sub a subset of
// ambient (ambient entries must be pairwise distinct).
std::optional<SquareClass> find_scaling_subform(const DiagonalForm& sub,
                                                const DiagonalForm& ambient);
bool scaling_subform_holds(const DiagonalForm& sub, const DiagonalForm& ambient,
                           const SquareClass& lambda);

// Degeneration isotropy: the reduction class of b equals q's entry-1
// class, so the specialized form contains <c, c> = hyperbolic (signs are
// already quotiented away).
bool t0_isotropy_check(const DiagonalForm& q, const SquareClass& reduction);
// Relaxed variant: the slot (1-based) among entries 1..rank-1 whose class
// equals the reduction class, if any.
std::optional<std::size_t> isotropy_entry(const DiagonalForm& q,
                                          const SquareClass& reduction);

// The rank-3 form q(n, r=1) is similar to <b * x_2...x_n / x_0^{n-1},
// x_1/x_0, 1>; returns the displayed form and the scaling that maps it
// onto q.
struct ConicSimilarity {
  bool similar = false;
  SquareClass scaling = SquareClass::trivial(0);
  DiagonalForm displayed;
};
ConicSimilarity conic_similarity_check(int n, const SquareClass& b, const RhoMap& rho);

// ---------------------------------------------------------------- F_p side

struct FiniteFieldForm {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> coeffs;  // nonzero residues mod p

  std::size_t rank() const { return coeffs.size(); }
};

// Thrown by specialize_form when the sample point hits a zero locus; the
// caller rejects the point and redraws.
class specialization_rejected : public std::runtime_error {
 public:
  explicit specialization_rejected(const std::string& what)
      : std::runtime_error(what) {}
};

// Legendre character of a mod p: +1 / -1 (a must be a unit).
int legendre_chi(std::uint64_t a, std::uint64_t p);

// Exhaustive isotropy search over F_p^rank (nontrivial zero of the
// diagonal form).  Desk scale: rank <= 6, p <= 101, with an iteration
// budget as a hard backstop.
bool ff_isotropic(const FiniteFieldForm& f);

// Regular diagonal forms over F_p are classified by rank and discriminant
// square class.
bool ff_forms_equivalent(const FiniteFieldForm& a, const FiniteFieldForm& b);

// Evaluate each entry polynomial at the point (one value per variable of
// the entry's ring); throws specialization_rejected if any value is 0.
FiniteFieldForm specialize_form(const std::vector<Poly>& entries,
                                const std::vector<std::uint64_t>& point,
                                std::uint64_t p);

}  // namespace irratio
