#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "squareclass.hpp"

namespace irratio {

// Coefficient field: exact rationals (arbitrary precision, no floating
// point anywhere) or a prime field F_p with p an odd prime.  Prime-field
// elements are stored as integer residues 0..p-1 inside mpq_class so both
// fields share one coefficient representation.
class Field {
 public:
  Field() = default;  // rationals
  static Field rationals() { return Field(0); }
  static Field prime(std::uint64_t p);

  bool is_rationals() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }
  bool operator==(const Field& other) const = default;

  mpq_class normalize(const mpq_class& c) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class div(const mpq_class& a, const mpq_class& b) const;  // b != 0
  mpq_class neg(const mpq_class& a) const;
  // Canonical square root if c is a square in the field: the positive
  // root over the rationals, the residue in [0, (p-1)/2] over F_p.
  std::optional<mpq_class> sqrt(const mpq_class& c) const;
  std::string coeff_string(const mpq_class& c) const;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

// Variable layout of a polynomial ring: homogeneous coordinates
// x_0..x_{nx-1}, fiber coordinates y_1..y_ny, and optionally the scalar
// parameter t (always ordered last).  Grading: total degree in the x and
// y variables; t does not count.
struct VarSpace {
  int nx = 0;
  int ny = 0;
  bool with_t = false;

  int vars() const { return nx + ny + (with_t ? 1 : 0); }
  int x_index(int i) const { return i; }             // 0 <= i < nx
  int y_index(int k) const { return nx + (k - 1); }  // 1 <= k <= ny
  int t_index() const { return nx + ny; }
  std::string var_name(int v) const;
  bool operator==(const VarSpace& other) const = default;
};

using Monomial = std::vector<std::uint32_t>;

// Sparse exact-coefficient polynomial in a fixed VarSpace, ordered
// lexicographically with x_0 largest and t smallest (map iteration yields
// the leading term first).  Construction does not force homogeneity --
// certificate data under verification may be adversarial -- but
// is_homogeneous()/degree() expose the grading and all builders in this
// module emit homogeneous output.
class Poly {
 public:
  struct LexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
  };
  using TermMap = std::map<Monomial, mpq_class, LexGreater>;

  Poly() = default;  // zero polynomial of the empty ring
  Poly(Field f, VarSpace s) : field_(f), space_(s) {}

  static Poly monomial(Field f, VarSpace s, Monomial m, const mpq_class& c);
  static Poly constant(Field f, VarSpace s, const mpq_class& c);
  static Poly variable(Field f, VarSpace s, int var, std::uint32_t power = 1);

  const Field& field() const { return field_; }
  const VarSpace& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // mutation
  void add_term(const Monomial& m, const mpq_class& c);

  // arithmetic
  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly operator-() const;
  Poly scaled(const mpq_class& c) const;
  Poly pow(std::uint32_t e) const;
  bool operator==(const Poly& other) const = default;

  // grading (t excluded); degree of the zero polynomial is -1
  int degree() const;
  bool is_homogeneous() const;
  int min_x_degree() const;   // over all terms; -1 when zero
  bool all_y_degrees_even() const;

  // leading term in lex order (requires nonzero)
  std::pair<Monomial, mpq_class> leading() const;
  mpq_class leading_coefficient() const { return leading().second; }
  Poly monic() const;  // divide by the leading coefficient

  // substitution of 0 for one variable (image in the quotient by x_i)
  Poly set_var_zero(int var) const;
  // minimal exponent of a variable over all terms (0 when zero poly)
  std::uint32_t min_var_exponent(int var) const;

  // coefficient reduction QQ -> F_q (denominators must be units mod q)
  Poly coefficients_mod(std::uint64_t q) const;

  // evaluation mod p at a full point (one value per variable)
  std::uint64_t value_at(const std::vector<std::uint64_t>& point, std::uint64_t p) const;

  // embedding into a larger space with the same x-block (y zeros inserted)
  Poly embedded(const VarSpace& target) const;

  std::string to_string() const;
  static Poly parse(Field f, VarSpace s, const std::string& text);

 private:
  Field field_;
  VarSpace space_;
  TermMap terms_;
};

// How the distinguished form g is produced.
enum class GVariant { Parametric, FiniteField, Integral };

struct GPoly {
  int n = 0;
  GVariant variant = GVariant::Parametric;
  Poly g;
  int eps = 0;     // exponent of the extra x_0 in the product term
  int deg = 0;     // deg g = 2 * ceil((n+1)/2), always even
  std::uint64_t param = 0;  // p for FiniteField, p0 for Integral, 0 otherwise
  // Square class of g under the distinguished degeneration (parameter
  // t -> 0, or reduction mod p0), over x_0^deg; absent for FiniteField.
  std::optional<SquareClass> reduction_class;
};

// g over P^n:
//   Parametric:   t^2 (x_0^a + ... + x_n^a)^2 - x_0^eps x_0...x_n  over QQ(t)
//   FiniteField:  (x_0^a + ... + x_n^a)^2 + x_0^eps x_0...x_n      over F_p
//   Integral:     p0^2 (x_0^a + ... + x_n^a)^2 + x_0^eps x_0...x_n over QQ
// with a = ceil((n+1)/2) and eps = 0 iff n+1 is even.
GPoly build_g(int n, GVariant variant, std::uint64_t param = 0);

// Every pure power x_i^{deg g} appears in g with nonzero coefficient
// (t powers act as unit scalars and are ignored); equivalently g does not
// vanish at any coordinate point of P^n.
bool check_cond_pure_powers(const Poly& g, int n);
std::vector<int> missing_pure_powers(const Poly& g, int n);

// The image of g in k[x]/(x_i) is a square for every i = 0..n.
bool check_cond_square_mod_coords(const Poly& g, int n);

// Exact square root: returns s with s*s = f (canonical leading sign) or
// nothing.  Leading-coefficient peeling in lex order with exact division
// at every step and a final multiplication check.
std::optional<Poly> multivariate_sqrt(const Poly& f);

// Factor structure of the distinguished entry: e_0 = h^h_exp * m0 * g
// where m0 is a monomial in the x variables.
struct FactorStructure {
  Poly h;
  int h_exp = 0;
  Monomial m0;  // x-part exponents, length nx
  Poly g;
};

// gcd(e_0, ..., e_last) = 1, checked through the known factor shapes:
// entries 1.. are required to be monomials; a common variable divisor
// must divide m0, h or g, each of which is tested for divisibility
// directly.  Exact for this structure -- no general factorization runs.
bool structured_coprimality(const std::vector<Poly>& e, const FactorStructure& fs,
                            std::string* detail = nullptr);

struct PlaneCheck {
  bool vanishes = false;  // Jacobian criterion along {x_0 = ... = 0}
  int multiplicity = 0;   // minimal x-degree over all terms
};

// Structural singularity check along the plane {x_0 = ... = x_{nx-1} = 0}
// inside the (x, y) space: requires at least one y variable, every term
// of even total y-degree (fiberwise even structure), and every term of
// x-degree >= 2.  Reports the vanishing multiplicity along the plane.
PlaneCheck jacobian_vanishes_on_plane(const Poly& F);

// Degree-d Fermat hypersurface smoothness: true iff the characteristic
// (p = 0 for char 0) does not divide d.
bool fermat_smoothness(long long N, long long d, std::uint64_t p);

}  // namespace irratio
