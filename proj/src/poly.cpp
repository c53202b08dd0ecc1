#include "poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "util.hpp"

namespace irratio {

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint64_t p) {
  if (!is_odd_prime_u64(p) || p > (1ULL << 31))
    throw usage_error("field: odd prime p < 2^31 violated (p=" + std::to_string(p) + ")");
  return Field(p);
}

mpq_class Field::normalize(const mpq_class& c) const {
  if (is_rationals()) return c;
  const mpz_class pz(static_cast<unsigned long>(p_));
  mpz_class num = c.get_num() % pz;
  if (num < 0) num += pz;
  mpz_class den = c.get_den() % pz;
  if (den < 0) den += pz;
  if (den == 0)
    throw std::domain_error("coefficient denominator not invertible mod p");
  if (den != 1) {
    const std::uint64_t inv = invmod_u64(den.get_ui(), p_);
    num = (num * mpz_class(static_cast<unsigned long>(inv))) % pz;
  }
  return mpq_class(num);
}

mpq_class Field::add(const mpq_class& a, const mpq_class& b) const {
  return normalize(a + b);
}
mpq_class Field::sub(const mpq_class& a, const mpq_class& b) const {
  return normalize(a - b);
}
mpq_class Field::mul(const mpq_class& a, const mpq_class& b) const {
  return normalize(a * b);
}
mpq_class Field::div(const mpq_class& a, const mpq_class& b) const {
  if (b == 0) throw std::domain_error("coefficient division by zero");
  return normalize(a / b);
}
mpq_class Field::neg(const mpq_class& a) const { return normalize(-a); }

std::optional<mpq_class> Field::sqrt(const mpq_class& c) const {
  if (is_rationals()) {
    if (c == 0) return mpq_class(0);
    if (c < 0) return std::nullopt;
    if (!mpz_perfect_square_p(c.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(c.get_den().get_mpz_t()))
      return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), c.get_den().get_mpz_t());
    return mpq_class(rn, rd);
  }
  const std::uint64_t a = normalize(c).get_num().get_ui();
  if (a == 0) return mpq_class(0);
  if (powmod_u64(a, (p_ - 1) / 2, p_) != 1) return std::nullopt;
  std::uint64_t r;
  if (p_ % 4 == 3) {
    r = powmod_u64(a, (p_ + 1) / 4, p_);
  } else {
    // Tonelli-Shanks
    std::uint64_t q = p_ - 1, s = 0;
    while (q % 2 == 0) q /= 2, ++s;
    std::uint64_t z = 2;
    while (powmod_u64(z, (p_ - 1) / 2, p_) == 1) ++z;
    std::uint64_t m = s;
    std::uint64_t cc = powmod_u64(z, q, p_);
    std::uint64_t t = powmod_u64(a, q, p_);
    r = powmod_u64(a, (q + 1) / 2, p_);
    while (t != 1) {
      std::uint64_t i = 0, tt = t;
      while (tt != 1) {
        tt = mulmod_u64(tt, tt, p_);
        ++i;
      }
      std::uint64_t bexp = m - i - 1;
      std::uint64_t bb = cc;
      while (bexp--) bb = mulmod_u64(bb, bb, p_);
      m = i;
      cc = mulmod_u64(bb, bb, p_);
      t = mulmod_u64(t, cc, p_);
      r = mulmod_u64(r, bb, p_);
    }
  }
  if (r > p_ - r) r = p_ - r;  // canonical residue in [0, (p-1)/2]
  return mpq_class(mpz_class(static_cast<unsigned long>(r)));
}

std::string Field::coeff_string(const mpq_class& c) const {
  return c.get_str();
}

// ------------------------------------------------------------- VarSpace

std::string VarSpace::var_name(int v) const {
  if (v < nx) return "x" + std::to_string(v);
  if (v < nx + ny) return "y" + std::to_string(v - nx + 1);
  if (with_t && v == t_index()) return "t";
  throw usage_error("var_name: index out of range");
}

// ----------------------------------------------------------------- Poly

Poly Poly::monomial(Field f, VarSpace s, Monomial m, const mpq_class& c) {
  Poly out(f, s);
  out.add_term(m, c);
  return out;
}

Poly Poly::constant(Field f, VarSpace s, const mpq_class& c) {
  return monomial(f, s, Monomial(static_cast<std::size_t>(s.vars()), 0), c);
}

Poly Poly::variable(Field f, VarSpace s, int var, std::uint32_t power) {
  Monomial m(static_cast<std::size_t>(s.vars()), 0);
  if (var < 0 || var >= s.vars()) throw usage_error("variable: index out of range");
  m[static_cast<std::size_t>(var)] = power;
  return monomial(f, s, m, 1);
}

void Poly::add_term(const Monomial& m, const mpq_class& c) {
  if (m.size() != static_cast<std::size_t>(space_.vars()))
    throw usage_error("add_term: exponent vector size mismatch");
  const mpq_class nc = field_.normalize(c);
  if (nc == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, nc);
  if (!inserted) {
    it->second = field_.add(it->second, nc);
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& other) const {
  if (!(space_ == other.space_) || !(field_ == other.field_))
    throw usage_error("poly add: ring mismatch");
  Poly out(*this);
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-(const Poly& other) const { return *this + (-other); }

Poly Poly::operator-() const {
  Poly out(field_, space_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, field_.neg(c));
  return out;
}

Poly Poly::operator*(const Poly& other) const {
  if (!(space_ == other.space_) || !(field_ == other.field_))
    throw usage_error("poly mul: ring mismatch");
  Poly out(field_, space_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      Monomial m = ma;
      for (std::size_t v = 0; v < m.size(); ++v) m[v] += mb[v];
      out.add_term(m, field_.mul(ca, cb));
    }
  }
  return out;
}

Poly Poly::scaled(const mpq_class& c) const {
  Poly out(field_, space_);
  const mpq_class nc = field_.normalize(c);
  if (nc == 0) return out;
  for (const auto& [m, coef] : terms_) out.terms_.emplace(m, field_.mul(coef, nc));
  return out;
}

Poly Poly::pow(std::uint32_t e) const {
  Poly acc = constant(field_, space_, 1);
  for (std::uint32_t k = 0; k < e; ++k) acc = acc * *this;
  return acc;
}

namespace {
int xy_degree(const VarSpace& s, const Monomial& m) {
  int d = 0;
  for (int v = 0; v < s.nx + s.ny; ++v) d += static_cast<int>(m[static_cast<std::size_t>(v)]);
  return d;
}
}  // namespace

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, xy_degree(space_, m));
  return d;
}

bool Poly::is_homogeneous() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    const int dm = xy_degree(space_, m);
    if (d == -1)
      d = dm;
    else if (d != dm)
      return false;
  }
  return true;
}

int Poly::min_x_degree() const {
  int best = -1;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (int v = 0; v < space_.nx; ++v) d += static_cast<int>(m[static_cast<std::size_t>(v)]);
    if (best == -1 || d < best) best = d;
  }
  return best;
}

bool Poly::all_y_degrees_even() const {
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (int v = space_.nx; v < space_.nx + space_.ny; ++v)
      d += static_cast<int>(m[static_cast<std::size_t>(v)]);
    if (d % 2 != 0) return false;
  }
  return true;
}

std::pair<Monomial, mpq_class> Poly::leading() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return *terms_.begin();
}

Poly Poly::monic() const {
  return scaled(field_.div(1, leading_coefficient()));
}

Poly Poly::set_var_zero(int var) const {
  if (var < 0 || var >= space_.vars()) throw usage_error("set_var_zero: index out of range");
  Poly out(field_, space_);
  for (const auto& [m, c] : terms_)
    if (m[static_cast<std::size_t>(var)] == 0) out.terms_.emplace(m, c);
  return out;
}

std::uint32_t Poly::min_var_exponent(int var) const {
  if (var < 0 || var >= space_.vars()) throw usage_error("min_var_exponent: index out of range");
  std::uint32_t best = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m[static_cast<std::size_t>(var)];
    if (first || e < best) best = e;
    first = false;
  }
  return best;
}

Poly Poly::coefficients_mod(std::uint64_t q) const {
  if (!field_.is_rationals())
    throw usage_error("coefficients_mod: polynomial already over a prime field");
  Poly out(Field::prime(q), space_);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

std::uint64_t Poly::value_at(const std::vector<std::uint64_t>& point, std::uint64_t p) const {
  if (point.size() != static_cast<std::size_t>(space_.vars()))
    throw usage_error("value_at: point size mismatch");
  if (!field_.is_rationals() && field_.characteristic() != p)
    throw usage_error("value_at: field characteristic mismatch");
  const mpz_class pz(static_cast<unsigned long>(p));
  std::uint64_t acc = 0;
  for (const auto& [m, c] : terms_) {
    mpz_class num = c.get_num() % pz;
    if (num < 0) num += pz;
    std::uint64_t v = num.get_ui();
    mpz_class den = c.get_den() % pz;
    if (den == 0) throw std::domain_error("value_at: denominator vanishes mod p");
    if (den != 1) v = mulmod_u64(v, invmod_u64(den.get_ui(), p), p);
    for (std::size_t idx = 0; idx < m.size(); ++idx)
      if (m[idx]) v = mulmod_u64(v, powmod_u64(point[idx] % p, m[idx], p), p);
    acc = (acc + v) % p;
  }
  return acc;
}

Poly Poly::embedded(const VarSpace& target) const {
  if (target.nx != space_.nx || target.ny < space_.ny ||
      (space_.with_t && !target.with_t))
    throw usage_error("embedded: incompatible variable spaces");
  Poly out(field_, target);
  for (const auto& [m, c] : terms_) {
    Monomial nm(static_cast<std::size_t>(target.vars()), 0);
    for (int v = 0; v < space_.nx + space_.ny; ++v)
      nm[static_cast<std::size_t>(v)] = m[static_cast<std::size_t>(v)];
    if (space_.with_t)
      nm[static_cast<std::size_t>(target.t_index())] =
          m[static_cast<std::size_t>(space_.t_index())];
    out.terms_.emplace(std::move(nm), c);
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpq_class a = c;
    bool neg = false;
    if (field_.is_rationals() && a < 0) {
      neg = true;
      a = -a;
    }
    if (first) {
      if (neg) out += '-';
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    for (int v = 0; v < space_.vars(); ++v) {
      const std::uint32_t e = m[static_cast<std::size_t>(v)];
      if (!e) continue;
      if (!mono.empty()) mono += '*';
      mono += space_.var_name(v);
      if (e > 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty())
      out += field_.coeff_string(a);
    else if (a == 1)
      out += mono;
    else
      out += field_.coeff_string(a) + "*" + mono;
  }
  return out;
}

namespace {

mpq_class parse_rational(const std::string& tok) {
  for (char ch : tok)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/'))
      throw parse_error("poly: bad coefficient '" + tok + "'");
  try {
    mpq_class q(tok);
    if (q.get_den() == 0) throw parse_error("poly: zero denominator in '" + tok + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw parse_error("poly: bad coefficient '" + tok + "'");
  }
}

int var_index_of(const VarSpace& s, const std::string& name) {
  if (name == "t") {
    if (!s.with_t) throw parse_error("poly: t not allowed in this ring");
    return s.t_index();
  }
  if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'y')) {
    int k;
    try {
      k = std::stoi(name.substr(1));
    } catch (const std::exception&) {
      throw parse_error("poly: bad variable '" + name + "'");
    }
    if (name[0] == 'x') {
      if (k < 0 || k >= s.nx) throw parse_error("poly: variable out of range '" + name + "'");
      return s.x_index(k);
    }
    if (k < 1 || k > s.ny) throw parse_error("poly: variable out of range '" + name + "'");
    return s.y_index(k);
  }
  throw parse_error("poly: bad variable '" + name + "'");
}

}  // namespace

Poly Poly::parse(Field f, VarSpace s, const std::string& text) {
  std::string str;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) str += ch;
  if (str.empty()) throw parse_error("poly: empty input");
  Poly out(f, s);
  if (str == "0") return out;
  std::size_t pos = 0;
  int sign = 1;
  if (str[0] == '+' || str[0] == '-') {
    sign = str[0] == '-' ? -1 : 1;
    pos = 1;
  }
  while (pos < str.size()) {
    std::size_t end = pos;
    while (end < str.size() && str[end] != '+' && str[end] != '-') ++end;
    const std::string term = str.substr(pos, end - pos);
    if (term.empty()) throw parse_error("poly: empty term");
    mpq_class coeff(sign);
    Monomial m(static_cast<std::size_t>(s.vars()), 0);
    std::size_t fpos = 0;
    while (fpos < term.size()) {
      std::size_t fend = term.find('*', fpos);
      if (fend == std::string::npos) fend = term.size();
      const std::string factor = term.substr(fpos, fend - fpos);
      if (factor.empty()) throw parse_error("poly: empty factor");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        coeff *= parse_rational(factor);
      } else {
        const std::size_t caret = factor.find('^');
        const std::string name = factor.substr(0, caret);
        std::uint32_t e = 1;
        if (caret != std::string::npos) {
          const std::string etok = factor.substr(caret + 1);
          if (etok.empty() ||
              !std::all_of(etok.begin(), etok.end(), [](char ch) {
                return std::isdigit(static_cast<unsigned char>(ch));
              }))
            throw parse_error("poly: bad exponent in '" + factor + "'");
          e = static_cast<std::uint32_t>(std::stoul(etok));
        }
        m[static_cast<std::size_t>(var_index_of(s, name))] += e;
      }
      fpos = fend + 1;
    }
    out.add_term(m, coeff);
    if (end < str.size()) {
      sign = str[end] == '-' ? -1 : 1;
      pos = end + 1;
    } else {
      pos = end;
    }
  }
  return out;
}

// -------------------------------------------------------------- builders

GPoly build_g(int n, GVariant variant, std::uint64_t param) {
  if (n < 1 || n > SquareClass::kMaxN)
    throw usage_error("build_g: 1 <= n <= 60 violated (n=" + std::to_string(n) + ")");
  const int a = (n + 2) / 2;  // ceil((n+1)/2)
  const int degg = 2 * a;
  const int eps = ((n + 1) % 2 == 0) ? 0 : 1;

  Field f = Field::rationals();
  if (variant == GVariant::FiniteField) {
    f = Field::prime(param);
  } else if (variant == GVariant::Integral) {
    if (!is_odd_prime_u64(param))
      throw usage_error("build_g: integral variant needs an odd prime p0 >= 3");
  }
  const VarSpace s{n + 1, 0, variant == GVariant::Parametric};

  Poly G(f, s);
  for (int i = 0; i <= n; ++i)
    G = G + Poly::variable(f, s, s.x_index(i), static_cast<std::uint32_t>(a));

  Monomial pm(static_cast<std::size_t>(s.vars()), 0);
  pm[0] = static_cast<std::uint32_t>(1 + eps);
  for (int i = 1; i <= n; ++i) pm[static_cast<std::size_t>(i)] = 1;
  const Poly product = Poly::monomial(f, s, pm, 1);

  GPoly out;
  out.n = n;
  out.variant = variant;
  out.eps = eps;
  out.deg = degg;
  out.param = (variant == GVariant::Parametric) ? 0 : param;

  Poly g(f, s);
  switch (variant) {
    case GVariant::Parametric:
      g = Poly::variable(f, s, s.t_index(), 2) * G * G - product;
      break;
    case GVariant::FiniteField:
      g = G * G + product;
      break;
    case GVariant::Integral:
      g = Poly::constant(f, s, mpq_class(static_cast<unsigned long>(param * param))) * G * G +
          product;
      break;
  }
  out.g = g;

  // Distinguished degeneration, computed honestly from the polynomial.
  std::optional<Poly> reduced;
  if (variant == GVariant::Parametric)
    reduced = g.set_var_zero(s.t_index());
  else if (variant == GVariant::Integral)
    reduced = g.coefficients_mod(param);
  if (reduced) {
    if (reduced->term_count() != 1)
      throw std::logic_error("build_g: degeneration is not a monomial");
    const Monomial& mono = reduced->leading().first;
    std::vector<long long> exps(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) exps[static_cast<std::size_t>(i)] = mono[static_cast<std::size_t>(i)];
    exps[0] += degg;  // class is taken over x_0^{deg g}
    out.reduction_class = SquareClass::from_monomial(n, exps);
  }
  return out;
}

std::vector<int> missing_pure_powers(const Poly& g, int n) {
  const VarSpace& s = g.space();
  if (s.nx != n + 1) throw usage_error("pure powers: polynomial not over P^n");
  const int deg = g.degree();
  std::vector<bool> found(static_cast<std::size_t>(n + 1), false);
  for (const auto& [m, c] : g.terms()) {
    int hot = -1;
    bool pure = true;
    for (int v = 0; v < s.nx + s.ny && pure; ++v) {
      const std::uint32_t e = m[static_cast<std::size_t>(v)];
      if (!e) continue;
      if (hot != -1 || v >= s.nx || static_cast<int>(e) != deg)
        pure = false;
      else
        hot = v;
    }
    if (pure && hot >= 0) found[static_cast<std::size_t>(hot)] = true;
  }
  std::vector<int> missing;
  for (int i = 0; i <= n; ++i)
    if (!found[static_cast<std::size_t>(i)]) missing.push_back(i);
  return missing;
}

bool check_cond_pure_powers(const Poly& g, int n) {
  return missing_pure_powers(g, n).empty();
}

bool check_cond_square_mod_coords(const Poly& g, int n) {
  const VarSpace& s = g.space();
  if (s.nx != n + 1) throw usage_error("square mod coords: polynomial not over P^n");
  for (int i = 0; i <= n; ++i)
    if (!multivariate_sqrt(g.set_var_zero(s.x_index(i)))) return false;
  return true;
}

std::optional<Poly> multivariate_sqrt(const Poly& f) {
  if (f.is_zero()) return f;
  if (f.is_homogeneous() && f.degree() % 2 != 0) return std::nullopt;
  const Field& fld = f.field();

  const auto [lm, lc] = f.leading();
  Monomial sm = lm;
  for (auto& e : sm) {
    if (e % 2) return std::nullopt;
    e /= 2;
  }
  const auto rc = fld.sqrt(lc);
  if (!rc) return std::nullopt;

  Poly s = Poly::monomial(fld, f.space(), sm, *rc);
  Poly r = f - s * s;
  const mpq_class two_lc = fld.add(*rc, *rc);
  while (!r.is_zero()) {
    const auto [rm, rcoef] = r.leading();
    Monomial q = rm;
    for (std::size_t v = 0; v < q.size(); ++v) {
      if (q[v] < sm[v]) return std::nullopt;
      q[v] -= sm[v];
    }
    // the next term of any square root is strictly below the leading term
    if (!Poly::LexGreater{}(sm, q)) return std::nullopt;
    const Poly term = Poly::monomial(fld, f.space(), q, fld.div(rcoef, two_lc));
    r = r - term * (s + s + term);
    s = s + term;
  }
  if (!(s * s == f)) return std::nullopt;
  return s;
}

bool structured_coprimality(const std::vector<Poly>& e, const FactorStructure& fs,
                            std::string* detail) {
  if (e.size() < 2) throw usage_error("coprimality: need at least two entries");
  const VarSpace& s = e[0].space();
  if (fs.m0.size() != static_cast<std::size_t>(s.nx))
    throw usage_error("coprimality: m0 exponent vector size mismatch");
  if (fs.g.is_zero() || fs.h.is_zero())
    throw usage_error("coprimality: zero factor");
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i].term_count() != 1)
      throw usage_error("coprimality: entries after e0 must be monomials");

  for (int j = 0; j < s.nx; ++j) {
    std::uint32_t common = ~0U;
    for (std::size_t i = 1; i < e.size(); ++i)
      common = std::min(common, e[i].min_var_exponent(s.x_index(j)));
    if (common == 0) continue;
    const bool in_m0 = fs.m0[static_cast<std::size_t>(j)] > 0;
    const bool in_h = fs.h_exp > 0 && fs.h.min_var_exponent(j) > 0;
    const bool in_g = fs.g.min_var_exponent(j) > 0;
    if (in_m0 || in_h || in_g) {
      if (detail) *detail = "common divisor x" + std::to_string(j);
      return false;
    }
  }
  return true;
}

PlaneCheck jacobian_vanishes_on_plane(const Poly& F) {
  if (F.space().ny == 0)
    throw usage_error("plane check: no fiber coordinates, plane undefined");
  if (F.is_zero()) throw usage_error("plane check: zero polynomial");
  PlaneCheck out;
  out.multiplicity = F.min_x_degree();
  out.vanishes = F.all_y_degrees_even() && out.multiplicity >= 2;
  return out;
}

bool fermat_smoothness(long long N, long long d, std::uint64_t p) {
  if (N < 1) throw usage_error("fermat smoothness: N >= 1 violated");
  if (d < 1) throw usage_error("fermat smoothness: d >= 1 violated");
  return p == 0 || static_cast<std::uint64_t>(d) % p != 0;
}

}  // namespace irratio
