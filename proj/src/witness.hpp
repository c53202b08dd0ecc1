#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poly.hpp"
#include "quadform.hpp"
#include "squareclass.hpp"
#include "symbol.hpp"

namespace irratio {

// Which fibration carries the witness.
//   Hypersurface: X = {e_0 + sum_{i=1}^{r+1} e_i y_i^2 = 0} in P^{n+r+1},
//                 a degree-d hypersurface of dimension N = n + r whose
//                 projection to the x-coordinates has quadric fibers of
//                 rank r+2 (after scaling, the form q below).
//   DoubleCover:  the 2:1 cover of P^{n+r} branched along the even-degree
//                 hypersurface {e_0 + sum_{i=1}^r e_i y_i^2 = 0}; its
//                 fiber form picks up an extra unit entry for the cover
//                 coordinate, again rank r+2.
//   Conic:        the r = 1 hypersurface case, with the rank-3 fiber form
//                 additionally matched against a displayed conic.
enum class Construction { Hypersurface, DoubleCover, Conic };

std::string construction_name(Construction c);
Construction construction_from_name(const std::string& name);
std::string base_name(GVariant v);
GVariant base_from_name(const std::string& name);

struct WitnessParams {
  int n = 2;          // base projective space P^n, 2 <= n <= 16
  long long r = 1;    // 1 <= r <= 2^n - 2; fiber quadrics have rank r+2
  int d = 4;          // degree of the witness, d >= n + 2
  Construction construction = Construction::Hypersurface;
  GVariant base = GVariant::Parametric;
  std::uint64_t base_param = 0;  // field prime (finite-field) / p0 (integral)
  std::uint64_t seed = 424242;   // sampling oracle stream
  int samples = 200;             // oracle sample count, >= 1
  std::uint64_t oracle_p = 10007;  // sampling prime (forced to base_param
                                   // for the finite-field base)
};

// Throws usage_error naming the violated constraint.
void validate_params(const WitnessParams& params);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct OracleReport {
  std::uint64_t seed = 0;
  std::uint64_t p = 0;
  int samples = 0;
  int failures = 0;           // sampling aborts at the first failure
  std::string first_failure;  // empty when clean
};

// Residue-chain transcript in printable form; stored verbatim in the
// certificate so a verifier can diff it against a recomputation without
// needing a symbol parser.
struct AlphaRecord {
  std::string start;
  std::vector<int> divisors;
  std::vector<std::string> steps;
  std::string verdict;  // "nonzero" | "inconclusive"

  const std::string& final_symbol() const {
    return steps.empty() ? start : steps.back();
  }
  bool operator==(const AlphaRecord& other) const = default;
};

AlphaRecord alpha_record(const ResidueCertificate& rc);

// Everything a verifier needs, in one bundle.  All polynomials live in
// one shared ring: x_0..x_n, y_1..y_ny and (parametric base only) t.
// e.front() is the distinguished entry e_0 = h^h_exp * m0 * g.
struct WitnessCertificate {
  WitnessParams params;
  RhoMap rho;
  Poly g;
  Poly h;              // x_0 + x_1 in every generated certificate
  int h_exp = 0;       // always even
  Monomial m0;         // pure x-monomial factor of e_0, length n+1
  std::vector<Poly> e; // e_0, ..., e_m (m = r+1, or r for double covers)
  Poly F;              // e_0 + sum e_i y_i^2
  SquareClass lambda = SquareClass::trivial(0);
  SquareClass mu = SquareClass::trivial(0);
  AlphaRecord alpha;
  std::vector<CheckResult> checks;
  OracleReport oracle;
  bool pass = false;   // stored verdict: every check passed

  int ny() const { return static_cast<int>(e.size()) - 1; }
};

// Slot -> coordinate-subset table; slot 0 carries the empty set, and the
// construction pins land where the degeneration argument needs them:
//   Hypersurface/Conic: slot 1 = {1..n} (the full product);
//   Conic additionally: slot 2 = {2..n};
//   DoubleCover: slot r+1 = {1,2}, plus slot 1 = {1..n} when n >= 3
//                (at n = 2 those two subsets coincide).
// Unpinned slots are filled in graded-lex order: ascending subset size,
// ties by ascending mask value.
RhoMap choose_rho(int n, long long r, Construction construction);

// Builds the witness for the given parameters, runs the full check
// battery (including the sampling oracle) and records the results.
// Throws usage_error on invalid parameters.
WitnessCertificate build_witness(const WitnessParams& params);

// Recomputes alpha, checks, oracle and verdict from the certificate's
// polynomial data, overwriting the stored records.  This is what a
// verifier replays; it is also the way to re-seal a deliberately
// modified certificate so that verification reports FAIL (a failing
// construction) rather than TAMPERED (inconsistent records).
void recompute_records(WitnessCertificate& cert);

enum class VerifyStatus { Pass, Fail, Tampered };

struct VerifyResult {
  VerifyStatus status = VerifyStatus::Tampered;
  std::vector<CheckResult> checks;  // recomputed (empty when structure is broken)
  std::string message;
};

// Three stages, in order:
//  1. structural integrity -- parameter ranges, e_0 = h^h_exp * m0 * g,
//     F = e_0 + sum e_i y_i^2, shape of the stored data.  Violation ->
//     Tampered (the generator cannot emit such a file).
//  2. the check battery, recomputed from the polynomial data.  Any
//     failing check -> Fail, with the names reported.
//  3. stored records (check names + outcomes, residue transcript, oracle
//     report, verdict) compared against the recomputation.  Mismatch ->
//     Tampered.  Otherwise Pass.
VerifyResult verify_certificate(const WitnessCertificate& cert);

// Stable, pretty-printed JSON ("irratio-cert/1").  Serialization is
// deterministic: rebuilding the same parameters reproduces the bytes.
std::string certificate_to_json_text(const WitnessCertificate& cert);
// Throws parse_error on malformed input.
WitnessCertificate certificate_from_json_text(const std::string& text);

// Atomic write (temp file + rename) / whole-file read.  Throw
// std::runtime_error on I/O failure.
void write_certificate_file(const WitnessCertificate& cert, const std::string& path);
WitnessCertificate read_certificate_file(const std::string& path);

// Short human-readable account: parameters, dimension, scalings, check
// outcomes, verdict.
std::string certificate_summary(const WitnessCertificate& cert);

}  // namespace irratio
