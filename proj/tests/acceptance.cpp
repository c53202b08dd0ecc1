// Acceptance gate for the release: nine criteria, one pass/fail line each.
// Each criterion re-derives its expected values independently (hard-coded
// landmark numbers, the CLI driven as a subprocess, hand-entered
// polynomials) so a regression in the library cannot hide behind itself.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "poly.hpp"
#include "squareclass.hpp"
#include "symbol.hpp"
#include "util.hpp"
#include "witness.hpp"

using namespace irratio;

namespace {

using Problems = std::vector<std::string>;

void expect(bool ok, const std::string& what, Problems& problems) {
  if (!ok) problems.push_back(what);
}

// ------------------------------------------------------------ CLI driving

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  CliResult res;
  const std::string cmd = std::string(IRRATIO_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
  const int rc = pclose(pipe);
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

// -------------------------------------------------------- witness helpers

WitnessParams params_for(int n, long long r, int d, Construction c,
                         GVariant base = GVariant::Parametric,
                         std::uint64_t base_param = 0, int samples = 50) {
  WitnessParams p;
  p.n = n;
  p.r = r;
  p.d = d;
  p.construction = c;
  p.base = base;
  p.base_param = base_param;
  p.samples = samples;
  return p;
}

const CheckResult* find_check(const WitnessCertificate& cert, const std::string& name) {
  for (const CheckResult& c : cert.checks)
    if (c.name == name) return &c;
  return nullptr;
}

void expect_check(const WitnessCertificate& cert, const std::string& name,
                  const std::string& where, Problems& problems) {
  const CheckResult* c = find_check(cert, name);
  if (!c)
    problems.push_back(where + ": check " + name + " missing");
  else if (!c->pass)
    problems.push_back(where + ": check " + name + " failed (" + c->detail + ")");
}

std::string tag(const WitnessParams& p) {
  std::ostringstream o;
  o << "(n=" << p.n << ", r=" << p.r << ", d=" << p.d << ")";
  return o.str();
}

// mutation plumbing (mirrors the white-box unit suite)

void rebuild_F(WitnessCertificate& c) {
  const Field f = c.F.field();
  const VarSpace s = c.F.space();
  Poly F = c.e[0];
  for (std::size_t i = 1; i < c.e.size(); ++i)
    F = F + c.e[i] * Poly::variable(f, s, s.y_index(static_cast<int>(i)), 2);
  c.F = F;
}

Poly x0_poly(const WitnessCertificate& c) {
  return Poly::variable(c.F.field(), c.F.space(), 0);
}

void rebuild_e0(WitnessCertificate& c) {
  const Field f = c.F.field();
  const VarSpace s = c.F.space();
  Monomial m0(static_cast<std::size_t>(s.vars()), 0);
  for (std::size_t i = 0; i < c.m0.size(); ++i) m0[i] = c.m0[i];
  c.e[0] = c.h.pow(static_cast<std::uint32_t>(c.h_exp)) *
           Poly::monomial(f, s, m0, 1) * c.g;
}

void drop_g_term(WitnessCertificate& c, const Monomial& xpart, bool with_t2) {
  const VarSpace& s = c.g.space();
  Monomial m(static_cast<std::size_t>(s.vars()), 0);
  for (std::size_t i = 0; i < xpart.size(); ++i) m[i] = xpart[i];
  if (with_t2) m[static_cast<std::size_t>(s.t_index())] = 2;
  if (c.g.terms().count(m) != 1)
    throw std::logic_error("mutation targets a g term that is not present");
  c.g.add_term(m, -c.g.terms().at(m));
  rebuild_e0(c);
  rebuild_F(c);
}

struct Mutation {
  std::string cert_key;       // which memoized base certificate to damage
  std::string expected_check; // the check that must catch it
  std::function<void(WitnessCertificate&)> apply;
};

const WitnessCertificate& base_cert(const std::string& key) {
  static std::map<std::string, WitnessCertificate> cache;
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  WitnessParams p;
  if (key == "A")
    p = params_for(2, 2, 6, Construction::Hypersurface);
  else if (key == "B")
    p = params_for(3, 3, 6, Construction::Hypersurface);
  else if (key == "C")
    p = params_for(2, 1, 5, Construction::Conic);
  else  // "D"
    p = params_for(2, 2, 6, Construction::DoubleCover);
  return cache.emplace(key, build_witness(p)).first->second;
}

std::vector<Mutation> mutation_battery() {
  std::vector<Mutation> muts;
  auto scale_entry = [](std::size_t i) {
    return [i](WitnessCertificate& c) {
      c.e[i] = c.e[i] * x0_poly(c);
      rebuild_F(c);
    };
  };
  auto scale_e0 = [](WitnessCertificate& c) {
    c.m0[0] += 1;
    c.e[0] = c.e[0] * x0_poly(c);
    rebuild_F(c);
  };
  auto swap_rho = [](std::size_t a, std::size_t b) {
    return [a, b](WitnessCertificate& c) {
      auto t = c.rho.table();
      std::swap(t[a], t[b]);
      c.rho = RhoMap(c.params.n, t);
    };
  };
  auto drop_pure = [](std::size_t nx, std::size_t var) {
    return [nx, var](WitnessCertificate& c) {
      Monomial x(nx, 0);
      x[var] = 4;
      drop_g_term(c, x, true);
    };
  };

  // 8 scaled entries: the fiber form is no longer isometric to rho's shape
  muts.push_back({"A", "isometry_scaling", scale_entry(1)});
  muts.push_back({"A", "isometry_scaling", scale_entry(2)});
  muts.push_back({"A", "isometry_scaling", scale_entry(3)});
  muts.push_back({"A", "isometry_scaling", scale_e0});
  muts.push_back({"B", "isometry_scaling", scale_entry(1)});
  muts.push_back({"B", "isometry_scaling", scale_entry(4)});
  muts.push_back({"B", "isometry_scaling", scale_e0});
  muts.push_back({"C", "isometry_scaling", scale_entry(2)});
  // 4 permuted rho tables: the pinned slots move
  muts.push_back({"A", "rho_pinning", swap_rho(1, 2)});
  muts.push_back({"B", "rho_pinning", swap_rho(1, 2)});
  muts.push_back({"C", "rho_pinning", swap_rho(1, 2)});
  muts.push_back({"D", "rho_pinning", swap_rho(1, 3)});
  // 4 dropped pure powers x_i^4 t^2 of g
  muts.push_back({"A", "pure_powers", drop_pure(3, 0)});
  muts.push_back({"A", "pure_powers", drop_pure(3, 1)});
  muts.push_back({"B", "pure_powers", drop_pure(4, 0)});
  muts.push_back({"B", "pure_powers", drop_pure(4, 3)});
  // 2 dishonest scaling claims
  muts.push_back({"A", "isometry_scaling", [](WitnessCertificate& c) {
                    c.mu = c.mu * SquareClass::coordinate_ratio(0, 1, c.params.n);
                  }});
  muts.push_back({"C", "isometry_scaling", [](WitnessCertificate& c) {
                    c.mu = SquareClass::trivial(c.params.n);
                  }});
  // 1 low-degree entry: the coordinate plane multiplicity drops below d-2
  muts.push_back({"A", "plane_multiplicity", [](WitnessCertificate& c) {
                    c.e[1] = Poly::variable(c.F.field(), c.F.space(), 1);
                    rebuild_F(c);
                  }});
  // 1 dropped product term: g collapses to a perfect square
  muts.push_back({"A", "b_not_square", [](WitnessCertificate& c) {
                    drop_g_term(c, Monomial{2, 1, 1}, false);
                  }});
  return muts;
}

// --------------------------------------------------------- the criteria

void criterion_bounds_table(Problems& problems) {
  const CliResult res = run_cli("bounds --max-dim 1032");
  expect(res.exit_code == 0, "CLI exited with " + std::to_string(res.exit_code), problems);
  // the full frontier: nine blocks, dimension caps against minimal degrees
  const std::array<long long, 9> dim_max{4, 9, 18, 35, 68, 133, 262, 519, 1032};
  std::vector<std::string> rows;
  for (int i = 0; i < 9; ++i) {
    std::ostringstream row;
    row << "row n=" << i + 2 << " dim_max=" << dim_max[static_cast<std::size_t>(i)]
        << " deg_min=" << i + 4;
    rows.push_back(row.str());
  }
  std::size_t row_count = 0;
  std::istringstream in(res.output);
  std::string line;
  std::vector<std::string> seen;
  while (std::getline(in, line))
    if (line.rfind("row n=", 0) == 0) seen.push_back(line);
  expect(seen == rows, "table rows disagree with the expected frontier", problems);
  (void)row_count;
}

void criterion_named_dimensions(Problems& problems) {
  const Decomposition d3 = decompose_dimension(3);
  expect(d3.n == 2 && d3.r == 1, "dimension 3 should split as n=2, r=1", problems);
  expect(min_degree(3) == 4, "minimal degree at dimension 3 should be 4", problems);
  expect(min_degree(4) == 4, "minimal degree at dimension 4 should be 4", problems);
  expect(min_degree(5) == 5, "minimal degree at dimension 5 should be 5", problems);
  expect(min_degree(1048576) == 22, "minimal degree at dimension 2^20 should be 22",
         problems);
  const CliResult res = run_cli("bounds --dim 1048576");
  expect(res.exit_code == 0 &&
             res.output.find("n=20 r=1048556 min_degree=22") != std::string::npos,
         "CLI report for dimension 2^20 is wrong: " + res.output, problems);
}

void criterion_residue_chains(Problems& problems) {
  for (int n = 1; n <= 16; ++n) {
    const ResidueCertificate rc = certify_alpha_nonzero(n);
    if (rc.verdict != ResidueCertificate::Verdict::Nonzero) {
      problems.push_back("chain at n=" + std::to_string(n) + " is not NONZERO");
      continue;
    }
    expect(static_cast<int>(rc.steps.size()) == n - 1,
           "chain at n=" + std::to_string(n) + " should take n-1 residue steps",
           problems);
    expect(rc.final_symbol().to_string() == "(x0*x1)",
           "chain at n=" + std::to_string(n) + " should end at the class of x1/x0",
           problems);
  }
}

void criterion_hypersurface_grid(Problems& problems) {
  const std::array<const char*, 8> must_pass{
      "pure_powers",    "square_mod_coordinates", "coprimality",
      "isometry_scaling", "subform_scaling",      "specialization_isotropy",
      "b_not_square",   "plane_multiplicity"};
  for (int n = 2; n <= 4; ++n) {
    for (long long r = 1; r <= (1LL << n) - 2; ++r) {
      for (int d = n + 2; d <= n + 3; ++d) {
        const WitnessParams p = params_for(n, r, d, Construction::Hypersurface);
        const WitnessCertificate cert = build_witness(p);
        const std::string where = "hypersurface " + tag(p);
        expect(cert.pass, where + ": overall verdict is not PASS", problems);
        for (const char* name : must_pass) expect_check(cert, name, where, problems);
        // the odd-degree layout must advertise the x0*x1 rescaling
        if (d % 2 == 1) {
          expect(cert.lambda.to_string() == "x0*x1" && cert.mu.to_string() == "x0*x1",
                 where + ": odd degree should report lambda = mu = x0*x1", problems);
        }
        const CheckResult* plane = find_check(cert, "plane_multiplicity");
        if (plane && plane->pass)
          expect(plane->detail.find("multiplicity " + std::to_string(d - 2)) !=
                     std::string::npos,
                 where + ": plane multiplicity should equal d-2", problems);
      }
    }
  }
}

void criterion_double_cover_grid(Problems& problems) {
  for (int n = 2; n <= 3; ++n) {
    for (long long r = 1; r <= (1LL << n) - 2; ++r) {
      for (int d = 6; d <= 8; d += 2) {
        const WitnessParams p = params_for(n, r, d, Construction::DoubleCover);
        if (n == 2 && r == 1) {
          // at n = 2 a single extra subset cannot avoid both branch
          // coordinates, so the builder must refuse up front
          try {
            build_witness(p);
            problems.push_back("double cover (n=2, r=1) should be rejected");
          } catch (const usage_error&) {
          }
          continue;
        }
        const WitnessCertificate cert = build_witness(p);
        const std::string where = "double cover " + tag(p);
        expect(cert.pass, where + ": overall verdict is not PASS", problems);
        expect(cert.lambda.to_string() == "x1*x2" && cert.mu.to_string() == "x1*x2",
               where + ": should report lambda = mu = x1*x2", problems);
      }
    }
  }
}

void criterion_square_recovery(Problems& problems) {
  // the classic symmetric discriminant quadric: every coordinate
  // restriction is a perfect square yet the form itself is not
  const Field q;
  const VarSpace s{3, 0, false};
  const Poly g = Poly::parse(
      q, s, "x0^2 + x1^2 + x2^2 - 2*x0*x1 - 2*x0*x2 - 2*x1*x2");
  expect(check_cond_pure_powers(g, 2), "pure coordinate powers should be present",
         problems);
  expect(check_cond_square_mod_coords(g, 2),
         "g should become a square modulo every coordinate", problems);
  expect(!multivariate_sqrt(g).has_value(), "g itself must not be a perfect square",
         problems);
  const auto root = multivariate_sqrt(g.set_var_zero(2));
  if (!root) {
    problems.push_back("g mod x2 should be a perfect square");
  } else {
    expect(*root == Poly::parse(q, s, "x0 - x1"),
           "sqrt(g mod x2) should be x0 - x1, got " + root->to_string(), problems);
    expect(*root * *root == g.set_var_zero(2), "recovered root does not square back",
           problems);
  }
}

void criterion_oracle_consistency(Problems& problems) {
  WitnessParams p = params_for(2, 2, 6, Construction::Hypersurface);
  p.samples = 200;
  p.oracle_p = 101;
  const WitnessCertificate cert = build_witness(p);
  expect(cert.pass, "witness (n=2, r=2, d=6) is not PASS", problems);
  expect(cert.oracle.p == 101, "oracle should sample over p=101", problems);
  expect(cert.oracle.samples == 200, "oracle should draw 200 samples", problems);
  expect(cert.oracle.failures == 0,
         "oracle reported failures: " + cert.oracle.first_failure, problems);
  expect_check(cert, "oracle_equivalence", "oracle", problems);
  expect_check(cert, "oracle_group_closure", "oracle", problems);
}

void criterion_mutation_red_team(Problems& problems) {
  const std::vector<Mutation> muts = mutation_battery();
  expect(muts.size() == 20, "battery must hold exactly 20 mutations", problems);
  int idx = 0;
  for (const Mutation& m : muts) {
    ++idx;
    WitnessCertificate cert = base_cert(m.cert_key);
    m.apply(cert);
    recompute_records(cert);
    const std::string where =
        "mutation " + std::to_string(idx) + " on " + m.cert_key;
    expect(!cert.pass, where + ": verdict should be FAIL", problems);
    const VerifyResult vr = verify_certificate(cert);
    expect(vr.status == VerifyStatus::Fail, where + ": verifier should say FAIL",
           problems);
    bool named = false;
    for (const CheckResult& c : vr.checks)
      if (!c.pass && c.name == m.expected_check) named = true;
    expect(named, where + ": " + m.expected_check + " should be among the failures",
           problems);
    // one representative goes through the executable: exit code 2 is FAIL
    if (idx == 1) {
      const std::string path = "acceptance_mutant.json";
      write_certificate_file(cert, path);
      const CliResult res = run_cli("check " + path);
      expect(res.exit_code == 2,
             "CLI check of a failing certificate should exit 2, got " +
                 std::to_string(res.exit_code),
             problems);
      std::remove(path.c_str());
    }
  }
}

void criterion_base_variants(Problems& problems) {
  std::vector<WitnessParams> builds;
  for (std::uint64_t pp : {3ull, 7ull, 101ull})
    builds.push_back(params_for(2, 2, 4, Construction::Hypersurface,
                                GVariant::FiniteField, pp));
  for (std::uint64_t p0 : {3ull, 5ull})
    builds.push_back(params_for(2, 2, 4, Construction::Hypersurface,
                                GVariant::Integral, p0));
  for (const WitnessParams& p : builds) {
    const WitnessCertificate cert = build_witness(p);
    const std::string where =
        (p.base == GVariant::FiniteField ? "finite-field p=" : "integral p0=") +
        std::to_string(p.base_param);
    expect(cert.pass, where + ": overall verdict is not PASS", problems);
    expect_check(cert, "pure_powers", where, problems);
    expect_check(cert, "square_mod_coordinates", where, problems);
    // r = 2^n - 2 puts every subset class in play, so b itself must
    // stay a non-square for the fiber form to remain anisotropic
    expect_check(cert, "b_not_square", where, problems);
  }
}

struct Criterion {
  const char* name;
  double budget_s;  // 0 = no explicit time budget
  void (*run)(Problems&);
};

}  // namespace

int main() {
  const std::array<Criterion, 9> criteria{{
      {"bounds-table-frontier", 1.0, criterion_bounds_table},
      {"landmark-dimensions", 1.0, criterion_named_dimensions},
      {"residue-chains-1-16", 1.0, criterion_residue_chains},
      {"hypersurface-grid", 60.0, criterion_hypersurface_grid},
      {"double-cover-grid", 30.0, criterion_double_cover_grid},
      {"square-recovery-regression", 1.0, criterion_square_recovery},
      {"oracle-consistency-200", 10.0, criterion_oracle_consistency},
      {"mutation-red-team-20", 0.0, criterion_mutation_red_team},
      {"alternative-base-variants", 10.0, criterion_base_variants},
  }};

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    Problems problems;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(problems);
    } catch (const std::exception& e) {
      problems.push_back(std::string("unhandled exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      std::ostringstream o;
      o << "time budget exceeded: " << secs << "s > " << c.budget_s << "s";
      problems.push_back(o.str());
    }
    const bool ok = problems.empty();
    if (!ok) ++failed;
    std::printf("%s  criterion %zu %s (%.2fs)\n", ok ? "pass" : "FAIL", i + 1,
                c.name, secs);
    for (const std::string& what : problems)
      std::printf("      - %s\n", what.c_str());
  }
  if (failed) std::printf("%d of 9 criteria failed\n", failed);
  else std::printf("all 9 criteria pass\n");
  return failed ? 1 : 0;
}
