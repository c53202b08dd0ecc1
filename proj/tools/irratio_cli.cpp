// Command-line front end.  Talks to the library exclusively through the
// public C API.
//
// Exit codes: 0 success / verified PASS, 1 usage, I/O or decode problems,
// 2 a named check failed, 3 certificate records inconsistent (tampered).

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "irratio/irratio.h"

namespace {

int exit_code(irr_status st) {
  switch (st) {
    case IRR_OK: return 0;
    case IRR_ERR_FAIL: return 2;
    case IRR_ERR_TAMPERED: return 3;
    default: return 1;  // usage, io, parse, internal
  }
}

int complain(irr_status st) {
  std::fprintf(stderr, "error: %s\n", irr_last_error());
  return exit_code(st);
}

bool parse_form(const std::string& text, std::vector<unsigned long long>* out) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    if (item.empty()) return false;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
    if (end == nullptr || *end != '\0') return false;
    out->push_back(v);
    pos = comma + 1;
  }
  return !out->empty();
}

int run_gen(int n, long long r, int d, const std::string& variant,
            const std::string& base, unsigned long long base_param,
            unsigned long long seed, int samples, unsigned long long oracle_p,
            const std::string& out_path) {
  irr_params p;
  irr_params_init(&p);
  p.n = n;
  if (r < 0) {
    r = (base == "finite-field") ? (1LL << n) - 2 : 1;
    if (variant == "double-cover" && n == 2) r = 2;
  }
  p.r = r;
  if (d == 0) {
    d = n + 2;  // minimal admissible degree
    if (variant == "double-cover") d = 2 * ((n + 2) / 2) + 2;
  }
  p.d = d;
  p.construction = variant.c_str();
  p.base = base.c_str();
  p.base_param = base_param;
  p.seed = seed;
  p.samples = samples;
  p.oracle_p = oracle_p;

  irr_certificate* cert = nullptr;
  irr_status st = irr_witness_build(&p, &cert);
  if (st != IRR_OK) return complain(st);

  char* text = nullptr;
  if (irr_witness_summary(cert, &text) == IRR_OK) {
    std::fputs(text, stdout);
    irr_string_free(text);
  }
  st = irr_witness_write(cert, out_path.c_str());
  if (st != IRR_OK) {
    irr_witness_free(cert);
    return complain(st);
  }
  std::printf("certificate written to %s\n", out_path.c_str());
  int pass = 0;
  irr_witness_pass(cert, &pass);
  irr_witness_free(cert);
  return pass ? 0 : 2;
}

int run_check(const std::string& path) {
  irr_certificate* cert = nullptr;
  irr_status st = irr_witness_read(path.c_str(), &cert);
  if (st != IRR_OK) return complain(st);
  char* report = nullptr;
  st = irr_witness_verify(cert, &report);
  if (report) {
    std::fputs(report, stdout);
    irr_string_free(report);
  }
  switch (st) {
    case IRR_OK: std::printf("PASS\n"); break;
    case IRR_ERR_FAIL: std::printf("FAIL\n"); break;
    case IRR_ERR_TAMPERED: std::printf("TAMPERED\n"); break;
    default:
      irr_witness_free(cert);
      return complain(st);
  }
  irr_witness_free(cert);
  return exit_code(st);
}

int run_bounds(long long max_dim, long long dim) {
  if (max_dim > 0) {
    char* text = nullptr;
    const irr_status st = irr_bounds_table(max_dim, &text);
    if (st != IRR_OK) return complain(st);
    std::fputs(text, stdout);
    irr_string_free(text);
    return 0;
  }
  int n = 0, deg = 0, bound = 0, tight = 0;
  long long r = 0;
  irr_status st = irr_decompose_dimension(dim, &n, &r);
  if (st == IRR_OK) st = irr_min_degree(dim, &deg);
  if (st == IRR_OK) st = irr_log_bound(dim, &bound, &tight);
  if (st != IRR_OK) return complain(st);
  std::printf("N=%lld n=%d r=%lld min_degree=%d log_bound=%d tight=%d\n", dim, n,
              r, deg, bound, tight);
  return 0;
}

int run_residue(int n) {
  char* transcript = nullptr;
  int nonzero = 0;
  const irr_status st = irr_residue_chain(n, &transcript, &nonzero);
  if (st != IRR_OK) return complain(st);
  std::fputs(transcript, stdout);
  irr_string_free(transcript);
  return nonzero ? 0 : 2;
}

int run_oracle(unsigned long long p, const std::string& form_text,
               const std::string& form2_text) {
  std::vector<unsigned long long> form;
  if (!parse_form(form_text, &form)) {
    std::fprintf(stderr, "error: --form wants comma-separated coefficients\n");
    return 1;
  }
  if (form2_text.empty()) {
    int isotropic = 0;
    const irr_status st = irr_ff_isotropic(p, form.data(), form.size(), &isotropic);
    if (st != IRR_OK) return complain(st);
    std::printf("%s\n", isotropic ? "isotropic" : "anisotropic");
    return 0;
  }
  std::vector<unsigned long long> form2;
  if (!parse_form(form2_text, &form2)) {
    std::fprintf(stderr, "error: --form2 wants comma-separated coefficients\n");
    return 1;
  }
  int equivalent = 0;
  const irr_status st = irr_ff_equivalent(p, form.data(), form.size(), form2.data(),
                                          form2.size(), &equivalent);
  if (st != IRR_OK) return complain(st);
  std::printf("%s\n", equivalent ? "equivalent" : "inequivalent");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"witness hypersurface generator and certificate checker"};
  app.require_subcommand(1);

  // gen
  int n = 2, d = 0, samples = 200;
  long long r = -1;
  std::string variant = "hypersurface", base = "parametric", out_path;
  unsigned long long base_param = 0, seed = 424242, oracle_p = 10007;
  CLI::App* gen = app.add_subcommand("gen", "build a witness and write its certificate");
  gen->add_option("--n", n, "base projective space P^n (2..16)")->capture_default_str();
  gen->add_option("--r", r, "fiber count (default 1; 2^n-2 for the finite-field base)");
  gen->add_option("--d", d, "witness degree (default: minimal admissible)");
  gen->add_option("--variant", variant, "hypersurface | double-cover | conic")
      ->check(CLI::IsMember({"hypersurface", "double-cover", "conic"}))
      ->capture_default_str();
  gen->add_option("--base", base, "parametric | finite-field | integral")
      ->check(CLI::IsMember({"parametric", "finite-field", "integral"}))
      ->capture_default_str();
  gen->add_option("--base-param", base_param,
                  "prime for the finite-field / integral bases");
  gen->add_option("--seed", seed, "oracle sampling seed")->capture_default_str();
  gen->add_option("--samples", samples, "oracle sample count")->capture_default_str();
  gen->add_option("--oracle-p", oracle_p, "oracle sampling prime")->capture_default_str();
  gen->add_option("-o,--out", out_path, "certificate file to write")->required();

  // check
  std::string check_path;
  CLI::App* check = app.add_subcommand("check", "verify a certificate file");
  check->add_option("file", check_path, "certificate to verify")->required();

  // bounds
  long long max_dim = 0, dim = 0;
  CLI::App* bounds = app.add_subcommand("bounds", "dimension/degree bookkeeping");
  CLI::Option* omax = bounds->add_option("--max-dim", max_dim, "print the block table up to this dimension");
  CLI::Option* odim = bounds->add_option("--dim", dim, "report one dimension");
  omax->excludes(odim);

  // residue
  int residue_n = 2;
  CLI::App* residue = app.add_subcommand("residue", "residue-chain transcript for the distinguished symbol");
  residue->add_option("--n", residue_n, "ambient P^n")->required();

  // oracle
  unsigned long long oracle_prime = 3;
  std::string form_text, form2_text;
  CLI::App* oracle = app.add_subcommand("oracle", "finite-field form queries");
  oracle->add_option("--p", oracle_prime, "odd prime <= 101")->required();
  oracle->add_option("--form", form_text, "comma-separated diagonal coefficients")->required();
  oracle->add_option("--form2", form2_text, "second form: test equivalence instead of isotropy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (gen->parsed())
    return run_gen(n, r, d, variant, base, base_param, seed, samples, oracle_p, out_path);
  if (check->parsed()) return run_check(check_path);
  if (bounds->parsed()) {
    if (max_dim <= 0 && dim <= 0) {
      std::fprintf(stderr, "error: bounds wants --max-dim or --dim\n");
      return 1;
    }
    return run_bounds(max_dim, dim);
  }
  if (residue->parsed()) return run_residue(residue_n);
  if (oracle->parsed()) return run_oracle(oracle_prime, form_text, form2_text);
  return 1;
}
