#include "irratio/irratio.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "bounds.hpp"
#include "quadform.hpp"
#include "symbol.hpp"
#include "util.hpp"
#include "witness.hpp"

struct irr_certificate {
  irratio::WitnessCertificate cert;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& what) { g_last_error = what; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs the body and folds every library exception onto a status code.
template <typename Fn>
irr_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const irratio::usage_error& e) {
    set_error(e.what());
    return IRR_ERR_USAGE;
  } catch (const irratio::parse_error& e) {
    set_error(e.what());
    return IRR_ERR_PARSE;
  } catch (const irratio::io_error& e) {
    set_error(e.what());
    return IRR_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return IRR_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return IRR_ERR_INTERNAL;
  }
}

irr_status require(bool ok, const char* what) {
  if (ok) return IRR_OK;
  set_error(what);
  return IRR_ERR_USAGE;
}

}  // namespace

extern "C" {

void irr_params_init(irr_params* params) {
  if (!params) return;
  const irratio::WitnessParams defaults;
  params->n = defaults.n;
  params->r = defaults.r;
  params->d = defaults.d;
  params->construction = "hypersurface";
  params->base = "parametric";
  params->base_param = defaults.base_param;
  params->seed = defaults.seed;
  params->samples = defaults.samples;
  params->oracle_p = defaults.oracle_p;
}

irr_status irr_witness_build(const irr_params* params, irr_certificate** out) {
  if (irr_status s = require(params && out, "build: null argument")) return s;
  return guarded([&] {
    irratio::WitnessParams p;
    p.n = params->n;
    p.r = params->r;
    p.d = params->d;
    p.construction = irratio::construction_from_name(
        params->construction ? params->construction : "");
    p.base = irratio::base_from_name(params->base ? params->base : "");
    p.base_param = params->base_param;
    p.seed = params->seed;
    p.samples = params->samples;
    p.oracle_p = params->oracle_p;
    auto* handle = new irr_certificate{irratio::build_witness(p)};
    *out = handle;
    return IRR_OK;
  });
}

irr_status irr_witness_pass(const irr_certificate* cert, int* pass) {
  if (irr_status s = require(cert && pass, "pass: null argument")) return s;
  *pass = cert->cert.pass ? 1 : 0;
  return IRR_OK;
}

irr_status irr_witness_write(const irr_certificate* cert, const char* path) {
  if (irr_status s = require(cert && path, "write: null argument")) return s;
  return guarded([&] {
    irratio::write_certificate_file(cert->cert, path);
    return IRR_OK;
  });
}

irr_status irr_witness_read(const char* path, irr_certificate** out) {
  if (irr_status s = require(path && out, "read: null argument")) return s;
  return guarded([&] {
    auto* handle = new irr_certificate{irratio::read_certificate_file(path)};
    *out = handle;
    return IRR_OK;
  });
}

irr_status irr_witness_verify(const irr_certificate* cert, char** report) {
  if (irr_status s = require(cert != nullptr, "verify: null certificate")) return s;
  return guarded([&] {
    const irratio::VerifyResult res = irratio::verify_certificate(cert->cert);
    std::string text = res.message + "\n";
    for (const auto& c : res.checks)
      text += std::string(c.pass ? "pass " : "FAIL ") + c.name + ": " + c.detail + "\n";
    if (report) *report = dup_string(text);
    switch (res.status) {
      case irratio::VerifyStatus::Pass: return IRR_OK;
      case irratio::VerifyStatus::Fail:
        set_error(res.message);
        return IRR_ERR_FAIL;
      case irratio::VerifyStatus::Tampered:
        set_error(res.message);
        return IRR_ERR_TAMPERED;
    }
    set_error("unreachable verify status");
    return IRR_ERR_INTERNAL;
  });
}

irr_status irr_witness_summary(const irr_certificate* cert, char** text) {
  if (irr_status s = require(cert && text, "summary: null argument")) return s;
  return guarded([&] {
    *text = dup_string(irratio::certificate_summary(cert->cert));
    return IRR_OK;
  });
}

void irr_witness_free(irr_certificate* cert) { delete cert; }

irr_status irr_decompose_dimension(long long N, int* n, long long* r) {
  if (irr_status s = require(n && r, "decompose: null argument")) return s;
  return guarded([&] {
    const irratio::Decomposition dec = irratio::decompose_dimension(N);
    *n = dec.n;
    *r = dec.r;
    return IRR_OK;
  });
}

irr_status irr_min_degree(long long N, int* degree) {
  if (irr_status s = require(degree != nullptr, "min_degree: null argument")) return s;
  return guarded([&] {
    *degree = irratio::min_degree(N);
    return IRR_OK;
  });
}

irr_status irr_bounds_table(long long max_dim, char** text) {
  if (irr_status s = require(text != nullptr, "bounds_table: null argument")) return s;
  return guarded([&] {
    *text = dup_string(irratio::bounds_table_text(max_dim));
    return IRR_OK;
  });
}

irr_status irr_log_bound(long long N, int* bound, int* tight) {
  if (irr_status s = require(bound && tight, "log_bound: null argument")) return s;
  return guarded([&] {
    const irratio::LogBound lb = irratio::log_bound_check(N);
    *bound = lb.bound;
    *tight = lb.tight ? 1 : 0;
    return IRR_OK;
  });
}

irr_status irr_residue_chain(int n, char** transcript, int* nonzero) {
  if (irr_status s = require(transcript && nonzero, "residue_chain: null argument"))
    return s;
  return guarded([&] {
    const irratio::ResidueCertificate rc = irratio::certify_alpha_nonzero(n);
    *transcript = dup_string(rc.to_string() + "\n");
    *nonzero =
        rc.verdict == irratio::ResidueCertificate::Verdict::Nonzero ? 1 : 0;
    return IRR_OK;
  });
}

irr_status irr_ff_isotropic(unsigned long long p, const unsigned long long* coeffs,
                            size_t rank, int* isotropic) {
  if (irr_status s = require(coeffs && isotropic, "ff_isotropic: null argument"))
    return s;
  return guarded([&] {
    irratio::FiniteFieldForm f;
    f.p = p;
    f.coeffs.assign(coeffs, coeffs + rank);
    *isotropic = irratio::ff_isotropic(f) ? 1 : 0;
    return IRR_OK;
  });
}

irr_status irr_ff_equivalent(unsigned long long p, const unsigned long long* a,
                             size_t rank_a, const unsigned long long* b,
                             size_t rank_b, int* equivalent) {
  if (irr_status s = require(a && b && equivalent, "ff_equivalent: null argument"))
    return s;
  return guarded([&] {
    irratio::FiniteFieldForm fa, fb;
    fa.p = p;
    fa.coeffs.assign(a, a + rank_a);
    fb.p = p;
    fb.coeffs.assign(b, b + rank_b);
    *equivalent = irratio::ff_forms_equivalent(fa, fb) ? 1 : 0;
    return IRR_OK;
  });
}

const char* irr_last_error(void) { return g_last_error.c_str(); }

void irr_string_free(char* s) { std::free(s); }

}  // extern "C"
