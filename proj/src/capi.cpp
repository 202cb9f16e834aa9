#include "cwb.h"

#include <cstring>
#include <string>

#include "cwb/embedding.hpp"
#include "cwb/folner.hpp"
#include "cwb/graph.hpp"
#include "cwb/run.hpp"
#include "cwb/spectral.hpp"
#include "cwb/topology.hpp"

struct cwb_group {
  cwb::MarkedGroup g;
};

struct cwb_graph {
  cwb::CayleyGraph g;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cwb_status status_of(cwb::errc c) {
  using cwb::errc;
  switch (c) {
    case errc::ok: return CWB_OK;
    case errc::arity: return CWB_E_ARITY;
    case errc::parse: return CWB_E_PARSE;
    case errc::unsupported: return CWB_E_UNSUPPORTED;
    case errc::not_found: return CWB_E_NOT_FOUND;
    case errc::exact_too_large: return CWB_E_EXACT_TOO_LARGE;
    case errc::domain: return CWB_E_DOMAIN;
    case errc::unsatisfiable: return CWB_E_UNSATISFIABLE;
    case errc::cap_exceeded: return CWB_E_CAP_EXCEEDED;
    case errc::numerical: return CWB_E_NUMERICAL;
    case errc::io: return CWB_E_IO;
    case errc::internal: return CWB_E_INTERNAL;
  }
  return CWB_E_INTERNAL;
}

template <typename Fn>
cwb_status guarded(Fn&& fn) {
  try {
    t_last_error.clear();
    fn();
    return CWB_OK;
  } catch (const cwb::Error& e) {
    t_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return CWB_E_INTERNAL;
  }
}

std::string hex_encode(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

}  // namespace

extern "C" {

const char* cwb_version(void) { return cwb::tool_version(); }

const char* cwb_last_error(void) { return t_last_error.c_str(); }

void cwb_string_free(char* s) { std::free(s); }

cwb_status cwb_group_new(const char* spec, cwb_group** out) {
  if (!spec || !out) return CWB_E_INVALID_ARGUMENT;
  return guarded([&] { *out = new cwb_group{cwb::make_group(spec)}; });
}

void cwb_group_free(cwb_group* g) { delete g; }

int cwb_group_arity(const cwb_group* g) { return g ? g->g.arity() : 0; }

cwb_status cwb_group_word_is_identity(const cwb_group* g, const char* word, int* out) {
  if (!g || !word || !out) return CWB_E_INVALID_ARGUMENT;
  return guarded([&] { *out = g->g.word_is_identity(cwb::Word::parse(g->g.arity(), word)); });
}

cwb_status cwb_group_element_key_hex(const cwb_group* g, const char* word, char** out) {
  if (!g || !word || !out) return CWB_E_INVALID_ARGUMENT;
  return guarded([&] {
    cwb::Element e = g->g.evaluate(cwb::Word::parse(g->g.arity(), word));
    *out = dup_string(hex_encode(cwb::element_key(e)));
  });
}

cwb_status cwb_group_generator_order(const cwb_group* g, int index, uint64_t cap,
                                     uint64_t* order, int* at_least) {
  if (!g || !order || !at_least) return CWB_E_INVALID_ARGUMENT;
  return guarded([&] {
    cwb::GeneratorOrder o = cwb::order_of_generator(g->g, index, cap);
    *order = o.value;
    *at_least = o.at_least ? 1 : 0;
  });
}

cwb_status cwb_ball_kernel_json(const cwb_group* g, int radius, char** json_out) {
  if (!g || !json_out) return CWB_E_INVALID_ARGUMENT;
  return guarded([&] { *json_out = dup_string(cwb::ball_kernel(g->g, radius).to_json()); });
}

cwb_status cwb_agreement_radius(const cwb_group* g1, const cwb_group* g2, int rmax,
                                int* radius, char** witness_out) {
  if (!g1 || !g2 || !radius) return CWB_E_INVALID_ARGUMENT;
  return guarded([&] {
    cwb::AgreementReport rep = cwb::agreement_radius(g1->g, g2->g, rmax);
    *radius = rep.radius;
    if (witness_out) *witness_out = rep.witness ? dup_string(rep.witness->text()) : nullptr;
  });
}

cwb_status cwb_graph_build(const cwb_group* g, uint64_t vertex_cap, cwb_graph** out) {
  if (!g || !out) return CWB_E_INVALID_ARGUMENT;
  return guarded([&] { *out = new cwb_graph{cwb::build_graph(g->g, vertex_cap)}; });
}

void cwb_graph_free(cwb_graph* g) { delete g; }

uint64_t cwb_graph_vertex_count(const cwb_graph* g) { return g ? g->g.vertex_count() : 0; }

int cwb_graph_degree(const cwb_graph* g) { return g ? g->g.degree : 0; }

int64_t cwb_graph_diameter(const cwb_graph* g) { return g ? cwb::diameter(g->g) : -1; }

cwb_status cwb_graph_export(const cwb_graph* g, const char* format, char** out) {
  if (!g || !format || !out) return CWB_E_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = dup_string(cwb::export_graph(g->g, cwb::parse_export_format(format))); });
}

cwb_status cwb_graph_lambda1(const cwb_graph* g, double tol, double* lambda1, double* residual,
                             char** method_out) {
  if (!g || !lambda1) return CWB_E_INVALID_ARGUMENT;
  return guarded([&] {
    cwb::SpectralReport rep = cwb::laplacian_lambda1(g->g, tol);
    *lambda1 = rep.lambda1;
    if (residual) *residual = rep.residual;
    if (method_out) *method_out = dup_string(rep.method);
  });
}

cwb_status cwb_folner_profile_csv(const cwb_group* g, int rmax, uint64_t exact_threshold,
                                  char** csv_out) {
  if (!g || !csv_out) return CWB_E_INVALID_ARGUMENT;
  return guarded([&] {
    cwb::FolnerOptions opt;
    opt.exact_threshold = exact_threshold;
    *csv_out = dup_string(cwb::rel_profile(g->g, rmax, opt).to_csv());
  });
}

cwb_status cwb_jv_lower_bound(int64_t diam, double lambda1, int degree, double* out) {
  if (!out) return CWB_E_INVALID_ARGUMENT;
  return guarded([&] { *out = cwb::jv_lower_bound(diam, lambda1, degree); });
}

int cwb_run(int argc, const char* const* argv, char** report_out) {
  if (argc < 0 || (argc > 0 && !argv)) return 2;
  cwb::RunResult res = cwb::run(argc, argv);
  if (report_out) *report_out = dup_string(res.report);
  return res.exit_code;
}

}  // extern "C"
