#include "cwb/error.hpp"

namespace cwb {

const char* errc_name(errc c) {
  switch (c) {
    case errc::ok: return "ok";
    case errc::arity: return "arity_error";
    case errc::parse: return "parse_error";
    case errc::unsupported: return "unsupported_parameter";
    case errc::not_found: return "not_found";
    case errc::exact_too_large: return "exact_too_large";
    case errc::domain: return "domain_error";
    case errc::unsatisfiable: return "unsatisfiable";
    case errc::cap_exceeded: return "cap_exceeded";
    case errc::numerical: return "numerical_failure";
    case errc::io: return "io_error";
    case errc::internal: return "internal_error";
  }
  return "unknown";
}

}  // namespace cwb
