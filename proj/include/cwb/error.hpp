#pragma once

#include <stdexcept>
#include <string>

namespace cwb {

// Error taxonomy shared by the C++ core, the C API and the CLI exit codes.
// Validation problems (bad input, bad spec) map to exit code 2; resource and
// numerical failures map to exit code 3.
enum class errc {
  ok = 0,
  arity,            // letter out of range / mixed arities
  parse,            // malformed spec, word or flag
  unsupported,      // parameter outside the implemented families
  not_found,        // element or component not present
  exact_too_large,  // exact minimization beyond the configured threshold
  domain,           // function not evaluable on the requested range
  unsatisfiable,    // no parameter choice satisfies the inequality
  cap_exceeded,     // vertex/window/memory cap hit
  numerical,        // iterative solver failed to converge
  io,
  internal,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline bool is_resource_error(errc c) { return c == errc::cap_exceeded || c == errc::numerical; }

}  // namespace cwb
