#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

enum class ErrorCode {
  domain,       // argument outside a validity range
  data,         // malformed or unphysical material data
  geometry,     // impossible grating/beam geometry
  infeasible,   // no solution exists (phase matching, grating pair)
  degenerate,   // problem has no unique answer
  unsupported,  // model combination not implemented
  truncated,    // spectrum lobe not contained in the grid
  validation,   // scenario / user input rejected
  io,           // file system or format error
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace spdc
