#pragma once

#include <stdexcept>
#include <string>

namespace helpercode {

// Failure categories. The command-line tool maps these onto process exit
// codes; the library itself only ever throws Error.
enum class errc {
  validation,             // bad shapes, masses, domains, mismatched sizes
  length_mismatch,        // two vectors that must align do not
  parse,                  // malformed instance file
  io,                     // unreadable input / unwritable output
  non_square,             // operation requires a square matrix
  zero_line,              // a row or column carries no mass
  not_doubly_stochastic,  // row/column sums too far from 1
  no_perfect_matching,    // support admits no perfect matching where one is required
  non_matching_component, // mixture component without a matching where one is required
  cap_exceeded,           // alphabet/size cap for an exhaustive search exceeded
  empty_alphabet,         // no symbols left after pruning zero masses
  undecodable,            // protocol setup cannot decode the function exactly
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

// Exit codes for the CLI: 1 validation, 2 computation, 3 I/O.
inline int exit_code(errc c) {
  switch (c) {
    case errc::io:
      return 3;
    case errc::not_doubly_stochastic:
    case errc::no_perfect_matching:
    case errc::non_matching_component:
    case errc::cap_exceeded:
    case errc::undecodable:
      return 2;
    default:
      return 1;
  }
}

}  // namespace helpercode
