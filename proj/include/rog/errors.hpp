#ifndef ROG_ERRORS_HPP
#define ROG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rog {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input fails a declared precondition or invariant; message names the
// violated axiom and a witness where one exists.
struct ValidationError : Error {
  using Error::Error;
};

// An element does not belong to the carrier it was used with.
struct DomainError : Error {
  using Error::Error;
};

// Enumeration cap or search budget exceeded.
struct ResourceError : Error {
  using Error::Error;
};

// Construction outside the supported fragment (e.g. coproducts).
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace rog

#endif
