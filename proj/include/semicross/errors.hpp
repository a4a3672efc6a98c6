#pragma once
#include <stdexcept>
#include <string>

namespace semicross {

/* Base of all library errors. */
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Rejected input: malformed systems, dimension mismatches, out-of-cone exponents. */
struct invalid_input : error {
  using error::error;
};

/* File or JSON syntax trouble, distinct from semantic rejection of a well-formed file. */
struct io_error : error {
  using error::error;
};

/* A checked identity that provably holds failed: always an implementation defect,
   never a property of the input. */
struct invariant_violation : error {
  using error::error;
};

}  // namespace semicross
