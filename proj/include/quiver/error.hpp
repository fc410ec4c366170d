#pragma once

#include <stdexcept>
#include <string>

namespace quiver {

// Base for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands built over different quivers, or block dimensions that do not
// match the multiplicity matrix.
class shape_error : public error {
 public:
  using error::error;
};

// Malformed input data (quiver files, polynomial text, permutations).
class parse_error : public error {
 public:
  using error::error;
};

// An operation refused to run because a configured bound was exceeded.
class size_limit_error : public error {
 public:
  using error::error;
};

// Arguments outside an operation's domain.
class precondition_error : public error {
 public:
  using error::error;
};

// Two independent computations of the same quantity disagreed.
class consistency_error : public error {
 public:
  using error::error;
};

}  // namespace quiver
