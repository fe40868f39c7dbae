#ifndef JTMOM_ERRORS_HPP_
#define JTMOM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace jtmom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scope relation required by an operation does not hold (missing variable,
// non-subset marginalization target, mismatched operand scopes).
class ScopeError : public Error {
 public:
  using Error::Error;
};

// Bad numeric content: NaN or infinite table cells, negative p-part values,
// configuration values outside a variable's frame.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Structural model or junction-tree problems (validation failures, uncovered
// factor scopes, malformed model files).
class ModelError : public Error {
 public:
  using Error::Error;
};

// Mailbox protocol misuse: recomputing a message, sending before the
// prerequisite mailboxes are full, reusing a one-shot engine.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A query scope no tree node covers.
class QueryError : public Error {
 public:
  using Error::Error;
};

// Brute-force enumeration refused because the joint configuration count
// exceeds the cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace jtmom

#endif  // JTMOM_ERRORS_HPP_
