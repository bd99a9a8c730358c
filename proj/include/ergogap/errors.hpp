#pragma once

#include <stdexcept>
#include <string>

namespace ergogap {

/// Malformed input: bad expression text, invalid spec file, rate violating a
/// precondition. Maps to CLI exit code 2.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity the library refuses to certify at the requested horizon
/// (non-enclosable tail, rejected test function). Maps to CLI exit code 3.
class CertifyError : public std::runtime_error {
 public:
  explicit CertifyError(const std::string& what) : std::runtime_error(what) {}
};

/// A checked internal invariant failed; always a bug. Maps to CLI exit code 4.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace ergogap
