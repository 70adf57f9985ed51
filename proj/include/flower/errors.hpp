#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace flower {

/// Base type for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: indices out of range, bad parameters, unparseable files.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// A legitimate failure on well-formed input (a node that cannot be repaired,
/// too few packets to reconstruct, inconsistent redundant data, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A failed node holds packets with no replica anywhere else.
class UnrepairableError : public DomainError {
 public:
  UnrepairableError(const std::string& what, std::vector<int> orphan_packets)
      : DomainError(what), orphans_(std::move(orphan_packets)) {}
  const std::vector<int>& orphan_packets() const { return orphans_; }

 private:
  std::vector<int> orphans_;
};

/// Fewer distinct coded packets available than the code dimension.
class InsufficientDataError : public DomainError {
 public:
  InsufficientDataError(const std::string& what, int distinct, int needed)
      : DomainError(what), distinct_(distinct), needed_(needed) {}
  int distinct() const { return distinct_; }
  int needed() const { return needed_; }

 private:
  int distinct_;
  int needed_;
};

/// Redundant data disagrees with itself (corrupted block, forged share).
class IntegrityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A requested helper set does not cover the packets it must provide.
class CoverageError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace flower
