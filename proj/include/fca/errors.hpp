#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fca {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file, stream or argument.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Nothing survived ingestion filters.
class EmptyContextError : public Error {
 public:
  using Error::Error;
};

/// Concept enumeration hit the configured hard limit.
class CapacityError : public Error {
 public:
  CapacityError(std::size_t limit, std::size_t partial_count)
      : Error("concept count exceeds limit of " + std::to_string(limit) + " (enumerated " +
              std::to_string(partial_count) + " before stopping)"),
        limit_(limit),
        partial_count_(partial_count) {}

  std::size_t limit() const noexcept { return limit_; }
  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t limit_;
  std::size_t partial_count_;
};

/// An internal invariant of a lattice or stability report does not hold.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ExtentTooLargeError : public Error {
 public:
  ExtentTooLargeError(std::size_t extent_size, std::size_t cap)
      : Error("extent of size " + std::to_string(extent_size) + " exceeds brute-force cap of " +
              std::to_string(cap) + "; use stability_all instead"),
        extent_size_(extent_size) {}

  std::size_t extent_size() const noexcept { return extent_size_; }

 private:
  std::size_t extent_size_;
};

class UnknownConceptError : public Error {
 public:
  explicit UnknownConceptError(std::size_t id)
      : Error("unknown concept id " + std::to_string(id)) {}
};

class MismatchedLatticeError : public Error {
 public:
  MismatchedLatticeError() : Error("selections come from different lattices") {}
};

}  // namespace fca
