#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redist {

// Base of every error thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Values outside a function's domain, degenerate samples, violated
// preconditions on data. Maps to CLI exit code 1.
class domain_error : public error {
 public:
  using error::error;
};

// A domain error tied to one element of an input array.
class element_error : public domain_error {
 public:
  element_error(std::size_t index, double value, const std::string& what);

  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }
  // The message without the index/value suffix.
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t index_;
  double value_;
  std::string reason_;
};

// Unreadable files, malformed documents, bad specifiers. Maps to exit code 2.
class io_error : public error {
 public:
  using error::error;
};

class format_error : public io_error {
 public:
  using io_error::io_error;
};

}  // namespace redist
