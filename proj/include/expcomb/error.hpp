#ifndef EXPCOMB_ERROR_HPP
#define EXPCOMB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expcomb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed literal. position() is a character offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotRealized : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidAngledAddress : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace expcomb

#endif
