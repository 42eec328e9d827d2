#ifndef LOCCOH_ERROR_HPP
#define LOCCOH_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loccoh {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different modules (shape, box, field or variable count).
class ShapeMismatch : public Error {
public:
  using Error::Error;
};

/// An exponent has the wrong sign for its variable's role.
class RoleViolation : public Error {
public:
  using Error::Error;
};

/// An exponent lies outside the truncation box.
class OutOfBox : public Error {
public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// A structured document is malformed or has the wrong schema version.
class DocumentError : public Error {
public:
  using Error::Error;
};

} // namespace loccoh

#endif
