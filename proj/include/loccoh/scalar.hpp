#ifndef LOCCOH_SCALAR_HPP
#define LOCCOH_SCALAR_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "loccoh/error.hpp"

namespace loccoh {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

} // namespace detail

/// The coefficient field k: exact rationals or Z/p.
class Field {
public:
  enum class Kind { rational, prime };

  static Field rational() { return Field(Kind::rational, 0); }

  static Field prime(std::uint64_t p) {
    if (!detail::is_prime(p)) {
      throw PreconditionError("field modulus " + std::to_string(p) + " is not prime");
    }
    return Field(Kind::prime, p);
  }

  /// Accepts "rational" or "prime:<p>".
  static Field parse(std::string_view descriptor) {
    if (descriptor == "rational") return rational();
    constexpr std::string_view prefix = "prime:";
    if (descriptor.substr(0, prefix.size()) == prefix) {
      const auto digits = descriptor.substr(prefix.size());
      if (digits.empty() || digits.size() > 19 ||
          digits.find_first_not_of("0123456789") != std::string_view::npos) {
        throw PreconditionError("malformed field descriptor '" + std::string(descriptor) + "'");
      }
      return prime(std::stoull(std::string(digits)));
    }
    throw PreconditionError("unknown field descriptor '" + std::string(descriptor) + "'");
  }

  Kind kind() const noexcept { return kind_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  bool is_rational() const noexcept { return kind_ == Kind::rational; }

  std::string descriptor() const {
    return is_rational() ? std::string("rational") : "prime:" + std::to_string(modulus_);
  }

  friend bool operator==(const Field&, const Field&) = default;

private:
  Field(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint64_t modulus_;
};

/// An element of the coefficient field. Rationals are kept reduced with a
/// positive denominator; residues lie in [0, p).
class Scalar {
public:
  static Scalar zero(const Field& field) { return from_integer(field, 0); }
  static Scalar one(const Field& field) { return from_integer(field, 1); }

  static Scalar from_integer(const Field& field, const BigInt& value) {
    if (field.is_rational()) return Scalar(field, Rational(value));
    return Scalar(field, reduce(value, field.modulus()));
  }

  static Scalar from_fraction(const Field& field, const BigInt& num, const BigInt& den) {
    if (den == 0) throw PreconditionError("zero denominator");
    if (field.is_rational()) return Scalar(field, Rational(num, den));
    const std::uint64_t d = reduce(den, field.modulus());
    if (d == 0) {
      throw PreconditionError("denominator is divisible by the field characteristic");
    }
    return from_integer(field, num) / Scalar(field, d);
  }

  /// Parses "a" or "a/b" with b > 0.
  static Scalar parse(const Field& field, std::string_view text) {
    const auto slash = text.find('/');
    auto parse_int = [&](std::string_view digits, bool allow_sign) {
      std::string_view body = digits;
      if (allow_sign && !body.empty() && (body.front() == '-' || body.front() == '+')) {
        body.remove_prefix(1);
      }
      if (body.empty() || body.find_first_not_of("0123456789") != std::string_view::npos) {
        throw PreconditionError("malformed scalar '" + std::string(text) + "'");
      }
      return BigInt(std::string(digits.front() == '+' ? digits.substr(1) : digits));
    };
    if (slash == std::string_view::npos) return from_integer(field, parse_int(text, true));
    const BigInt num = parse_int(text.substr(0, slash), true);
    const BigInt den = parse_int(text.substr(slash + 1), false);
    if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
    return from_fraction(field, num, den);
  }

  const Field& field() const noexcept { return field_; }

  bool is_zero() const {
    return field_.is_rational() ? std::get<Rational>(value_) == 0 : std::get<std::uint64_t>(value_) == 0;
  }

  /// Only rationals can be negative; residues are their own representatives.
  bool is_negative() const { return field_.is_rational() && std::get<Rational>(value_) < 0; }

  Scalar operator-() const {
    if (field_.is_rational()) return Scalar(field_, Rational(-std::get<Rational>(value_)));
    const auto r = std::get<std::uint64_t>(value_);
    return Scalar(field_, r == 0 ? 0 : field_.modulus() - r);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.require_same_field(b);
    if (a.field_.is_rational()) {
      return Scalar(a.field_, Rational(std::get<Rational>(a.value_) + std::get<Rational>(b.value_)));
    }
    const auto p = a.field_.modulus();
    const auto x = std::get<std::uint64_t>(a.value_);
    const auto y = std::get<std::uint64_t>(b.value_);
    return Scalar(a.field_, x >= p - y ? x - (p - y) : x + y);
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.require_same_field(b);
    if (a.field_.is_rational()) {
      return Scalar(a.field_, Rational(std::get<Rational>(a.value_) * std::get<Rational>(b.value_)));
    }
    return Scalar(a.field_, detail::mul_mod(std::get<std::uint64_t>(a.value_),
                                            std::get<std::uint64_t>(b.value_), a.field_.modulus()));
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    a.require_same_field(b);
    if (b.is_zero()) throw PreconditionError("division by zero");
    if (a.field_.is_rational()) {
      return Scalar(a.field_, Rational(std::get<Rational>(a.value_) / std::get<Rational>(b.value_)));
    }
    const auto p = a.field_.modulus();
    const auto inverse = detail::pow_mod(std::get<std::uint64_t>(b.value_), p - 2, p);
    return Scalar(a.field_, detail::mul_mod(std::get<std::uint64_t>(a.value_), inverse, p));
  }

  Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
  Scalar& operator*=(const Scalar& other) { return *this = *this * other; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  /// Exact text: "p/q" or "p" for rationals, the residue for prime fields.
  std::string to_string() const {
    if (!field_.is_rational()) return std::to_string(std::get<std::uint64_t>(value_));
    const auto& q = std::get<Rational>(value_);
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

private:
  Scalar(const Field& field, Rational q) : field_(field), value_(std::move(q)) {}
  Scalar(const Field& field, std::uint64_t r) : field_(field), value_(r) {}

  static std::uint64_t reduce(const BigInt& value, std::uint64_t p) {
    BigInt r = value % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
  }

  void require_same_field(const Scalar& other) const {
    if (!(field_ == other.field_)) {
      throw ShapeMismatch("scalars from different fields: " + field_.descriptor() + " vs " +
                          other.field_.descriptor());
    }
  }

  Field field_;
  std::variant<Rational, std::uint64_t> value_;
};

} // namespace loccoh

#endif
