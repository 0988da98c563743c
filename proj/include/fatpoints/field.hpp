#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace fatpoints {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

/// Field of definition for a computation: the rationals or a prime field F_p.
class Field {
 public:
  enum class Kind { rational, prime };

  Field() = default;

  static Field rational() { return Field{}; }
  /// Throws InvalidInput unless p is an odd prime below 2^31.
  static Field prime(std::uint64_t p = kDefaultPrime);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::rational; }
  bool is_prime() const { return kind_ == Kind::prime; }
  /// Zero for the rationals.
  std::uint64_t modulus() const { return modulus_; }

  std::string describe() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;
  Field(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_ = Kind::rational;
  std::uint64_t modulus_ = 0;
};

bool is_prime_number(std::uint64_t p);

/// Arithmetic modulo an odd prime p < 2^31 with Barrett reduction.
class ModArith {
 public:
  explicit ModArith(std::uint32_t p)
      : p_(p), barrett_(static_cast<std::uint64_t>(~0ULL) / p) {}

  std::uint32_t modulus() const { return p_; }

  /// Reduces any x < 2^64.
  std::uint32_t reduce(std::uint64_t x) const {
    const std::uint64_t q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// a must be nonzero.
  std::uint32_t inv(std::uint32_t a) const { return pow(a, p_ - 2); }
  std::uint32_t from_mpz(const mpz_class& z) const;

 private:
  std::uint32_t p_;
  std::uint64_t barrett_;
};

/// Exact field element: a canonical rational or a residue modulo p.
class Scalar {
 public:
  Scalar() = default;

  static Scalar rational(mpq_class q);
  static Scalar residue(std::uint64_t value, std::uint64_t p);
  /// The image of an integer (or reduced fraction) in the given field.
  static Scalar from_rational(const mpq_class& q, const Field& field);
  static Scalar from_int(long long v, const Field& field);
  static Scalar zero(const Field& field) { return from_int(0, field); }
  static Scalar one(const Field& field) { return from_int(1, field); }
  /// Parses an integer or "a/b" fraction into the given field.
  static Scalar parse(std::string_view text, const Field& field);

  Field field() const;
  bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& as_rational() const;
  std::uint64_t as_residue() const;

  Scalar operator-() const;
  Scalar inverse() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Integer or "a/b" for rationals, decimal residue for F_p.
  std::string to_string() const;

  /// Total order used only for canonical sorting (numeric for both modes).
  static int compare(const Scalar& a, const Scalar& b);

 private:
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
    friend bool operator==(const Residue&, const Residue&) = default;
  };

  explicit Scalar(mpq_class q) : value_(std::move(q)) {}
  explicit Scalar(Residue r) : value_(r) {}

  std::variant<mpq_class, Residue> value_{mpq_class(0)};
};

}  // namespace fatpoints
