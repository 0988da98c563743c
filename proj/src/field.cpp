#include "fatpoints/field.hpp"

#include "fatpoints/error.hpp"

namespace fatpoints {

bool is_prime_number(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p < 3 || p >= (1ULL << 31) || !is_prime_number(p)) {
    throw InvalidInput("prime field modulus must be an odd prime below 2^31, got " +
                       std::to_string(p));
  }
  return Field(Kind::prime, p);
}

std::string Field::describe() const {
  return is_rational() ? std::string("rational") : "prime(" + std::to_string(modulus_) + ")";
}

std::uint32_t ModArith::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t result = 1;
  while (e > 0) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return result;
}

std::uint32_t ModArith::from_mpz(const mpz_class& z) const {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(z.get_mpz_t(), p_));
}

Scalar Scalar::rational(mpq_class q) {
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::residue(std::uint64_t value, std::uint64_t p) {
  return Scalar(Residue{value % p, p});
}

Scalar Scalar::from_rational(const mpq_class& q, const Field& field) {
  if (field.is_rational()) return rational(q);
  const ModArith ar(static_cast<std::uint32_t>(field.modulus()));
  const std::uint32_t den = ar.from_mpz(q.get_den());
  if (den == 0) {
    throw InvalidInput("denominator " + q.get_den().get_str() + " vanishes modulo " +
                       std::to_string(field.modulus()));
  }
  return residue(ar.mul(ar.from_mpz(q.get_num()), ar.inv(den)), field.modulus());
}

Scalar Scalar::from_int(long long v, const Field& field) {
  return from_rational(mpq_class(mpz_class(static_cast<long>(v))), field);
}

Scalar Scalar::parse(std::string_view text, const Field& field) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') {
    throw InvalidInput("not an exact number: '" + std::string(text) + "'");
  }
  auto strip_plus = [](std::string_view s) {
    return std::string(s.front() == '+' ? s.substr(1) : s);
  };
  mpz_class n(strip_plus(num));
  mpz_class d{std::string(den)};
  if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return from_rational(mpq_class(n, d), field);
}

Field Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return Field(Field::Kind::prime, r->modulus);
  return Field::rational();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  return std::get<mpq_class>(value_) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
  return std::get<mpq_class>(value_) == 1;
}

const mpq_class& Scalar::as_rational() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw InvalidInput("expected a rational scalar, found a residue");
}

std::uint64_t Scalar::as_residue() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value;
  throw InvalidInput("expected a residue, found a rational scalar");
}

namespace {

void require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.is_rational() != b.is_rational() ||
      (!a.is_rational() && !(a.field() == b.field()))) {
    throw InvalidInput("mixed field modes: " + a.field().describe() + " vs " +
                       b.field().describe());
  }
}

}  // namespace

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
  }
  return Scalar(mpq_class(-std::get<mpq_class>(value_)));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw InvalidInput("inverse of zero");
  if (const auto* r = std::get_if<Residue>(&value_)) {
    const ModArith ar(static_cast<std::uint32_t>(r->modulus));
    return Scalar(Residue{ar.inv(static_cast<std::uint32_t>(r->value)), r->modulus});
  }
  mpq_class q = 1 / std::get<mpq_class>(value_);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.is_rational()) return Scalar(mpq_class(a.as_rational() + b.as_rational()));
  const auto p = a.field().modulus();
  return Scalar::residue((a.as_residue() + b.as_residue()) % p, p);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.is_rational()) return Scalar(mpq_class(a.as_rational() * b.as_rational()));
  const auto p = a.field().modulus();
  return Scalar::residue(a.as_residue() * b.as_residue() % p, p);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  return std::get<mpq_class>(value_).get_str();
}

int Scalar::compare(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.is_rational()) return cmp(a.as_rational(), b.as_rational());
  const auto x = a.as_residue();
  const auto y = b.as_residue();
  return x < y ? -1 : (x > y ? 1 : 0);
}

}  // namespace fatpoints
