#include "twdesc/scalar.hpp"

#include <charconv>
#include <limits>

#include "twdesc/error.hpp"

namespace twdesc {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Residues stay below 2^31, so the product fits in 64 bits.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a * b) % p; }

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
  mpz_class r = z % static_cast<unsigned long>(p);
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw_input("not a supported prime: " + std::to_string(p));
  }
  return Field(Kind::kPrime, p);
}

Field Field::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.starts_with("fp:")) {
    std::string_view digits = text.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw_input("bad field specification: " + std::string(text));
    }
    return prime(p);
  }
  throw_input("bad field specification: " + std::string(text));
}

std::string Field::to_string() const {
  return is_rational() ? std::string("q") : "fp:" + std::to_string(p_);
}

Scalar Scalar::zero(Field f) { return from_int(f, 0); }

Scalar Scalar::one(Field f) { return from_int(f, 1); }

Scalar Scalar::from_int(Field f, long value) {
  if (f.is_rational()) return Scalar(mpq_class(value));
  return Scalar(Residue{reduce(mpz_class(value), f.characteristic()), f.characteristic()});
}

Scalar Scalar::from_rational(Field f, const mpq_class& q) {
  if (f.is_rational()) {
    mpq_class c = q;
    c.canonicalize();
    return Scalar(std::move(c));
  }
  const std::uint64_t p = f.characteristic();
  std::uint64_t den = reduce(q.get_den(), p);
  if (den == 0) {
    throw_input("denominator divisible by the characteristic " + std::to_string(p));
  }
  std::uint64_t num = reduce(q.get_num(), p);
  return Scalar(Residue{mul_mod(num, pow_mod(den, p - 2, p), p), p});
}

Scalar Scalar::parse(Field f, std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw_input("bad scalar literal: '" + s + "'");
  }
  if (q.get_den() == 0) throw_input("zero denominator in '" + s + "'");
  q.canonicalize();
  return from_rational(f, q);
}

Field Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return Field(Field::Kind::kPrime, r->p);
  return Field::rationals();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1 % r->p;
  return std::get<mpq_class>(value_) == 1;
}

void Scalar::check_same_field(const Scalar& other) const {
  const auto* a = std::get_if<Residue>(&value_);
  const auto* b = std::get_if<Residue>(&other.value_);
  if ((a == nullptr) != (b == nullptr) || (a && a->p != b->p)) {
    throw_input("field mismatch");
  }
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{r->value == 0 ? 0 : r->p - r->value, r->p});
  }
  return Scalar(mpq_class(-std::get<mpq_class>(value_)));
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_same_field(other);
  if (auto* r = std::get_if<Residue>(&value_)) {
    r->value = (r->value + std::get<Residue>(other.value_).value) % r->p;
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(other.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  check_same_field(other);
  if (auto* r = std::get_if<Residue>(&value_)) {
    r->value = (r->value + r->p - std::get<Residue>(other.value_).value) % r->p;
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(other.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  check_same_field(other);
  if (auto* r = std::get_if<Residue>(&value_)) {
    r->value = mul_mod(r->value, std::get<Residue>(other.value_).value, r->p);
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(other.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  check_same_field(other);
  return *this *= other.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw_math("division by zero");
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{pow_mod(r->value, r->p - 2, r->p), r->p});
  }
  return Scalar(mpq_class(1 / std::get<mpq_class>(value_)));
}

bool Scalar::operator==(const Scalar& other) const {
  check_same_field(other);
  return value_ == other.value_;
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  const auto& q = std::get<mpq_class>(value_);
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace twdesc
