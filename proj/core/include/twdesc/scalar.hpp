#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace twdesc {

// Coefficient field: the rationals or a prime field F_p.
class Field {
 public:
  enum class Kind : std::uint8_t { kRational, kPrime };

  static Field rationals() { return Field(Kind::kRational, 0); }
  // Throws Error(kInput) unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);
  // Accepts "q" or "fp:<prime>".
  static Field parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::kRational; }
  // 0 for the rationals.
  std::uint64_t characteristic() const { return p_; }
  std::string to_string() const;

  bool operator==(const Field&) const = default;

 private:
  friend class Scalar;
  Field(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

// An exact element of a Field. Rationals are kept in lowest terms with a
// positive denominator; prime field elements are canonical residues in
// [0, p-1]. Mixing fields in one operation throws "field mismatch".
class Scalar {
 public:
  // Rational zero.
  Scalar() = default;

  static Scalar zero(Field f);
  static Scalar one(Field f);
  static Scalar from_int(Field f, long value);
  static Scalar from_rational(Field f, const mpq_class& q);
  // Parses "a/b", "a" or "-a/b"; for prime fields the value is reduced.
  static Scalar parse(Field f, std::string_view text);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  bool operator==(const Scalar& other) const;

  // "a/b" for rationals (always with a denominator), the residue otherwise.
  std::string to_string() const;

  const mpq_class* rational() const { return std::get_if<mpq_class>(&value_); }

 private:
  struct Residue {
    std::uint64_t value;
    std::uint64_t p;
    bool operator==(const Residue&) const = default;
  };

  explicit Scalar(Residue r) : value_(r) {}
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}

  void check_same_field(const Scalar& other) const;

  std::variant<mpq_class, Residue> value_;
};

}  // namespace twdesc
