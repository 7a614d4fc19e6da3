#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "homlie/errors.hpp"

namespace homlie {

/// Exact rational number. Always kept canonical: reduced, denominator > 0.
using Rational = mpq_class;

/// Parses "a/b" or "a" (optional leading '-') into a canonical rational.
/// Rejects empty input, stray characters and zero denominators.
Rational parse_rational(std::string_view text);

/// Canonical text form: "a/b" with gcd(a,b)=1 and b>0, or plain "a".
std::string rational_str(const Rational& value);

/// Either the rationals or a prime field GF(p) with p <= 2^31.
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };

    Kind kind = Kind::Rationals;
    std::uint32_t p = 0; // prime modulus, meaningful only for PrimeField

    static FieldSpec rationals() { return FieldSpec{}; }
    /// Checks primality by trial division; throws InvariantViolation otherwise.
    static FieldSpec gf(std::uint64_t p);

    bool is_prime_field() const { return kind == Kind::PrimeField; }
    bool operator==(const FieldSpec&) const = default;
    std::string str() const;
};

bool is_prime_u64(std::uint64_t n);

/// Field element tagged with its FieldSpec. Canonical forms: rationals are
/// reduced with positive denominator, GF(p) residues live in [0, p).
/// Mixing fields in arithmetic throws FieldMismatch; equality across fields
/// is simply false.
class Scalar {
public:
    Scalar() : field_(FieldSpec::rationals()), value_(Rational(0)) {}

    static Scalar zero(const FieldSpec& field);
    static Scalar one(const FieldSpec& field);
    static Scalar of_integer(const FieldSpec& field, long long n);
    static Scalar of_rational(Rational value); // always over Q
    /// Parses the canonical text form for the given field. GF(p) accepts any
    /// integer string (reduced mod p); Q accepts "a/b" or "a".
    static Scalar parse(const FieldSpec& field, std::string_view text);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    /// Value as a rational; only valid over Q.
    const Rational& rational() const;
    /// Residue in [0, p); only valid over GF(p).
    std::uint64_t residue() const;

    Scalar operator+(const Scalar& rhs) const;
    Scalar operator-(const Scalar& rhs) const;
    Scalar operator*(const Scalar& rhs) const;
    Scalar operator-() const;
    /// Multiplicative inverse; throws DivisionByZero on zero.
    Scalar inverse() const;
    Scalar operator/(const Scalar& rhs) const;

    bool operator==(const Scalar& rhs) const;
    bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

    std::string str() const;

private:
    Scalar(FieldSpec field, std::variant<Rational, std::uint64_t> value)
        : field_(field), value_(std::move(value)) {}

    void require_same_field(const Scalar& rhs) const;

    FieldSpec field_;
    std::variant<Rational, std::uint64_t> value_;
};

} // namespace homlie
