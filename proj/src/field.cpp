#include "homlie/field.hpp"

#include <cctype>

namespace homlie {

namespace {

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!is_integer_text(num) || !is_integer_text(den)) {
        throw ParseError("invalid rational literal '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& value) {
    return value.get_str();
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldSpec FieldSpec::gf(std::uint64_t p) {
    if (p > (std::uint64_t(1) << 31) || !is_prime_u64(p)) {
        throw InvariantViolation("GF modulus must be a prime <= 2^31, got " + std::to_string(p));
    }
    FieldSpec f;
    f.kind = Kind::PrimeField;
    f.p = static_cast<std::uint32_t>(p);
    return f;
}

std::string FieldSpec::str() const {
    if (kind == Kind::Rationals) return "Q";
    return "GF(" + std::to_string(p) + ")";
}

Scalar Scalar::zero(const FieldSpec& field) {
    if (field.is_prime_field()) return Scalar(field, std::uint64_t(0));
    return Scalar(field, Rational(0));
}

Scalar Scalar::one(const FieldSpec& field) {
    if (field.is_prime_field()) return Scalar(field, std::uint64_t(1 % field.p));
    return Scalar(field, Rational(1));
}

Scalar Scalar::of_integer(const FieldSpec& field, long long n) {
    if (field.is_prime_field()) {
        long long p = field.p;
        long long r = n % p;
        if (r < 0) r += p;
        return Scalar(field, static_cast<std::uint64_t>(r));
    }
    Rational q(static_cast<long>(n));
    return Scalar(field, std::move(q));
}

Scalar Scalar::of_rational(Rational value) {
    value.canonicalize();
    return Scalar(FieldSpec::rationals(), std::move(value));
}

Scalar Scalar::parse(const FieldSpec& field, std::string_view text) {
    if (field.is_prime_field()) {
        if (!is_integer_text(text)) {
            throw ParseError("invalid " + field.str() + " literal '" + std::string(text) + "'");
        }
        mpz_class n(std::string(text), 10);
        mpz_class r = n % field.p; // sign follows the dividend in GMP
        if (r < 0) r += field.p;
        return Scalar(field, static_cast<std::uint64_t>(r.get_ui()));
    }
    return of_rational(parse_rational(text));
}

bool Scalar::is_zero() const {
    if (field_.is_prime_field()) return std::get<std::uint64_t>(value_) == 0;
    return std::get<Rational>(value_) == 0;
}

bool Scalar::is_one() const {
    if (field_.is_prime_field()) return std::get<std::uint64_t>(value_) == 1 % field_.p;
    return std::get<Rational>(value_) == 1;
}

const Rational& Scalar::rational() const {
    if (field_.is_prime_field()) {
        throw UnsupportedField("rational() called on a GF element");
    }
    return std::get<Rational>(value_);
}

std::uint64_t Scalar::residue() const {
    if (!field_.is_prime_field()) {
        throw UnsupportedField("residue() called on a rational element");
    }
    return std::get<std::uint64_t>(value_);
}

void Scalar::require_same_field(const Scalar& rhs) const {
    if (field_ != rhs.field_) {
        throw FieldMismatch("scalar fields differ: " + field_.str() + " vs " + rhs.field_.str());
    }
}

Scalar Scalar::operator+(const Scalar& rhs) const {
    require_same_field(rhs);
    if (field_.is_prime_field()) {
        std::uint64_t s = std::get<std::uint64_t>(value_) + std::get<std::uint64_t>(rhs.value_);
        return Scalar(field_, s % field_.p);
    }
    Rational r = std::get<Rational>(value_) + std::get<Rational>(rhs.value_);
    return Scalar(field_, std::move(r));
}

Scalar Scalar::operator-(const Scalar& rhs) const {
    return *this + (-rhs);
}

Scalar Scalar::operator*(const Scalar& rhs) const {
    require_same_field(rhs);
    if (field_.is_prime_field()) {
        std::uint64_t s = std::get<std::uint64_t>(value_) * std::get<std::uint64_t>(rhs.value_);
        return Scalar(field_, s % field_.p);
    }
    Rational r = std::get<Rational>(value_) * std::get<Rational>(rhs.value_);
    return Scalar(field_, std::move(r));
}

Scalar Scalar::operator-() const {
    if (field_.is_prime_field()) {
        std::uint64_t v = std::get<std::uint64_t>(value_);
        return Scalar(field_, v == 0 ? 0 : field_.p - v);
    }
    Rational r = -std::get<Rational>(value_);
    return Scalar(field_, std::move(r));
}

Scalar Scalar::inverse() const {
    if (is_zero()) {
        throw DivisionByZero("inverse of zero in " + field_.str());
    }
    if (field_.is_prime_field()) {
        // extended Euclid on (a, p); p prime so gcd is 1
        std::int64_t a = static_cast<std::int64_t>(std::get<std::uint64_t>(value_));
        std::int64_t m = field_.p;
        std::int64_t x0 = 0, x1 = 1, r0 = m, r1 = a;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t tr = r0 - q * r1;
            r0 = r1;
            r1 = tr;
            std::int64_t tx = x0 - q * x1;
            x0 = x1;
            x1 = tx;
        }
        std::int64_t inv = x0 % m;
        if (inv < 0) inv += m;
        return Scalar(field_, static_cast<std::uint64_t>(inv));
    }
    Rational r = 1 / std::get<Rational>(value_);
    return Scalar(field_, std::move(r));
}

Scalar Scalar::operator/(const Scalar& rhs) const {
    require_same_field(rhs);
    return *this * rhs.inverse();
}

bool Scalar::operator==(const Scalar& rhs) const {
    if (field_ != rhs.field_) return false;
    if (field_.is_prime_field()) {
        return std::get<std::uint64_t>(value_) == std::get<std::uint64_t>(rhs.value_);
    }
    return std::get<Rational>(value_) == std::get<Rational>(rhs.value_);
}

std::string Scalar::str() const {
    if (field_.is_prime_field()) {
        return std::to_string(std::get<std::uint64_t>(value_));
    }
    return rational_str(std::get<Rational>(value_));
}

} // namespace homlie
