#pragma once

// Exact rational numbers with a machine-word fast path.
//
// Values whose numerator and denominator both fit in int64 are stored inline;
// anything larger is promoted to a GMP rational and demoted again as soon as
// it fits. The representation is always canonical: lowest terms, positive
// denominator, so equality is structural.

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace kantor {

class Rational {
public:
    Rational() noexcept = default;

    template <std::integral I>
    Rational(I n) // NOLINT(google-explicit-constructor)
    {
        if constexpr (std::is_signed_v<I>) {
            set_small_or_big(static_cast<long long>(n), 1);
        } else {
            if (static_cast<unsigned long long>(n) <= static_cast<unsigned long long>(INT64_MAX))
                num_ = static_cast<std::int64_t>(n);
            else
                set_big(mpq_class(mpz_class(std::to_string(n))));
        }
    }

    Rational(long long num, long long den);
    explicit Rational(const mpq_class& q);

    Rational(const Rational& other);
    Rational(Rational&& other) noexcept = default;
    Rational& operator=(const Rational& other);
    Rational& operator=(Rational&& other) noexcept = default;
    ~Rational() = default;

    /// Parses "p", "-p" or "p/q".
    static Rational parse(std::string_view text);

    [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
    [[nodiscard]] bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
    [[nodiscard]] bool is_integer() const noexcept;
    [[nodiscard]] bool is_small() const noexcept { return !big_; }
    [[nodiscard]] int sign() const noexcept;

    [[nodiscard]] mpq_class to_mpq() const;
    [[nodiscard]] mpz_class numerator() const;
    [[nodiscard]] mpz_class denominator() const;
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] double to_double() const;

    [[nodiscard]] Rational abs() const;
    [[nodiscard]] Rational inverse() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;
    Rational operator+() const { return *this; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& q);

    /// Hash consistent with operator==.
    [[nodiscard]] std::size_t hash() const noexcept;

private:
    void set_small_or_big(long long num, long long den);
    void set_big(mpq_class q);
    void assign_from_mpq(const mpq_class& q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

/// Greatest common divisor of two integers represented as (integral) rationals.
Rational gcd(const Rational& a, const Rational& b);

/// Least common multiple of the denominators of a and b.
Rational lcm_den(const Rational& a, const Rational& b);

/// Found by Eigen through ADL (isZero, norms).
inline Rational abs(const Rational& q) { return q.abs(); }

} // namespace kantor

template <>
struct std::hash<kantor::Rational> {
    std::size_t operator()(const kantor::Rational& q) const noexcept { return q.hash(); }
};

namespace Eigen {

template <>
struct NumTraits<kantor::Rational> : GenericNumTraits<kantor::Rational> {
    using Real = kantor::Rational;
    using NonInteger = kantor::Rational;
    using Nested = kantor::Rational;
    using Literal = kantor::Rational;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 8,
        MulCost = 16
    };

    static Real epsilon() { return Real(0); }
    static Real dummy_precision() { return Real(0); }
    static Real highest() { return Real(INT64_MAX); }
    static Real lowest() { return Real(-INT64_MAX); }
    static int digits10() { return 0; }
};

} // namespace Eigen
