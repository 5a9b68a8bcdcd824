#include "kantor/rational.hpp"

#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace kantor {

namespace {

using i128 = __int128;

constexpr std::int64_t kMax = INT64_MAX;

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

std::uint64_t uabs(std::int64_t v) { return v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v); }

std::uint64_t gcd_u128(unsigned __int128 a, std::uint64_t b)
{
    if (b == 0)
        return 0;
    return std::gcd(static_cast<std::uint64_t>(a % b), b);
}

unsigned __int128 uabs128(i128 v) { return v < 0 ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v); }

} // namespace

Rational::Rational(long long num, long long den)
{
    if (den == 0)
        throw std::domain_error("Rational: zero denominator");
    set_small_or_big(num, den);
}

Rational::Rational(const mpq_class& q) { assign_from_mpq(q); }

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_), big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr)
{
}

Rational& Rational::operator=(const Rational& other)
{
    if (this != &other) {
        num_ = other.num_;
        den_ = other.den_;
        big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
    }
    return *this;
}

Rational Rational::parse(std::string_view text)
{
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0)
        throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    if (q.get_den() == 0)
        throw std::domain_error("Rational: zero denominator");
    q.canonicalize();
    return Rational(q);
}

void Rational::set_small_or_big(long long num, long long den)
{
    if (num == INT64_MIN || den == INT64_MIN) {
        mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        q.canonicalize();
        assign_from_mpq(q);
        return;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const auto g = static_cast<std::int64_t>(std::gcd(uabs(num), static_cast<std::uint64_t>(den)));
    big_.reset();
    if (num == 0) {
        num_ = 0;
        den_ = 1;
        return;
    }
    num_ = num / g;
    den_ = den / g;
}

void Rational::set_big(mpq_class q)
{
    big_ = std::make_unique<mpq_class>(std::move(q));
}

void Rational::assign_from_mpq(const mpq_class& q)
{
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        const long n = q.get_num().get_si();
        const long d = q.get_den().get_si();
        if (n != INT64_MIN) {
            big_.reset();
            num_ = n;
            den_ = d;
            return;
        }
    }
    set_big(q);
    num_ = 0;
    den_ = 1;
}

bool Rational::is_integer() const noexcept
{
    return big_ ? big_->get_den() == 1 : den_ == 1;
}

int Rational::sign() const noexcept
{
    if (big_)
        return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const
{
    if (big_)
        return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }

mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

std::string Rational::to_string() const
{
    if (big_)
        return big_->get_str();
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const
{
    if (big_)
        return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::inverse() const
{
    if (is_zero())
        throw std::domain_error("Rational: inverse of zero");
    if (big_)
        return Rational(mpq_class(1) / *big_);
    Rational r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
}

Rational Rational::operator-() const
{
    if (big_)
        return Rational(mpq_class(-*big_));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& rhs)
{
    if (!big_ && !rhs.big_) {
        if (den_ == 1 && rhs.den_ == 1) {
            std::int64_t s;
            if (!__builtin_add_overflow(num_, rhs.num_, &s) && s != INT64_MIN) {
                num_ = s;
                return *this;
            }
        } else {
            const auto g = static_cast<std::int64_t>(std::gcd(static_cast<std::uint64_t>(den_), static_cast<std::uint64_t>(rhs.den_)));
            const std::int64_t b1 = den_ / g;
            const std::int64_t d1 = rhs.den_ / g;
            const i128 t = static_cast<i128>(num_) * d1 + static_cast<i128>(rhs.num_) * b1;
            if (t == 0) {
                num_ = 0;
                den_ = 1;
                return *this;
            }
            const std::uint64_t g2 = g == 1 ? 1 : gcd_u128(uabs128(t), static_cast<std::uint64_t>(g));
            const i128 n = t / static_cast<i128>(g2);
            const i128 d = static_cast<i128>(b1) * (rhs.den_ / static_cast<std::int64_t>(g2));
            if (fits(n) && fits(d)) {
                num_ = static_cast<std::int64_t>(n);
                den_ = static_cast<std::int64_t>(d);
                return *this;
            }
        }
    }
    assign_from_mpq(to_mpq() + rhs.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs)
{
    if (!rhs.big_ && rhs.den_ == 1 && !big_ && den_ == 1) {
        std::int64_t s;
        if (!__builtin_sub_overflow(num_, rhs.num_, &s) && s != INT64_MIN) {
            num_ = s;
            return *this;
        }
    }
    return *this += -rhs;
}

Rational& Rational::operator*=(const Rational& rhs)
{
    if (!big_ && !rhs.big_) {
        if (num_ == 0)
            return *this;
        if (rhs.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        if (den_ == 1 && rhs.den_ == 1) {
            std::int64_t p;
            if (!__builtin_mul_overflow(num_, rhs.num_, &p) && p != INT64_MIN) {
                num_ = p;
                return *this;
            }
        } else {
            const auto g1 = static_cast<std::int64_t>(std::gcd(uabs(num_), static_cast<std::uint64_t>(rhs.den_)));
            const auto g2 = static_cast<std::int64_t>(std::gcd(uabs(rhs.num_), static_cast<std::uint64_t>(den_)));
            const i128 n = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
            const i128 d = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
            if (fits(n) && fits(d)) {
                num_ = static_cast<std::int64_t>(n);
                den_ = static_cast<std::int64_t>(d);
                return *this;
            }
        }
    }
    assign_from_mpq(to_mpq() * rhs.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Rational& a, const Rational& b) noexcept
{
    if (!a.big_ && !b.big_)
        return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_)
        return *a.big_ == *b.big_;
    // canonical form guarantees a big value never equals a small one
    return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_) {
        const i128 l = static_cast<i128>(a.num_) * b.den_;
        const i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

std::size_t Rational::hash() const noexcept
{
    if (big_) {
        const std::string s = big_->get_str();
        return std::hash<std::string>{}(s);
    }
    const auto h1 = static_cast<std::uint64_t>(num_) * 0x9E3779B97F4A7C15ULL;
    const auto h2 = static_cast<std::uint64_t>(den_) * 0xC2B2AE3D27D4EB4FULL;
    return static_cast<std::size_t>(h1 ^ (h2 >> 7) ^ (h2 << 29));
}

Rational gcd(const Rational& a, const Rational& b)
{
    if (!a.is_integer() || !b.is_integer())
        throw std::domain_error("gcd: arguments must be integers");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
    return Rational(mpq_class(g));
}

Rational lcm_den(const Rational& a, const Rational& b)
{
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
    return Rational(mpq_class(l));
}

} // namespace kantor
