#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace flowsched {

/// Exact rational scalar used for all times, capacities, flows and objective
/// values. Backed by GMP; always kept in canonical form (gcd 1, positive
/// denominator). Floating point only appears at reporting boundaries.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(static_cast<signed long>(n)) {}
    Rational(long long n) : q_(mpz_class(std::to_string(n))) {}
    Rational(long num, long den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "3", "-7", "7/2", "-9/4". Throws std::invalid_argument otherwise.
    static Rational parse(const std::string& text);

    const mpq_class& raw() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_integer() const { return q_.get_den() == 1; }
    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    /// Canonical text form: "3" when integral, else "num/den".
    std::string str() const;
    double to_double() const { return q_.get_d(); }
    /// Requires an integral value that fits in long; throws otherwise.
    long to_long() const;

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    /// Largest integer <= value.
    Rational floor() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace flowsched
