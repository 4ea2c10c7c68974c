#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace wtg {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
// n/d in canonical form (mpq_class(n, d) is not reduced).
Rational frac(long n, long d);
std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

// A rational extended with +inf and -inf.
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(const Rational& v) : v_(v) {}
    ExtRational(long v) : v_(v) {}

    static ExtRational pos_inf() { ExtRational r; r.inf_ = 1; return r; }
    static ExtRational neg_inf() { ExtRational r; r.inf_ = -1; return r; }

    bool finite() const { return inf_ == 0; }
    bool is_pos_inf() const { return inf_ > 0; }
    bool is_neg_inf() const { return inf_ < 0; }
    int inf() const { return inf_; }
    const Rational& value() const;

    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator+(const ExtRational& a, const ExtRational& b);

    std::string str() const;

private:
    int inf_ = 0;
    Rational v_ = 0;
};

ExtRational parse_ext_rational(const std::string& s);

}  // namespace wtg
