#include "wtg/rational.hpp"

#include "wtg/errors.hpp"

#include <cctype>

namespace wtg {

namespace {

bool valid_integer(const std::string& s) {
    size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational frac(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
        throw InputError("not a rational: '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n{num}, d{den};
    if (d == 0) throw InputError("zero denominator: '" + s + "'");
    Rational q{n, d};
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

const Rational& ExtRational::value() const {
    if (inf_ != 0) throw std::logic_error("value() of an infinite ExtRational");
    return v_;
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ != 0 || a.v_ == b.v_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ != b.inf_) return a.inf_ <=> b.inf_;
    if (a.inf_ != 0) return std::strong_ordering::equal;
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ != 0 && b.inf_ != 0 && a.inf_ != b.inf_)
        throw std::logic_error("attempt to add +inf and -inf");
    if (a.inf_ != 0) return a;
    if (b.inf_ != 0) return b;
    return ExtRational(Rational(a.v_ + b.v_));
}

std::string ExtRational::str() const {
    if (inf_ > 0) return "inf";
    if (inf_ < 0) return "-inf";
    return to_string(v_);
}

ExtRational parse_ext_rational(const std::string& s) {
    if (s == "inf" || s == "+inf") return ExtRational::pos_inf();
    if (s == "-inf") return ExtRational::neg_inf();
    return ExtRational(parse_rational(s));
}

}  // namespace wtg
