#pragma once

#include "wtg/rational.hpp"

#include <doctest.h>

namespace doctest {

template <>
struct StringMaker<wtg::ExtRational> {
    static String convert(const wtg::ExtRational& v) { return v.str().c_str(); }
};

template <>
struct StringMaker<wtg::Rational> {
    static String convert(const wtg::Rational& v) { return wtg::to_string(v).c_str(); }
};

}  // namespace doctest
