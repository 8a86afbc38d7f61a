#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace fairdiv {

// Exact rational arithmetic everywhere; the artifact never touches floating
// point. cpp_rational keeps values normalized (lowest terms, denominator > 0),
// which is exactly the canonical form the serialization relies on.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt rat_num(const Rational& r) { return numerator(r); }
inline BigInt rat_den(const Rational& r) { return denominator(r); }

namespace detail {

// optional leading '-', then one or more digits, nothing else
inline bool plain_integer(const std::string& s) {
    std::size_t t = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (t >= s.size()) return false;
    for (; t < s.size(); ++t)
        if (s[t] < '0' || s[t] > '9') return false;
    return true;
}

} // namespace detail

// "p/q" or plain "p". Whitespace, signs on q, and decimal points are not
// tolerated: these strings live in machine-written JSON and trace files.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!detail::plain_integer(s)) throw InputError("malformed rational literal: " + s);
        return Rational(BigInt(s));
    }
    std::string ps = s.substr(0, slash);
    std::string qs = s.substr(slash + 1);
    if (!detail::plain_integer(ps) || !detail::plain_integer(qs) || qs[0] == '-')
        throw InputError("malformed rational literal: " + s);
    BigInt q(qs);
    if (q == 0) throw InputError("rational with zero denominator: " + s);
    return Rational(BigInt(ps), q);
}

inline std::string to_string(const Rational& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

} // namespace fairdiv
