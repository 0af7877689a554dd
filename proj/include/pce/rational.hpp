#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace pce {

// Arbitrary-precision rational. mpq_class keeps gcd(|num|, den) = 1 and
// den > 0 after canonicalize(), which all constructors below guarantee.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "num", "num/den" or a decimal-free integer string. Rejects zero
// denominators with a positioned message.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rational r(Integer(s), 1);
            r.canonicalize();
            return r;
        }
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator in \"" + s + "\"");
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational \"" + s + "\"");
    }
}

inline std::string rational_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline int sign(const Rational& r) { return sgn(r); }

}  // namespace pce
