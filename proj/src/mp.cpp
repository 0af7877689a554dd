#include "pce/mp.hpp"

#include <cstdio>
#include <vector>

namespace pce {

std::string real_to_string(const Real& x, unsigned digits) {
    if (digits == 0) digits = working_digits();
    mp_exp_t exp;
    std::string mant = x.get_str(exp, 10, digits);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    if (d.empty()) return "0";
    std::string out = neg ? "-" : "";
    out += "0." + d + "e" + std::to_string(exp);
    return out;
}

Real real_from_string(const std::string& s) {
    Real x;
    if (x.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed real \"" + s + "\"");
    return x;
}

}  // namespace pce
