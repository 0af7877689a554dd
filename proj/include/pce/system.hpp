#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pce/poly.hpp"

namespace pce {

// Planar polynomial vector field with parametric coefficients. State
// variables are named "x" and "y" and always occupy the first two slots of
// the polynomial variable lists; the rest are real parameters.
struct PlanarPolySystem {
    Poly xdot;
    Poly ydot;

    std::vector<std::string> parameters() const;
    long state_degree() const;
    // Linear part exactly xdot = -y + h.o.t., ydot = x + h.o.t.
    bool has_canonical_linear_part() const;
};

// The a_{kj} coefficient table of the concomitant complex system
// dz/dT = z + sum a_{kj} z^k w^j. The b_{kj} are conj(a_{kj}) by the
// conjugate condition and are never stored.
struct ComplexSystemCoefficients {
    std::map<std::pair<int, int>, Poly> a;
    int degree = 0;
    std::vector<std::string> parameters;

    const Poly* find(int k, int j) const {
        auto it = a.find({k, j});
        return it == a.end() ? nullptr : &it->second;
    }
};

// Named substitution set eliminating some parameters in favour of the rest,
// e.g. the bi-center conditions Lambda1..Lambda4.
struct CenterConditionSet {
    std::string name;
    std::map<std::string, Poly> substitutions;  // parameter -> rhs in free params
    std::vector<std::string> free_parameters;   // declared order (gamma tuple)

    void validate() const;  // rhs must use only free parameters
};

PlanarPolySystem translate_singularity(const PlanarPolySystem& s,
                                       const Rational& px, const Rational& py);

// Complexification z = x+iy, w = x-iy, T = it. Requires the canonical
// linear part; the transform realizes dz/dT = ydot - i*xdot.
ComplexSystemCoefficients complexify(const PlanarPolySystem& s);

PlanarPolySystem apply_center_condition(const PlanarPolySystem& s,
                                        const CenterConditionSet& cond);
ComplexSystemCoefficients apply_center_condition(
    const ComplexSystemCoefficients& c, const CenterConditionSet& cond);

// Built-in fixtures. "z2-quintic" is the paper family already translated to
// the origin; "z2-quintic-untranslated" has its centers at (+-1, 0);
// "linear" is the isochronous linear center.
PlanarPolySystem builtin_system(const std::string& name);
std::vector<std::string> builtin_system_names();

// lambda1..lambda4 bi-center condition sets of the quintic family.
CenterConditionSet builtin_condition(const std::string& name);
std::vector<std::string> builtin_condition_names();

}  // namespace pce
