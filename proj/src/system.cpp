#include "pce/system.hpp"

#include <algorithm>

namespace pce {

namespace {

const std::vector<std::string> kStateVars = {"x", "y"};

Expvec exps(const std::vector<std::string>& vars,
            std::initializer_list<std::pair<const char*, unsigned>> powers) {
    Expvec e(vars.size(), 0);
    for (const auto& [name, p] : powers) {
        auto it = std::find(vars.begin(), vars.end(), name);
        e[static_cast<std::size_t>(it - vars.begin())] = p;
    }
    return e;
}

}  // namespace

std::vector<std::string> PlanarPolySystem::parameters() const {
    std::vector<std::string> out;
    for (const auto& v : xdot.vars())
        if (v != "x" && v != "y") out.push_back(v);
    for (const auto& v : ydot.vars())
        if (v != "x" && v != "y" &&
            std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    return out;
}

long PlanarPolySystem::state_degree() const {
    long d = -1;
    for (const Poly* p : {&xdot, &ydot}) {
        auto ix = p->var_index("x"), iy = p->var_index("y");
        for (const auto& [e, c] : p->terms())
            d = std::max(d, (long)e[ix] + (long)e[iy]);
    }
    return d;
}

namespace {

// Parameter-free coefficient of the state monomial x^kx y^ky, or nullopt if
// that coefficient involves parameters.
std::optional<Gaussian> state_coeff(const Poly& p, unsigned kx, unsigned ky) {
    auto ix = p.var_index("x"), iy = p.var_index("y");
    Gaussian acc(0);
    for (const auto& [e, c] : p.terms()) {
        if (e[ix] != kx || e[iy] != ky) continue;
        if (total_degree(e) != kx + ky) return std::nullopt;  // parameters present
        acc += c;
    }
    return acc;
}

}  // namespace

bool PlanarPolySystem::has_canonical_linear_part() const {
    auto c = [&](const Poly& p, unsigned kx, unsigned ky) {
        auto v = state_coeff(p, kx, ky);
        return v ? *v : Gaussian(Rational(1, 2));  // sentinel: fails any test below
    };
    return c(xdot, 0, 0).is_zero() && c(ydot, 0, 0).is_zero() &&
           c(xdot, 1, 0).is_zero() && c(ydot, 0, 1).is_zero() &&
           c(xdot, 0, 1) == Gaussian(-1) && c(ydot, 1, 0) == Gaussian(1);
}

PlanarPolySystem translate_singularity(const PlanarPolySystem& s,
                                       const Rational& px, const Rational& py) {
    auto shift = [&](const Poly& p) {
        Poly xs = Poly::variable(p.vars(), "x") +
                  Poly::constant(p.vars(), Gaussian(px));
        Poly ys = Poly::variable(p.vars(), "y") +
                  Poly::constant(p.vars(), Gaussian(py));
        return p.substitute("x", xs).substitute("y", ys);
    };
    return {shift(s.xdot), shift(s.ydot)};
}

ComplexSystemCoefficients complexify(const PlanarPolySystem& s) {
    PlanarPolySystem sys = s;
    // Tolerate an exact time rescaling: linear part (-c y, c x) with c a
    // positive rational is normalized by dividing the field by c.
    {
        auto cx = state_coeff(s.xdot, 0, 1);
        auto cy = state_coeff(s.ydot, 1, 0);
        if (cx && cy && !cx->is_zero() && *cx == -(*cy) && cy->is_real() &&
            !(*cy == Gaussian(1))) {
            Gaussian inv = Gaussian(1) / *cy;
            sys.xdot = s.xdot.scale(inv);
            sys.ydot = s.ydot.scale(inv);
        }
    }
    if (!sys.has_canonical_linear_part())
        throw std::invalid_argument(
            "complexify requires the canonical linear part xdot = -y + ..., "
            "ydot = x + ... (up to exact time rescaling)");

    // dz/dT = ydot - i*xdot with x = (z+w)/2, y = -i/2 z + i/2 w.
    std::vector<std::string> vars = {"x", "y", "z", "w"};
    for (const auto& p : sys.parameters()) vars.push_back(p);
    Poly half = Poly::constant(vars, Gaussian(Rational(1, 2)));
    Poly xs = (Poly::variable(vars, "z") + Poly::variable(vars, "w")) * half;
    Poly ys = (Poly::variable(vars, "w") - Poly::variable(vars, "z")) *
              half.scale(Gaussian::i());
    auto tr = [&](const Poly& p) {
        return p.with_vars(vars).substitute("x", xs).substitute("y", ys);
    };
    Poly P = tr(sys.ydot) - tr(sys.xdot).scale(Gaussian::i());

    ComplexSystemCoefficients out;
    out.parameters = sys.parameters();
    std::vector<std::string> pvars = out.parameters;
    auto iz = P.var_index("z"), iw = P.var_index("w");
    std::map<std::pair<int, int>, Poly> table;
    for (const auto& [e, c] : P.terms()) {
        int k = (int)e[iz], j = (int)e[iw];
        Expvec pe;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (vars[i] != "x" && vars[i] != "y" && vars[i] != "z" && vars[i] != "w")
                pe.push_back(e[i]);
            else if (e[i] != 0 && (vars[i] == "x" || vars[i] == "y"))
                throw std::logic_error("state variable leaked through substitution");
        auto key = std::make_pair(k, j);
        auto it = table.find(key);
        if (it == table.end())
            it = table.emplace(key, Poly(pvars)).first;
        it->second.add_term(pe, c);
    }
    // Linear part must be exactly z.
    for (auto it = table.begin(); it != table.end();) {
        auto [k, j] = it->first;
        if (k + j < 2) {
            bool ok = (k == 1 && j == 0 && it->second == Poly::constant(pvars, Gaussian(1)));
            if (!ok) throw std::logic_error("complexified linear part is not z");
            it = table.erase(it);
        } else {
            out.degree = std::max(out.degree, k + j);
            ++it;
        }
    }
    out.a = std::move(table);
    return out;
}

void CenterConditionSet::validate() const {
    for (const auto& [param, rhs] : substitutions) {
        if (std::find(free_parameters.begin(), free_parameters.end(), param) !=
            free_parameters.end())
            throw std::invalid_argument("condition \"" + name +
                                        "\" substitutes free parameter " + param);
        for (std::size_t i = 0; i < rhs.vars().size(); ++i) {
            bool used = false;
            for (const auto& [e, c] : rhs.terms())
                if (e[i] != 0) used = true;
            if (used && std::find(free_parameters.begin(), free_parameters.end(),
                                  rhs.vars()[i]) == free_parameters.end())
                throw std::invalid_argument(
                    "condition \"" + name + "\": rhs of " + param +
                    " uses non-free variable " + rhs.vars()[i]);
        }
    }
}

namespace {

Poly substitute_condition(const Poly& p, const CenterConditionSet& cond) {
    Poly cur = p;
    for (const auto& [param, rhs] : cond.substitutions) {
        if (!cur.has_var(param)) continue;
        cur = cur.substitute(param, rhs + Poly(cur.vars()));
    }
    return cur;
}

}  // namespace

PlanarPolySystem apply_center_condition(const PlanarPolySystem& s,
                                        const CenterConditionSet& cond) {
    cond.validate();
    return {substitute_condition(s.xdot, cond), substitute_condition(s.ydot, cond)};
}

ComplexSystemCoefficients apply_center_condition(
    const ComplexSystemCoefficients& c, const CenterConditionSet& cond) {
    cond.validate();
    ComplexSystemCoefficients out;
    out.degree = c.degree;
    for (const auto& [kj, p] : c.a) {
        Poly q = substitute_condition(p, cond);
        if (!q.is_zero()) out.a.emplace(kj, q);
    }
    // Parameter list shrinks to the condition's free parameters that the
    // original table knew about, preserving the declared order.
    for (const auto& f : cond.free_parameters)
        if (std::find(c.parameters.begin(), c.parameters.end(), f) !=
            c.parameters.end())
            out.parameters.push_back(f);
    return out;
}

namespace {

PlanarPolySystem make_quintic_translated() {
    std::vector<std::string> v = {"x", "y", "a2", "a3", "a4",
                                  "a6", "a7", "a8", "a9", "a10"};
    auto Qr = [](long n, long d = 1) { return Gaussian(make_rational(n, d)); };
    Poly xd(v), yd(v);
    // dx/dt of Eq. (3.5)
    xd.add_term(exps(v, {{"y", 1}}), Qr(-1));
    xd.add_term(exps(v, {{"x", 1}, {"y", 1}}), Qr(-4));
    xd.add_term(exps(v, {{"y", 2}, {"a2", 1}}), Qr(1));
    xd.add_term(exps(v, {{"x", 2}, {"y", 1}}), Qr(-6));
    xd.add_term(exps(v, {{"x", 1}, {"y", 2}, {"a2", 1}}), Qr(3));
    xd.add_term(exps(v, {{"y", 3}, {"a3", 1}}), Qr(1));
    xd.add_term(exps(v, {{"x", 3}, {"y", 1}}), Qr(-4));
    xd.add_term(exps(v, {{"x", 2}, {"y", 2}, {"a2", 1}}), Qr(3));
    xd.add_term(exps(v, {{"x", 1}, {"y", 3}, {"a3", 1}}), Qr(2));
    xd.add_term(exps(v, {{"y", 4}, {"a4", 1}}), Qr(1));
    xd.add_term(exps(v, {{"x", 4}, {"y", 1}}), Qr(-1));
    xd.add_term(exps(v, {{"x", 3}, {"y", 2}, {"a2", 1}}), Qr(1));
    xd.add_term(exps(v, {{"x", 2}, {"y", 3}, {"a3", 1}}), Qr(1));
    xd.add_term(exps(v, {{"x", 1}, {"y", 4}, {"a4", 1}}), Qr(1));
    // dy/dt of Eq. (3.5)
    yd.add_term(exps(v, {{"x", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 2}}), Qr(5, 2));
    yd.add_term(exps(v, {{"x", 1}, {"y", 1}, {"a6", 1}}), Qr(4));
    yd.add_term(exps(v, {{"y", 2}, {"a7", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 3}}), Qr(5, 2));
    yd.add_term(exps(v, {{"x", 2}, {"y", 1}, {"a6", 1}}), Qr(6));
    yd.add_term(exps(v, {{"x", 1}, {"y", 2}, {"a7", 1}}), Qr(3));
    yd.add_term(exps(v, {{"y", 3}, {"a8", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 4}}), Qr(5, 4));
    yd.add_term(exps(v, {{"x", 3}, {"y", 1}, {"a6", 1}}), Qr(4));
    yd.add_term(exps(v, {{"x", 2}, {"y", 2}, {"a7", 1}}), Qr(3));
    yd.add_term(exps(v, {{"x", 1}, {"y", 3}, {"a8", 1}}), Qr(2));
    yd.add_term(exps(v, {{"y", 4}, {"a9", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 5}}), Qr(1, 4));
    yd.add_term(exps(v, {{"x", 4}, {"y", 1}, {"a6", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 3}, {"y", 2}, {"a7", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 2}, {"y", 3}, {"a8", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 1}, {"y", 4}, {"a9", 1}}), Qr(1));
    yd.add_term(exps(v, {{"y", 5}, {"a10", 1}}), Qr(1));
    return {xd, yd};
}

PlanarPolySystem make_quintic_untranslated() {
    std::vector<std::string> v = {"x", "y", "a2", "a3", "a4",
                                  "a6", "a7", "a8", "a9", "a10"};
    auto Qr = [](long n, long d = 1) { return Gaussian(make_rational(n, d)); };
    Poly xd(v), yd(v);
    // Eq. (3.4): centers at (+-1, 0)
    xd.add_term(exps(v, {{"x", 4}, {"y", 1}}), Qr(-1));
    xd.add_term(exps(v, {{"x", 3}, {"y", 2}, {"a2", 1}}), Qr(1));
    xd.add_term(exps(v, {{"x", 2}, {"y", 3}, {"a3", 1}}), Qr(1));
    xd.add_term(exps(v, {{"x", 1}, {"y", 4}, {"a4", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 1}}), Qr(-1, 4));
    yd.add_term(exps(v, {{"y", 1}, {"a6", 1}}), Qr(-1));
    yd.add_term(exps(v, {{"x", 5}}), Qr(1, 4));
    yd.add_term(exps(v, {{"x", 4}, {"y", 1}, {"a6", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 3}, {"y", 2}, {"a7", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 2}, {"y", 3}, {"a8", 1}}), Qr(1));
    yd.add_term(exps(v, {{"x", 1}, {"y", 4}, {"a9", 1}}), Qr(1));
    yd.add_term(exps(v, {{"y", 5}, {"a10", 1}}), Qr(1));
    return {xd, yd};
}

PlanarPolySystem make_linear() {
    std::vector<std::string> v = {"x", "y"};
    Poly xd(v), yd(v);
    xd.add_term({0, 1}, Gaussian(-1));
    yd.add_term({1, 0}, Gaussian(1));
    return {xd, yd};
}

// Small helper for condition right-hand sides.
Poly rhs_poly(const std::vector<std::string>& v,
              std::initializer_list<std::pair<Rational, std::initializer_list<
                                                  std::pair<const char*, unsigned>>>>
                  terms) {
    Poly p(v);
    for (const auto& [coef, mono] : terms) p.add_term(exps(v, mono), Gaussian(coef));
    return p;
}

}  // namespace

PlanarPolySystem builtin_system(const std::string& name) {
    if (name == "z2-quintic") return make_quintic_translated();
    if (name == "z2-quintic-untranslated") return make_quintic_untranslated();
    if (name == "linear") return make_linear();
    throw std::invalid_argument("unknown builtin system \"" + name + "\"");
}

std::vector<std::string> builtin_system_names() {
    return {"z2-quintic", "z2-quintic-untranslated", "linear"};
}

CenterConditionSet builtin_condition(const std::string& name) {
    auto Q = [](long n, long d = 1) { return make_rational(n, d); };
    CenterConditionSet c;
    c.name = name;
    if (name == "lambda1") {
        std::vector<std::string> f = {"a3", "a7", "a2", "a4"};
        c.free_parameters = f;
        c.substitutions["a6"] = Poly(f);
        c.substitutions["a8"] =
            rhs_poly(f, {{Q(1, 3), {{"a2", 1}}}, {Q(-2, 3), {{"a2", 1}, {"a7", 1}}}});
        c.substitutions["a9"] =
            rhs_poly(f, {{Q(1, 2), {{"a3", 1}}}, {Q(-1, 2), {{"a3", 1}, {"a7", 1}}}});
        c.substitutions["a10"] =
            rhs_poly(f, {{Q(3, 5), {{"a4", 1}}}, {Q(-2, 5), {{"a4", 1}, {"a7", 1}}}});
    } else if (name == "lambda2") {
        std::vector<std::string> f = {"a3", "a6", "a7", "a9"};
        c.free_parameters = f;
        c.substitutions["a2"] = rhs_poly(f, {{Q(-4), {{"a6", 1}}}});
        c.substitutions["a4"] = rhs_poly(f, {{Q(4), {{"a3", 1}, {"a6", 1}}}});
        c.substitutions["a8"] = rhs_poly(f, {{Q(4), {{"a6", 1}, {"a7", 1}}}});
        c.substitutions["a10"] = rhs_poly(f, {{Q(4), {{"a6", 1}, {"a9", 1}}}});
    } else if (name == "lambda3") {
        std::vector<std::string> f = {"a3", "a7", "a2", "a6"};
        c.free_parameters = f;
        c.substitutions["a4"] =
            rhs_poly(f, {{Q(4), {{"a6", 1}, {"a3", 1}}},
                         {Q(-16), {{"a2", 1}, {"a6", 2}}},
                         {Q(-64), {{"a6", 3}}}});
        c.substitutions["a8"] =
            rhs_poly(f, {{Q(1, 3), {{"a2", 1}}},
                         {Q(4, 3), {{"a6", 1}}},
                         {Q(-2, 3), {{"a2", 1}, {"a7", 1}}},
                         {Q(4, 3), {{"a6", 1}, {"a7", 1}}}});
        c.substitutions["a9"] =
            rhs_poly(f, {{Q(1, 2), {{"a3", 1}}},
                         {Q(-2, 3), {{"a2", 1}, {"a6", 1}}},
                         {Q(-8, 3), {{"a6", 2}}},
                         {Q(-1, 2), {{"a3", 1}, {"a7", 1}}},
                         {Q(-2, 3), {{"a2", 1}, {"a6", 1}, {"a7", 1}}},
                         {Q(-8, 3), {{"a6", 2}, {"a7", 1}}}});
        // 2 a6 (-a3 + 4 a2 a6 + 16 a6^2)(-1 + a7)
        c.substitutions["a10"] =
            rhs_poly(f, {{Q(2), {{"a6", 1}, {"a3", 1}}},
                         {Q(-8), {{"a2", 1}, {"a6", 2}}},
                         {Q(-32), {{"a6", 3}}},
                         {Q(-2), {{"a6", 1}, {"a3", 1}, {"a7", 1}}},
                         {Q(8), {{"a2", 1}, {"a6", 2}, {"a7", 1}}},
                         {Q(32), {{"a6", 3}, {"a7", 1}}}});
    } else if (name == "lambda4") {
        std::vector<std::string> f = {"a3", "a6", "a2", "a4"};
        c.free_parameters = f;
        c.substitutions["a7"] = rhs_poly(f, {{Q(-1), {}}});
        c.substitutions["a8"] = rhs_poly(f, {{Q(1), {{"a2", 1}}}});
        c.substitutions["a9"] = rhs_poly(f, {{Q(1), {{"a3", 1}}}});
        c.substitutions["a10"] = rhs_poly(f, {{Q(1), {{"a4", 1}}}});
    } else {
        throw std::invalid_argument("unknown builtin condition \"" + name + "\"");
    }
    c.validate();
    return c;
}

std::vector<std::string> builtin_condition_names() {
    return {"lambda1", "lambda2", "lambda3", "lambda4"};
}

}  // namespace pce
