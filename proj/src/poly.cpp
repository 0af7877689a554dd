#include "pce/poly.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pce {

Poly Poly::constant(std::vector<std::string> vars, Gaussian c) {
    Poly p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(Expvec(p.vars_.size(), 0), std::move(c));
    return p;
}

Poly Poly::variable(std::vector<std::string> vars, const std::string& name) {
    Poly p(std::move(vars));
    Expvec e(p.vars_.size(), 0);
    e[p.var_index(name)] = 1;
    p.terms_.emplace(std::move(e), Gaussian(1));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Gaussian Poly::constant_value() const {
    Expvec zero(vars_.size(), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Gaussian(0) : it->second;
}

std::size_t Poly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end())
        throw std::invalid_argument("unknown variable \"" + name + "\"");
    return static_cast<std::size_t>(it - vars_.begin());
}

bool Poly::has_var(const std::string& name) const {
    return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

long Poly::total_deg() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, (long)total_degree(e));
    return d;
}

long Poly::degree_in(const std::string& var) const {
    auto i = var_index(var);
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, (long)e[i]);
    return is_zero() ? -1 : d;
}

void Poly::add_term(const Expvec& e, const Gaussian& c) {
    if (c.is_zero()) return;
    if (e.size() != vars_.size())
        throw std::invalid_argument("exponent vector length mismatch");
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::with_vars(const std::vector<std::string>& vars) const {
    Poly out(vars);
    for (const auto& [e, c] : terms_) {
        Expvec ne(vars.size(), 0);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = std::find(vars.begin(), vars.end(), vars_[i]);
            if (it == vars.end())
                throw std::invalid_argument("with_vars drops used variable \"" +
                                            vars_[i] + "\"");
            ne[static_cast<std::size_t>(it - vars.begin())] = e[i];
        }
        out.add_term(ne, c);
    }
    return out;
}

Poly Poly::drop_unused_vars() const {
    std::vector<std::string> used;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (const auto& [e, c] : terms_)
            if (e[i] != 0) {
                used.push_back(vars_[i]);
                break;
            }
    return with_vars(used);
}

void Poly::align(const Poly& a, const Poly& b, Poly& a2, Poly& b2) {
    if (a.vars_ == b.vars_) {
        a2 = a;
        b2 = b;
        return;
    }
    std::vector<std::string> u = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
    a2 = a.with_vars(u);
    b2 = b.with_vars(u);
}

Poly Poly::operator-() const {
    Poly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly x, y;
    Poly::align(a, b, x, y);
    for (const auto& [e, c] : y.terms_) x.add_term(e, c);
    return x;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly x, y;
    Poly::align(a, b, x, y);
    for (const auto& [e, c] : y.terms_) x.add_term(e, -c);
    return x;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly x, y;
    Poly::align(a, b, x, y);
    Poly out(x.vars_);
    for (const auto& [ea, ca] : x.terms_)
        for (const auto& [eb, cb] : y.terms_) {
            Expvec e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

bool operator==(const Poly& a, const Poly& b) {
    Poly x, y;
    Poly::align(a, b, x, y);
    return x.terms_ == y.terms_;
}

Poly Poly::scale(const Gaussian& c) const {
    Poly out(vars_);
    if (c.is_zero()) return out;
    for (const auto& [e, k] : terms_) out.terms_.emplace(e, k * c);
    return out;
}

Poly Poly::pow(unsigned n) const {
    Poly out = Poly::constant(vars_, Gaussian(1));
    Poly base = *this;
    while (n) {
        if (n & 1u) out = out * base;
        base = base * base;
        n >>= 1u;
    }
    return out;
}

Poly Poly::conj_coeffs() const {
    Poly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.conj());
    return out;
}

Poly Poly::diff(const std::string& var) const {
    auto i = var_index(var);
    Poly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Expvec ne = e;
        ne[i] -= 1;
        out.add_term(ne, c * Gaussian(make_rational((long)e[i])));
    }
    return out;
}

std::vector<Poly> Poly::coeffs_in(const std::string& var) const {
    auto i = var_index(var);
    long d = degree_in(var);
    if (d < 0) return {};
    std::vector<Poly> out((std::size_t)d + 1, Poly(vars_));
    for (const auto& [e, c] : terms_) {
        Expvec ne = e;
        auto k = ne[i];
        ne[i] = 0;
        out[k].add_term(ne, c);
    }
    return out;
}

Poly Poly::assemble(const std::vector<Poly>& coeffs, const std::string& var) {
    if (coeffs.empty()) throw std::invalid_argument("assemble of empty view");
    Poly acc(coeffs.front().vars());
    Poly v = coeffs.front().has_var(var)
                 ? Poly::variable(coeffs.front().vars(), var)
                 : Poly::variable({var}, var);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * v + coeffs[k];
    return acc;
}

Poly Poly::substitute(const std::string& var, const Poly& value) const {
    auto cs = coeffs_in(var);
    if (cs.empty()) return *this;
    Poly acc(vars_);
    for (std::size_t k = cs.size(); k-- > 0;) acc = acc * value + cs[k];
    return acc;
}

Poly Poly::eval_partial(const std::map<std::string, Gaussian>& assignment) const {
    Poly cur = *this;
    for (const auto& [name, val] : assignment) {
        if (!cur.has_var(name)) continue;
        cur = cur.substitute(name, Poly::constant(cur.vars(), val));
    }
    return cur;
}

Gaussian Poly::eval_exact(const std::map<std::string, Gaussian>& assignment) const {
    Poly r = eval_partial(assignment);
    if (!r.is_constant())
        throw std::invalid_argument("evaluation left free variables behind");
    return r.constant_value();
}

Poly::Normalized Poly::normalize() const {
    if (is_zero()) throw std::invalid_argument("normalize of zero polynomial");
    // Integer content over all rational components of all coefficients.
    Integer num_gcd = 0, den_lcm = 1;
    auto feed = [&](const Rational& r) {
        if (r == 0) return;
        num_gcd = gcd(num_gcd, r.get_num());
        den_lcm = lcm(den_lcm, r.get_den());
    };
    for (const auto& [e, c] : terms_) {
        feed(c.re);
        feed(c.im);
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    // Sign fixed by the leading (grlex-highest) term.
    const Gaussian& lead = terms_.rbegin()->second;
    int s = lead.re != 0 ? sign(lead.re) : sign(lead.im);
    if (s < 0) content = -content;
    Normalized n{scale(Gaussian(Rational(1) / content)), content};
    return n;
}

std::optional<Poly> divide_exact(const Poly& p, const Poly& q) {
    if (q.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly r = p + Poly(q.vars());  // promote to the union variable set
    Poly d = (q + Poly(p.vars())).with_vars(r.vars());
    Poly quot(r.vars());
    while (!r.is_zero()) {
        Expvec er = r.terms().rbegin()->first;
        Gaussian cr = r.terms().rbegin()->second;
        const auto& [ed, cd] = *d.terms().rbegin();
        Expvec e(er.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (er[i] < ed[i]) return std::nullopt;
            e[i] = er[i] - ed[i];
        }
        Poly t(r.vars());
        t.add_term(e, cr / cd);
        quot = quot + t;
        r = r - t * d;
        // The grlex-leading monomial must strictly decrease.
        if (!r.is_zero() && !GrlexLess{}(r.terms().rbegin()->first, er))
            return std::nullopt;
    }
    return quot;
}

namespace {

// Lex comparison after permuting exponents into var_order priority.
struct LexOrder {
    std::vector<std::size_t> perm;  // perm[rank] = index into poly vars
    bool less(const Expvec& a, const Expvec& b) const {
        for (auto i : perm) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

LexOrder make_order(const Poly& p, const std::vector<std::string>& var_order) {
    LexOrder o;
    for (const auto& v : var_order)
        if (p.has_var(v)) o.perm.push_back(p.var_index(v));
    for (std::size_t i = 0; i < p.vars().size(); ++i)
        if (std::find(o.perm.begin(), o.perm.end(), i) == o.perm.end())
            o.perm.push_back(i);
    return o;
}

const std::pair<const Expvec, Gaussian>* leading(const Poly& p, const LexOrder& o) {
    const std::pair<const Expvec, Gaussian>* best = nullptr;
    for (const auto& t : p.terms())
        if (!best || o.less(best->first, t.first)) best = &t;
    return best;
}

}  // namespace

DivisionResult lex_divide(const Poly& p, const std::vector<Poly>& divisors,
                          const std::vector<std::string>& var_order) {
    // Promote everything to a common variable set.
    Poly work = p;
    std::vector<Poly> ds;
    ds.reserve(divisors.size());
    for (const auto& d : divisors) {
        work = work + Poly(d.vars());
        ds.push_back(d);
    }
    for (auto& d : ds) d = (d + Poly(work.vars())).with_vars(work.vars());
    LexOrder ord = make_order(work, var_order);

    DivisionResult res;
    res.remainder = Poly(work.vars());
    res.quotients.assign(ds.size(), Poly(work.vars()));

    std::vector<const std::pair<const Expvec, Gaussian>*> lts(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        lts[i] = leading(ds[i], ord);
        if (!lts[i]) throw std::invalid_argument("zero divisor in lex_divide");
    }

    while (!work.is_zero()) {
        auto lt = leading(work, ord);
        bool divided = false;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const auto& [ed, cd] = *lts[i];
            Expvec e(lt->first.size());
            bool ok = true;
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (lt->first[k] < ed[k]) {
                    ok = false;
                    break;
                }
                e[k] = lt->first[k] - ed[k];
            }
            if (!ok) continue;
            Poly t(work.vars());
            t.add_term(e, lt->second / cd);
            res.quotients[i] = res.quotients[i] + t;
            work = work - t * ds[i];
            divided = true;
            break;
        }
        if (!divided) {
            Poly t(work.vars());
            t.add_term(lt->first, lt->second);
            res.remainder = res.remainder + t;
            work = work - t;
        }
    }
    return res;
}

nlohmann::json Poly::to_json() const {
    nlohmann::json j;
    j["variables"] = vars_;
    nlohmann::json ts = nlohmann::json::array();
    // Descending grlex for a stable human-facing order.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        nlohmann::json t;
        t["exponents"] = it->first;
        t["re"] = rational_to_string(it->second.re);
        t["im"] = rational_to_string(it->second.im);
        ts.push_back(std::move(t));
    }
    j["terms"] = std::move(ts);
    return j;
}

Poly Poly::from_json(const nlohmann::json& j) {
    Poly p(j.at("variables").get<std::vector<std::string>>());
    for (const auto& t : j.at("terms")) {
        Expvec e = t.at("exponents").get<Expvec>();
        Gaussian c(parse_rational(t.at("re").get<std::string>()),
                   parse_rational(t.at("im").get<std::string>()));
        p.add_term(e, c);
    }
    return p;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << pce::to_string(it->second);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (it->first[i] == 0) continue;
            os << "*" << vars_[i];
            if (it->first[i] > 1) os << "^" << it->first[i];
        }
    }
    return os.str();
}

}  // namespace pce
