#include "pce/unipoly.hpp"

#include <algorithm>

namespace pce {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::from_poly(const Poly& p, const std::string& var) {
    auto i = p.var_index(var);
    std::vector<Rational> c;
    for (const auto& [e, g] : p.terms()) {
        if (total_degree(e) != e[i])
            throw std::invalid_argument("polynomial is not univariate in " + var);
        if (!g.is_real())
            throw std::invalid_argument("complex coefficient in real univariate view");
        if (c.size() <= e[i]) c.resize(e[i] + 1, Rational(0));
        c[e[i]] += g.re;
    }
    return UniPoly(std::move(c));
}

Rational UniPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int UniPoly::sign_at(const Rational& x) const { return sgn(eval(x)); }

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * (long)k;
    return UniPoly(std::move(d));
}

UniPoly UniPoly::negate() const {
    auto c = c_;
    for (auto& v : c) v = -v;
    return UniPoly(std::move(c));
}

UniPoly UniPoly::scale(const Rational& s) const {
    auto c = c_;
    for (auto& v : c) v *= s;
    return UniPoly(std::move(c));
}

UniPoly UniPoly::primitive() const {
    if (is_zero()) return {};
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& r : c_) {
        if (r == 0) continue;
        num_gcd = ::gcd(num_gcd, r.get_num());
        den_lcm = ::lcm(den_lcm, r.get_den());
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(c_.back()) < 0) content = -content;
    return scale(Rational(1) / content);
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::rem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("remainder by zero polynomial");
    UniPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Rational q = r.leading() / b.leading();
        auto shift = (std::size_t)(r.degree() - b.degree());
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i + shift] -= q * b.c_[i];
        r.trim();
    }
    return r;
}

UniPoly UniPoly::gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a.primitive(), y = b.primitive();
    while (!y.is_zero()) {
        UniPoly r = rem(x, y).primitive();
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.primitive();
}

UniPoly UniPoly::divexact(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree())
        throw std::domain_error("inexact univariate division");
    std::vector<Rational> q((std::size_t)(a.degree() - b.degree()) + 1, Rational(0));
    UniPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Rational t = r.leading() / b.leading();
        auto shift = (std::size_t)(r.degree() - b.degree());
        q[shift] = t;
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i + shift] -= t * b.c_[i];
        r.trim();
    }
    if (!r.is_zero()) throw std::domain_error("inexact univariate division");
    return UniPoly(std::move(q));
}

UniPoly UniPoly::squarefree_part() const {
    if (is_zero() || degree() == 0) return primitive();
    UniPoly g = gcd(*this, derivative());
    if (g.degree() == 0) return primitive();
    return divexact(primitive(), g).primitive();
}

namespace {
// Primitive part scaled by the positive content only: the sign of the
// polynomial is preserved, which the Sturm sign-change property requires.
UniPoly signed_primitive(const UniPoly& p) {
    UniPoly pr = p.primitive();  // positive leading coefficient
    return sgn(p.leading()) < 0 ? pr.negate() : pr;
}
}  // namespace

SturmChain SturmChain::build(const UniPoly& p) {
    SturmChain s;
    s.chain.push_back(signed_primitive(p));
    UniPoly d = p.derivative();
    if (!d.is_zero()) s.chain.push_back(signed_primitive(d));
    while (s.chain.size() >= 2) {
        const UniPoly& a = s.chain[s.chain.size() - 2];
        const UniPoly& b = s.chain.back();
        UniPoly r = UniPoly::rem(a, b);
        if (r.is_zero()) break;
        s.chain.push_back(signed_primitive(r.negate()));
    }
    return s;
}

int SturmChain::sign_changes_at(const Rational& x) const {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        int s = p.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const {
    return sign_changes_at(a) - sign_changes_at(b);
}

Rational cauchy_root_bound(const UniPoly& p) {
    if (p.is_zero() || p.degree() == 0) return Rational(1);
    Rational m(0);
    for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) {
        Rational r = abs(p.coeffs()[i] / p.leading());
        if (r > m) m = r;
    }
    return m + 1;
}

RootInterval refine_root(const SturmChain& sturm, RootInterval iv, const Rational& width) {
    while (iv.hi - iv.lo > width) {
        Rational mid = (iv.lo + iv.hi) / 2;
        if (sturm.chain.front().sign_at(mid) == 0) {
            iv.lo = iv.hi = mid;
            return iv;
        }
        if (sturm.sign_changes_at(iv.lo) - sturm.sign_changes_at(mid) > 0)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
    return iv;
}

std::vector<RootInterval> isolate_real_roots(const UniPoly& p, const Rational& width) {
    std::vector<RootInterval> out;
    if (p.is_zero())
        throw std::invalid_argument("root isolation of the zero polynomial");
    UniPoly sf = p.squarefree_part();
    if (sf.degree() <= 0) return out;
    SturmChain sturm = SturmChain::build(sf);
    Rational bound = cauchy_root_bound(sf);

    // Recursive bisection until each interval holds exactly one root.
    struct Seg {
        Rational lo, hi;
        int n;
    };
    std::vector<Seg> stack;
    {
        Rational lo = -bound, hi = bound;
        int n = sturm.count_roots(lo, hi);
        // Endpoint roots: the Cauchy bound is strict, but -bound itself could
        // be a root of a shifted chain only in degenerate scalings; a root at
        // exactly -bound would be missed by (a, b] counting, so nudge left.
        if (sf.sign_at(lo) == 0) lo -= 1;
        n = sturm.count_roots(lo, hi);
        if (n > 0) stack.push_back({lo, hi, n});
    }
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.n == 1) {
            out.push_back(refine_root(sturm, {s.lo, s.hi}, width));
            continue;
        }
        Rational mid = (s.lo + s.hi) / 2;
        if (sf.sign_at(mid) == 0) {
            out.push_back({mid, mid});
            // Count strictly left and right of the exact root.
            Rational eps = (s.hi - s.lo) / 1000000;
            int nl = sturm.count_roots(s.lo, mid - eps);
            int nr = sturm.count_roots(mid + eps, s.hi);
            if (nl > 0) stack.push_back({s.lo, mid - eps, nl});
            if (nr > 0) stack.push_back({mid + eps, s.hi, nr});
            continue;
        }
        int nl = sturm.count_roots(s.lo, mid);
        int nr = s.n - nl;
        if (nl > 0) stack.push_back({s.lo, mid, nl});
        if (nr > 0) stack.push_back({mid, s.hi, nr});
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace pce
