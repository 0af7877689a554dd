#include "pce/engine.hpp"

#include <sstream>

namespace pce {

Poly NormalFormTable::cprime(int k, int j) const {
    if (k < 0 || j < 0) return Poly(parameters);
    if (k == 1 && j == 0) return Poly::constant(parameters, Gaussian(1));
    if (k == j + 1) return Poly(parameters);
    auto it = c.find({k, j});
    return it == c.end() ? Poly(parameters) : it->second;
}

Poly NormalFormTable::dprime(int k, int j) const {
    if (k < 0 || j < 0) return Poly(parameters);
    if (k == 1 && j == 0) return Poly::constant(parameters, Gaussian(1));
    if (k == j + 1) return Poly(parameters);
    auto it = d.find({k, j});
    return it == d.end() ? Poly(parameters) : it->second;
}

NormalFormTable compute_normal_form(const ComplexSystemCoefficients& coeffs,
                                    int max_level) {
    NormalFormTable t;
    t.parameters = coeffs.parameters;
    t.level = max_level;
    const Poly zero(t.parameters);
    auto a = [&](int al, int be) -> Poly {
        if (al < 0 || be < 0) return zero;
        const Poly* p = coeffs.find(al, be);
        return p ? *p : zero;
    };
    auto b = [&](int al, int be) -> Poly { return a(al, be).conj_coeffs(); };

    // Layer-by-layer in increasing k + j: Eq. (2.15) references only
    // strictly lower layers.
    for (int lev = 2; lev <= max_level; ++lev) {
        for (int k = 0; k <= lev; ++k) {
            int j = lev - k;
            if (k == j + 1) continue;
            Poly sc(t.parameters), sd(t.parameters);
            for (int s = 3; s <= k + j + 1; ++s) {
                for (int al = 0; al <= s; ++al) {
                    int be = s - al;
                    Poly cc = t.cprime(k - al + 1, j - be + 1);
                    if (!cc.is_zero()) {
                        Poly w = a(al, be - 1).scale(Gaussian(make_rational(k - al + 1))) -
                                 b(be, al - 1).scale(Gaussian(make_rational(j - be + 1)));
                        sc = sc + w * cc;
                    }
                    Poly dd = t.dprime(k - al + 1, j - be + 1);
                    if (!dd.is_zero()) {
                        Poly w = b(al, be - 1).scale(Gaussian(make_rational(k - al + 1))) -
                                 a(be, al - 1).scale(Gaussian(make_rational(j - be + 1)));
                        sd = sd + w * dd;
                    }
                }
            }
            Gaussian inv(make_rational(1, j + 1 - k));
            t.c[{k, j}] = sc.scale(inv);
            t.d[{k, j}] = sd.scale(inv);
        }
    }
    return t;
}

PeriodConstantSequence compute_tau(const ComplexSystemCoefficients& coeffs, int N) {
    NormalFormTable t = compute_normal_form(coeffs, 2 * N);
    const Poly zero(t.parameters);
    auto a = [&](int al, int be) -> Poly {
        if (al < 0 || be < 0) return zero;
        const Poly* p = coeffs.find(al, be);
        return p ? *p : zero;
    };
    auto b = [&](int al, int be) -> Poly { return a(al, be).conj_coeffs(); };

    PeriodConstantSequence seq;
    for (int j = 1; j <= N; ++j) {
        Poly pj(t.parameters), qj(t.parameters);
        for (int s = 3; s <= 2 * j + 2; ++s) {
            for (int al = 0; al <= s; ++al) {
                int be = s - al;
                Poly cc = t.cprime(j - al + 2, j - be + 1);
                if (!cc.is_zero()) {
                    Poly w = a(al, be - 1).scale(Gaussian(make_rational(j - al + 2))) -
                             b(be, al - 1).scale(Gaussian(make_rational(j - be + 1)));
                    pj = pj + w * cc;
                }
                Poly dd = t.dprime(j - al + 2, j - be + 1);
                if (!dd.is_zero()) {
                    Poly w = b(al, be - 1).scale(Gaussian(make_rational(j - al + 2))) -
                             a(be, al - 1).scale(Gaussian(make_rational(j - be + 1)));
                    qj = qj + w * dd;
                }
            }
        }
        Poly tau = pj + qj;
        for (const auto& [e, cf] : tau.terms()) {
            if (cf.im != 0) {
                std::ostringstream os;
                os << "tau_" << j << " has a nonzero imaginary coefficient: ";
                os << tau.to_string();
                throw std::logic_error(os.str());
            }
        }
        seq.raw.push_back(std::move(tau));
    }
    return seq;
}

PeriodConstantSequence reduce_tau_sequence(const PeriodConstantSequence& seq,
                                           const std::vector<std::string>& var_order) {
    if (seq.raw.empty())
        throw std::invalid_argument("reduce_tau_sequence on empty sequence");
    PeriodConstantSequence out = seq;
    out.var_order = var_order;
    out.reduced.clear();
    out.certificates.clear();
    for (std::size_t k = 0; k < seq.raw.size(); ++k) {
        ReductionCertificate cert;
        Poly red(seq.raw[k].vars());
        if (k == 0 || seq.raw[k].is_zero()) {
            red = seq.raw[k];
            cert.multipliers.assign(k, Poly(seq.raw[k].vars()));
        } else {
            auto dres = lex_divide(seq.raw[k], out.reduced, var_order);
            red = dres.remainder;
            cert.multipliers = dres.quotients;
        }
        // Certificate identity: raw_k - sum h_i reduced_i - reduced_k = 0,
        // exactly. A failure is a division bug, never user error.
        Poly check = seq.raw[k] - red;
        for (std::size_t i = 0; i < cert.multipliers.size(); ++i)
            check = check - cert.multipliers[i] * out.reduced[i];
        if (!check.is_zero())
            throw std::logic_error("reduction certificate verification failed at k=" +
                                   std::to_string(k + 1));
        out.reduced.push_back(std::move(red));
        out.certificates.push_back(std::move(cert));
    }
    return out;
}

namespace {

template <class C, class R>
std::vector<R> tau_at_point_impl(const ComplexSystemCoefficients& coeffs,
                                 const std::vector<C>& values, int N,
                                 R imag_tol) {
    std::map<std::pair<int, int>, C> atab;
    for (const auto& [kj, p] : coeffs.a) atab[kj] = p.template eval_numeric<C>(values);
    R worst(0);
    auto taus = scalar_taus<C, R>(atab, N, &worst);
    R scale(1);
    for (const auto& t : taus) {
        R at = t < R(0) ? R(-t) : t;
        if (at > scale) scale = at;
    }
    if (worst > imag_tol * scale)
        throw std::logic_error(
            "tau evaluation produced a nonzero imaginary part; system not real?");
    return taus;
}

}  // namespace

std::vector<Real> tau_at_point(const ComplexSystemCoefficients& coeffs,
                               const std::vector<Real>& values, int N) {
    std::vector<MpComplex> vals;
    vals.reserve(values.size());
    for (const auto& v : values) vals.emplace_back(v);
    // Tolerance well below the working precision but far above honest zero.
    Real tol = Real(1);
    for (unsigned i = 0; i + 10 < working_digits(); ++i) tol /= 10;
    return tau_at_point_impl<MpComplex, Real>(coeffs, vals, N, tol);
}

std::vector<double> tau_at_point_d(const ComplexSystemCoefficients& coeffs,
                                   const std::vector<double>& values, int N) {
    std::vector<DComplex> vals;
    vals.reserve(values.size());
    for (double v : values) vals.emplace_back(v);
    return tau_at_point_impl<DComplex, double>(coeffs, vals, N, 1e-6);
}

CompiledTauMap::CompiledTauMap(const ComplexSystemCoefficients& coeffs, int N)
    : params_(coeffs.parameters), n_(N) {
    for (const auto& [kj, p] : coeffs.a) {
        Entry e{kj.first, kj.second, {}};
        Poly aligned = p.with_vars(params_);
        for (const auto& [exps, g] : aligned.terms()) {
            Term t;
            t.g = g;
            t.c = {g.re.get_d(), g.im.get_d()};
            for (std::size_t i = 0; i < exps.size(); ++i)
                if (exps[i] != 0) t.pows.emplace_back(i, exps[i]);
            e.terms.push_back(std::move(t));
        }
        if (!e.terms.empty()) entries_.push_back(std::move(e));
    }
}

std::vector<double> CompiledTauMap::eval(const std::vector<double>& values) const {
    if (values.size() != params_.size())
        throw std::invalid_argument("CompiledTauMap arity mismatch");
    using C = std::complex<double>;
    const int L = 2 * n_;
    const int W = L + 3;  // index window for k, j (negative handled by guards)
    std::vector<C> atab((std::size_t)(W * W), C(0));
    auto aref = [&](int k, int j) -> C& { return atab[(std::size_t)(k * W + j)]; };
    for (const auto& e : entries_) {
        if (e.k >= W || e.j >= W) continue;
        C acc(0);
        for (const auto& t : e.terms) {
            C m = t.c;
            for (const auto& [idx, ex] : t.pows)
                for (unsigned r = 0; r < ex; ++r) m *= values[idx];
            acc += m;
        }
        aref(e.k, e.j) = acc;
    }
    auto a = [&](int al, int be) -> C {
        if (al < 0 || be < 0 || al >= W || be >= W) return C(0);
        return aref(al, be);
    };
    auto b = [&](int al, int be) -> C { return std::conj(a(al, be)); };

    std::vector<C> ct((std::size_t)(W * W), C(0)), dt((std::size_t)(W * W), C(0));
    auto getc = [&](int k, int j) -> C {
        if (k < 0 || j < 0 || k >= W || j >= W) return C(0);
        if (k == 1 && j == 0) return C(1);
        if (k == j + 1) return C(0);
        return ct[(std::size_t)(k * W + j)];
    };
    auto getd = [&](int k, int j) -> C {
        if (k < 0 || j < 0 || k >= W || j >= W) return C(0);
        if (k == 1 && j == 0) return C(1);
        if (k == j + 1) return C(0);
        return dt[(std::size_t)(k * W + j)];
    };
    for (int lev = 2; lev <= L; ++lev) {
        for (int k = 0; k <= lev; ++k) {
            int j = lev - k;
            if (k == j + 1) continue;
            C sc(0), sd(0);
            for (int s = 3; s <= k + j + 1; ++s) {
                for (int al = 0; al <= s; ++al) {
                    int be = s - al;
                    C cc = getc(k - al + 1, j - be + 1);
                    if (cc != C(0))
                        sc += (a(al, be - 1) * C(k - al + 1) -
                               b(be, al - 1) * C(j - be + 1)) *
                              cc;
                    C dd = getd(k - al + 1, j - be + 1);
                    if (dd != C(0))
                        sd += (b(al, be - 1) * C(k - al + 1) -
                               a(be, al - 1) * C(j - be + 1)) *
                              dd;
                }
            }
            ct[(std::size_t)(k * W + j)] = sc / C(j + 1 - k);
            dt[(std::size_t)(k * W + j)] = sd / C(j + 1 - k);
        }
    }
    std::vector<double> out;
    out.reserve((std::size_t)n_);
    for (int j = 1; j <= n_; ++j) {
        C pj(0), qj(0);
        for (int s = 3; s <= 2 * j + 2; ++s) {
            for (int al = 0; al <= s; ++al) {
                int be = s - al;
                C cc = getc(j - al + 2, j - be + 1);
                if (cc != C(0))
                    pj += (a(al, be - 1) * C(j - al + 2) -
                           b(be, al - 1) * C(j - be + 1)) *
                          cc;
                C dd = getd(j - al + 2, j - be + 1);
                if (dd != C(0))
                    qj += (b(al, be - 1) * C(j - al + 2) -
                           a(be, al - 1) * C(j - be + 1)) *
                          dd;
            }
        }
        out.push_back((pj + qj).real());
    }
    return out;
}

std::vector<Real> CompiledTauMap::eval_mp(const std::vector<Real>& values) const {
    if (values.size() != params_.size())
        throw std::invalid_argument("CompiledTauMap arity mismatch");
    std::map<std::pair<int, int>, MpComplex> atab;
    for (const auto& e : entries_) {
        MpComplex acc;
        for (const auto& t : e.terms) {
            MpComplex m{real_from_rational(t.g.re), real_from_rational(t.g.im)};
            for (const auto& [idx, ex] : t.pows)
                for (unsigned r = 0; r < ex; ++r) m = m * MpComplex(values[idx]);
            acc += m;
        }
        atab[{e.k, e.j}] = acc;
    }
    return scalar_taus<MpComplex, Real>(atab, n_, nullptr);
}

}  // namespace pce
