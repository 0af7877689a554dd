#pragma once

#include <complex>
#include <map>
#include <vector>

#include "pce/mp.hpp"
#include "pce/system.hpp"

namespace pce {

// The c', d' tables of the normal-form recursion. Seeds c'10 = d'10 = 1,
// c'01 = d'01 = 0 and the zero diagonal c'_{k+1,k} = d'_{k+1,k} = 0 are
// implicit and never stored.
struct NormalFormTable {
    std::map<std::pair<int, int>, Poly> c;
    std::map<std::pair<int, int>, Poly> d;
    int level = 0;  // entries with k + j <= level are populated
    std::vector<std::string> parameters;

    Poly cprime(int k, int j) const;
    Poly dprime(int k, int j) const;
};

struct ReductionCertificate {
    Rational s{1};
    std::vector<Poly> multipliers;  // one per earlier reduced constant
};

struct PeriodConstantSequence {
    std::vector<Poly> raw;
    std::vector<Poly> reduced;                       // empty until reduced
    std::vector<ReductionCertificate> certificates;  // parallel to reduced
    std::vector<std::string> var_order;              // order used for reduction
};

NormalFormTable compute_normal_form(const ComplexSystemCoefficients& coeffs,
                                    int max_level);

// Raw complex period constants tau_j = p'_j + q'_j, j = 1..N. Every tau of a
// real system must come out with identically zero imaginary part; a nonzero
// one indicates an internal bug and throws.
PeriodConstantSequence compute_tau(const ComplexSystemCoefficients& coeffs, int N);

// Reduces tau_k modulo the earlier reduced constants by multivariate
// division under the lex order induced by var_order, recording certificate
// multipliers with raw_k = sum h_i reduced_i + reduced_k (s_k = 1). The
// certificate identity is re-verified exactly before returning.
PeriodConstantSequence reduce_tau_sequence(const PeriodConstantSequence& seq,
                                           const std::vector<std::string>& var_order);

// ---- numeric-instantiated mode ----

// Runs the recursion with scalar coefficients. C is std::complex<double> or
// MpComplex. Returns the real parts of tau_1..tau_N; imag_bound receives the
// largest |Im tau_j| seen (must be ~0 for real systems).
template <class C, class R>
std::vector<R> scalar_taus(const std::map<std::pair<int, int>, C>& a, int N,
                           R* imag_bound = nullptr);

// Instantiates the a_{kj} table at a parameter point (ordered per
// coeffs.parameters) and evaluates tau_1..tau_N at working precision.
std::vector<Real> tau_at_point(const ComplexSystemCoefficients& coeffs,
                               const std::vector<Real>& values, int N);
std::vector<double> tau_at_point_d(const ComplexSystemCoefficients& coeffs,
                                   const std::vector<double>& values, int N);

// Compiled numeric-instantiated tau map for hot loops (multistart batches):
// the a_{kj} table is flattened to term lists once and the recursion runs on
// dense arrays in double precision. eval_mp goes through the exact Gaussian
// coefficients at working precision.
class CompiledTauMap {
  public:
    CompiledTauMap(const ComplexSystemCoefficients& coeffs, int N);

    int depth() const { return n_; }
    const std::vector<std::string>& parameters() const { return params_; }
    std::vector<double> eval(const std::vector<double>& values) const;
    std::vector<Real> eval_mp(const std::vector<Real>& values) const;

  private:
    struct Term {
        std::complex<double> c;
        Gaussian g;
        std::vector<std::pair<std::size_t, unsigned>> pows;  // (param idx, exp)
    };
    struct Entry {
        int k, j;
        std::vector<Term> terms;
    };
    std::vector<Entry> entries_;
    std::vector<std::string> params_;
    int n_ = 0;
};

// ---- template implementation ----

template <class C, class R>
std::vector<R> scalar_taus(const std::map<std::pair<int, int>, C>& atab, int N,
                           R* imag_bound) {
    auto a = [&](int al, int be) -> C {
        if (al < 0 || be < 0) return C(0);
        auto it = atab.find({al, be});
        return it == atab.end() ? C(0) : it->second;
    };
    auto b = [&](int al, int be) -> C { return a(al, be).conj(); };

    std::map<std::pair<int, int>, C> c, d;
    auto getc = [&](int k, int j) -> C {
        if (k < 0 || j < 0) return C(0);
        if (k == 1 && j == 0) return C(1);
        if (k == j + 1) return C(0);
        auto it = c.find({k, j});
        return it == c.end() ? C(0) : it->second;
    };
    auto getd = [&](int k, int j) -> C {
        if (k < 0 || j < 0) return C(0);
        if (k == 1 && j == 0) return C(1);
        if (k == j + 1) return C(0);
        auto it = d.find({k, j});
        return it == d.end() ? C(0) : it->second;
    };
    for (int lev = 2; lev <= 2 * N; ++lev) {
        for (int k = 0; k <= lev; ++k) {
            int j = lev - k;
            if (k == j + 1) continue;
            C sc(0), sd(0);
            for (int s = 3; s <= k + j + 1; ++s) {
                for (int al = 0; al <= s; ++al) {
                    int be = s - al;
                    C cc = getc(k - al + 1, j - be + 1);
                    sc = sc + (a(al, be - 1) * C(k - al + 1) -
                               b(be, al - 1) * C(j - be + 1)) *
                                  cc;
                    C dd = getd(k - al + 1, j - be + 1);
                    sd = sd + (b(al, be - 1) * C(k - al + 1) -
                               a(be, al - 1) * C(j - be + 1)) *
                                  dd;
                }
            }
            c[{k, j}] = sc / C(j + 1 - k);
            d[{k, j}] = sd / C(j + 1 - k);
        }
    }
    std::vector<R> out;
    R worst(0);
    for (int j = 1; j <= N; ++j) {
        C pj(0), qj(0);
        for (int s = 3; s <= 2 * j + 2; ++s) {
            for (int al = 0; al <= s; ++al) {
                int be = s - al;
                C cc = getc(j - al + 2, j - be + 1);
                pj = pj + (a(al, be - 1) * C(j - al + 2) -
                           b(be, al - 1) * C(j - be + 1)) *
                              cc;
                C dd = getd(j - al + 2, j - be + 1);
                qj = qj + (b(al, be - 1) * C(j - al + 2) -
                           a(be, al - 1) * C(j - be + 1)) *
                              dd;
            }
        }
        C t = pj + qj;
        out.push_back(t.re);
        R ai = t.im < R(0) ? R(-t.im) : R(t.im);
        if (ai > worst) worst = ai;
    }
    if (imag_bound) *imag_bound = worst;
    return out;
}

}  // namespace pce
