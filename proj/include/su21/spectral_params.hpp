#pragma once

// Spectral parameter bookkeeping: Weyl group action on (j, nu), the central
// character values, orbit sets with their filters, the parametrization
// classification, K-type sectors, and the derived quantities used in the
// non-abelian Fourier term modules.

#include "su21/rational.hpp"

#include <algorithm>
#include <complex>
#include <optional>
#include <vector>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace su21::spec {

using cdbl = std::complex<double>;

// A spectral value nu that is kept exact whenever it is rational.
struct Nu {
    bool exact = false;
    Rational rat;
    cdbl value{0.0, 0.0};

    static Nu of(const Rational& q) { return {true, q, cdbl(q.to_double(), 0.0)}; }
    static Nu of(cdbl z) { return {false, Rational(0), z}; }
    static Nu of(long long n) { return of(Rational(n)); }

    bool is_zero() const { return exact ? rat.is_zero() : std::abs(value) < 1e-14; }
};

struct SpectralPoint {
    long long j = 0;
    Nu nu;
};

inline cdbl lambda2(long long j, cdbl nu) {
    return nu * nu - 4.0 + double(j) * double(j) / 3.0;
}
inline cdbl lambda3(long long j, cdbl nu) {
    double a = double(j - 6);
    return double(j + 3) * (nu * nu - a * a / 9.0);
}
inline Rational lambda2_rat(const Rational& j, const Rational& nu) {
    return nu * nu - Rational(4) + j * j / Rational(3);
}
inline Rational lambda3_rat(const Rational& j, const Rational& nu) {
    Rational a = j - Rational(6);
    return (j + Rational(3)) * (nu * nu - a * a / Rational(9));
}

// Generators of the Weyl group action on (j, nu).
inline std::pair<Rational, Rational> weyl_s1(const Rational& j, const Rational& nu) {
    return {(Rational(3) * nu - j) / Rational(2), (j + nu) / Rational(2)};
}
inline std::pair<Rational, Rational> weyl_s2(const Rational& j, const Rational& nu) {
    return {(Rational(-3) * nu - j) / Rational(2), (nu - j) / Rational(2)};
}
inline std::pair<cdbl, cdbl> weyl_s1(cdbl j, cdbl nu) {
    return {(3.0 * nu - j) / 2.0, (j + nu) / 2.0};
}
inline std::pair<cdbl, cdbl> weyl_s2(cdbl j, cdbl nu) {
    return {(-3.0 * nu - j) / 2.0, (nu - j) / 2.0};
}

enum class ParamClass { SimpleGeneric, GenericMultiple, Integral };

inline const char* param_class_name(ParamClass c) {
    switch (c) {
        case ParamClass::SimpleGeneric: return "simple-generic";
        case ParamClass::GenericMultiple: return "generic-multiple";
        case ParamClass::Integral: return "integral";
    }
    return "?";
}

struct WeylOrbitData {
    std::vector<SpectralPoint> points; // members with integral j
    ParamClass cls = ParamClass::SimpleGeneric;
    cdbl lam2{0, 0}, lam3{0, 0};
    std::optional<Rational> lam2_exact, lam3_exact;

    std::vector<long long> wo1() const {
        std::vector<long long> js;
        for (const auto& p : points)
            if (std::find(js.begin(), js.end(), p.j) == js.end()) js.push_back(p.j);
        std::sort(js.begin(), js.end());
        return js;
    }
};

namespace detail {
inline bool is_even_integer(const Rational& q) {
    return q.is_integer() && (q.num() % 2 == 0);
}
} // namespace detail

// Orbit of (j, nu) under the Weyl group, restricted to members whose first
// coordinate is an integer.  With rational nu everything is exact; with a
// general complex nu, integrality of W-images is tested within 1e-10.
inline WeylOrbitData weyl_orbit(const SpectralPoint& pt) {
    WeylOrbitData out;
    out.lam2 = lambda2(pt.j, pt.nu.value);
    out.lam3 = lambda3(pt.j, pt.nu.value);

    if (pt.nu.exact) {
        Rational j0(pt.j), n0 = pt.nu.rat;
        out.lam2_exact = lambda2_rat(j0, n0);
        out.lam3_exact = lambda3_rat(j0, n0);
        std::vector<std::pair<Rational, Rational>> orbit{{j0, n0}};
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            for (int s = 0; s < 2; ++s) {
                auto im = s == 0 ? weyl_s1(orbit[k].first, orbit[k].second)
                                 : weyl_s2(orbit[k].first, orbit[k].second);
                if (std::find(orbit.begin(), orbit.end(), im) == orbit.end())
                    orbit.push_back(im);
            }
        }
        for (const auto& [j, nu] : orbit)
            if (j.is_integer()) out.points.push_back({j.num(), Nu::of(nu)});

        // classification
        Rational t3 = Rational(3) * n0 - j0; // multiple iff even integer
        Rational t1 = n0 - j0;               // integral iff even integer
        bool origin = j0.is_zero() && n0.is_zero();
        if (detail::is_even_integer(t1) && !origin)
            out.cls = ParamClass::Integral;
        else if (detail::is_even_integer(t3) && !origin)
            out.cls = ParamClass::GenericMultiple;
        else
            out.cls = ParamClass::SimpleGeneric;
    } else {
        cdbl j0(double(pt.j), 0.0), n0 = pt.nu.value;
        std::vector<std::pair<cdbl, cdbl>> orbit{{j0, n0}};
        auto seen = [&](const std::pair<cdbl, cdbl>& q) {
            for (const auto& o : orbit)
                if (std::abs(o.first - q.first) < 1e-9 && std::abs(o.second - q.second) < 1e-9)
                    return true;
            return false;
        };
        for (std::size_t k = 0; k < orbit.size() && orbit.size() < 12; ++k) {
            for (int s = 0; s < 2; ++s) {
                auto im = s == 0 ? weyl_s1(orbit[k].first, orbit[k].second)
                                 : weyl_s2(orbit[k].first, orbit[k].second);
                if (!seen(im)) orbit.push_back(im);
            }
        }
        for (const auto& [j, nu] : orbit) {
            double jr = std::round(j.real());
            if (std::abs(j.imag()) < 1e-10 && std::abs(j.real() - jr) < 1e-10)
                out.points.push_back({(long long)jr, Nu::of(nu)});
        }
        out.cls = ParamClass::SimpleGeneric; // non-rational nu is always generic
    }
    return out;
}

// --- K-types and sectors -----------------------------------------------------

struct KType {
    int h = 0;
    int p = 0;
    bool valid() const { return p >= 0 && ((h - p) % 2 == 0); }
};

// sect(j): |h - 2j| <= 3p with the parity constraint.
inline bool sector_contains(long long j, const KType& kt) {
    return kt.valid() && std::llabs(kt.h - 2 * j) <= 3LL * kt.p;
}

// --- non-abelian parameters --------------------------------------------------

// Fourier term order (ell, c, d) with ell in (sigma/2) Z, c mod 2 ell, d odd.
struct NabTriple {
    int sigma = 1;       // lattice index
    long long two_ell = 1; // 2*ell, a nonzero multiple of sigma
    long long c = 0;      // canonical representative in [0, |2 ell|)
    long long d = 1;      // metaplectic parameter, odd

    double ell() const { return double(two_ell) / 2.0; }
    int eps() const { return two_ell > 0 ? 1 : -1; }

    void validate() const {
        if (sigma < 1) throw std::invalid_argument("NabTriple: sigma must be >= 1");
        if (two_ell == 0 || two_ell % sigma != 0)
            throw std::invalid_argument("NabTriple: ell must be a nonzero multiple of sigma/2");
        if (d % 2 == 0) throw std::invalid_argument("NabTriple: d must be odd");
        if (c < 0 || c >= std::llabs(two_ell))
            throw std::invalid_argument("NabTriple: c out of canonical range");
    }
    static long long canonical_c(long long c, long long two_ell) {
        long long m = std::llabs(two_ell);
        long long r = c % m;
        return r < 0 ? r + m : r;
    }
};

// m0(j) = eps (d - 2j)/6 - 1/2; integral whenever the K-type tau^{2j}_0 can
// carry the metaplectic parameter d at all.
inline Rational m0_of(const NabTriple& n, long long j) {
    return Rational(n.eps()) * Rational(n.d - 2 * j, 6) - Rational(1, 2);
}
inline bool m0_is_admissible(const NabTriple& n, long long j) {
    Rational m = m0_of(n, j);
    return m.is_integer() && m.num() >= 0;
}

// kappa0(j) = -eps (d + j)/6 = -m0(j) - (eps j + 1)/2
inline Rational kappa0_of(const NabTriple& n, long long j) {
    return Rational(-n.eps()) * Rational(n.d + j, 6);
}

// All derived quantities attached to a K-type component (h, r).
struct NabDerived {
    int eps = 1;
    Rational m0;      // m0(j)
    Rational r0;      // r0(h) = (h-d)/3 + eps
    Rational m_hr;    // m(h,r) = eps (d - h + 3r)/6 - 1/2
    Rational kappa_r; // kappa(r) = -m(h,r) - eps s(h,r) - 1/2
    Rational s_r;     // s(r) = (h-r)/4
    Rational kappa0;  // kappa0(j)
    bool ktype_admissible = false; // K-type allowed in the module
};

inline NabDerived nab_derived(const NabTriple& n, long long j, long long h, long long r) {
    n.validate();
    NabDerived out;
    out.eps = n.eps();
    out.m0 = m0_of(n, j);
    out.r0 = Rational(h - n.d, 3) + Rational(out.eps);
    out.m_hr = Rational(out.eps) * Rational(n.d - h + 3 * r, 6) - Rational(1, 2);
    out.s_r = Rational(h - r, 4);
    out.kappa_r = -out.m_hr - Rational(out.eps) * out.s_r - Rational(1, 2);
    out.kappa0 = kappa0_of(n, j);
    // Admissibility of the K-type (any p with |h-2j| <= 3p understood):
    // h - 3p <= d - 3 for ell > 0, h + 3p >= d + 3 for ell < 0; stated here
    // via r0 against the component range |r| <= p with p read from (h, j).
    long long p = std::llabs(h - 2 * j) / 3; // smallest p with h in sect(j)
    if (out.eps > 0)
        out.ktype_admissible = (h - 3 * p <= n.d - 3);
    else
        out.ktype_admissible = (h + 3 * p >= n.d + 3);
    return out;
}

// --- orbit filters -------------------------------------------------------------

inline std::vector<SpectralPoint> wo_plus(const WeylOrbitData& orbit) {
    std::vector<SpectralPoint> out;
    for (const auto& p : orbit.points)
        if (p.nu.value.real() > -1e-14) out.push_back(p);
    return out;
}

inline std::vector<SpectralPoint> wo_n(const WeylOrbitData& orbit, const NabTriple& n) {
    std::vector<SpectralPoint> out;
    for (const auto& p : orbit.points)
        if (m0_is_admissible(n, p.j)) out.push_back(p);
    return out;
}

inline std::vector<SpectralPoint> wo_n_plus(const WeylOrbitData& orbit, const NabTriple& n) {
    std::vector<SpectralPoint> out;
    for (const auto& p : wo_plus(orbit))
        if (m0_is_admissible(n, p.j)) out.push_back(p);
    return out;
}

// --- the integral lattice, dominant representatives ---------------------------

// L = {(j,nu) integral, j = nu mod 2}; L+ is the closed dominant cone nu >= |j|.
struct LatticePoint {
    long long j = 0;
    long long nu = 0;
    bool in_lattice() const { return (j - nu) % 2 == 0 && !(j == 0 && nu == 0); }
};

struct ChamberData {
    long long jp, nup; // dominant representative, nu_+ >= |j_+|
    long long jr, nur; // image under S1
    long long jl, nul; // image under S2
};

// Dominant data for an integral orbit through (j, nu).
inline ChamberData chamber_data(long long j, long long nu) {
    if ((j - nu) % 2 != 0) throw std::invalid_argument("chamber_data: not a lattice point");
    WeylOrbitData orb = weyl_orbit({j, Nu::of(Rational(nu))});
    for (const auto& p : orb.points) {
        long long nn = p.nu.rat.num();
        if (!p.nu.rat.is_integer()) continue;
        if (nn >= std::llabs(p.j)) {
            ChamberData out;
            out.jp = p.j;
            out.nup = nn;
            auto [jr, nr] = weyl_s1(Rational(p.j), Rational(nn));
            auto [jl, nl] = weyl_s2(Rational(p.j), Rational(nn));
            out.jr = jr.num();
            out.nur = nr.num();
            out.jl = jl.num();
            out.nul = nl.num();
            return out;
        }
    }
    throw std::logic_error("chamber_data: no dominant representative found");
}

} // namespace su21::spec
