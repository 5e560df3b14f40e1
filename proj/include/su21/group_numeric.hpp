#pragma once

// Floating-point computations in the matrix group SU(2,1): constructors for
// the Iwasawa factors, decompositions, the action on the upper half-plane
// model of the symmetric space, polynomial basis functions on the maximal
// compact subgroup, and numeric left/right differentiation.  This module is
// the independent oracle against which the symbolic shift-operator calculus
// is checked.

#include "su21/lie_symbolic.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace su21::grp {

using cdbl = std::complex<double>;

struct Mat3 {
    std::array<cdbl, 9> a{};

    static Mat3 identity() {
        Mat3 m;
        m.a = {1, 0, 0, 0, 1, 0, 0, 0, 1};
        return m;
    }

    cdbl& operator()(int r, int c) { return a[3 * r + c]; }
    const cdbl& operator()(int r, int c) const { return a[3 * r + c]; }

    friend Mat3 operator*(const Mat3& x, const Mat3& y) {
        Mat3 z;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                z(r, c) = x(r, 0) * y(0, c) + x(r, 1) * y(1, c) + x(r, 2) * y(2, c);
        return z;
    }
    friend Mat3 operator+(const Mat3& x, const Mat3& y) {
        Mat3 z;
        for (int k = 0; k < 9; ++k) z.a[k] = x.a[k] + y.a[k];
        return z;
    }
    friend Mat3 operator*(cdbl s, const Mat3& x) {
        Mat3 z;
        for (int k = 0; k < 9; ++k) z.a[k] = s * x.a[k];
        return z;
    }

    Mat3 conj_transpose() const {
        Mat3 z;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) z(r, c) = std::conj((*this)(c, r));
        return z;
    }

    cdbl det() const {
        const auto& m = *this;
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }

    Mat3 inverse() const {
        const auto& m = *this;
        cdbl d = det();
        Mat3 z;
        z(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / d;
        z(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / d;
        z(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / d;
        z(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / d;
        z(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / d;
        z(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / d;
        z(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / d;
        z(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / d;
        z(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / d;
        return z;
    }

    double norm_inf() const {
        double n = 0;
        for (const auto& e : a) n = std::max(n, std::abs(e));
        return n;
    }
};

inline Mat3 to_dbl(const lie::Mat3q& m) {
    Mat3 z;
    for (int k = 0; k < 9; ++k) z.a[k] = m.a[k].to_complex();
    return z;
}

inline Mat3 form_matrix() {
    Mat3 m;
    m.a = {1, 0, 0, 0, 1, 0, 0, 0, -1};
    return m;
}

// Residual of the defining relations: conj(g)^t I21 g = I21 and det g = 1.
inline double su21_residual(const Mat3& g) {
    Mat3 r = g.conj_transpose() * form_matrix() * g;
    r.a[0] -= 1.0;
    r.a[4] -= 1.0;
    r.a[8] += 1.0;
    return std::max(r.norm_inf(), std::abs(g.det() - 1.0));
}

// --- constructors ----------------------------------------------------------

inline Mat3 n_elt(cdbl b, double r) {
    const cdbl i(0, 1);
    double b2 = std::norm(b);
    Mat3 m;
    m(0, 0) = 1.0 + i * r - b2 / 2.0;
    m(0, 1) = b;
    m(0, 2) = -i * r + b2 / 2.0;
    m(1, 0) = -std::conj(b);
    m(1, 1) = 1.0;
    m(1, 2) = std::conj(b);
    m(2, 0) = i * r - b2 / 2.0;
    m(2, 1) = b;
    m(2, 2) = 1.0 - i * r + b2 / 2.0;
    return m;
}
inline Mat3 n_elt(double x, double y, double r) { return n_elt(cdbl(x, y), r); }

inline Mat3 a_elt(double t) {
    if (!(t > 0)) throw std::invalid_argument("a_elt: t must be positive");
    Mat3 m;
    m(0, 0) = (t + 1.0 / t) / 2.0;
    m(0, 2) = (t - 1.0 / t) / 2.0;
    m(1, 1) = 1.0;
    m(2, 0) = (t - 1.0 / t) / 2.0;
    m(2, 2) = (t + 1.0 / t) / 2.0;
    return m;
}

inline Mat3 k_elt(cdbl eta, cdbl alpha, cdbl beta) {
    if (std::abs(std::abs(eta) - 1.0) > 1e-12 ||
        std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
        throw std::invalid_argument("k_elt: parameter constraints violated");
    Mat3 m;
    m(0, 0) = eta * alpha;
    m(0, 1) = eta * beta;
    m(1, 0) = -eta * std::conj(beta);
    m(1, 1) = eta * std::conj(alpha);
    m(2, 2) = 1.0 / (eta * eta);
    return m;
}

inline Mat3 m_elt(cdbl zeta) {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
        throw std::invalid_argument("m_elt: |zeta| must be 1");
    Mat3 m;
    m(0, 0) = zeta;
    m(1, 1) = 1.0 / (zeta * zeta);
    m(2, 2) = zeta;
    return m;
}

inline Mat3 w_elt() { return k_elt(1.0, -1.0, 0.0); }

// h(c) = a(|c|) m(c/|c|) for nonzero complex c.
inline Mat3 h_elt(cdbl c) {
    double ac = std::abs(c);
    if (!(ac > 0)) throw std::invalid_argument("h_elt: c must be nonzero");
    return a_elt(ac) * m_elt(c / ac);
}

// --- symmetric space -------------------------------------------------------

struct HalfPlanePoint {
    cdbl z;
    cdbl u;
    double tau() const { return z.imag() - std::norm(u); }
    bool in_domain(double tol = 0.0) const { return tau() > tol; }
};

// Projective coordinates of a point: a negative line for the hermitian form.
inline std::array<cdbl, 3> point_vector(const HalfPlanePoint& pt) {
    const cdbl i(0, 1);
    return {(pt.z - i) / 2.0, pt.u, (pt.z + i) / 2.0};
}

inline HalfPlanePoint act(const Mat3& g, const HalfPlanePoint& pt) {
    auto v = point_vector(pt);
    std::array<cdbl, 3> w;
    for (int r = 0; r < 3; ++r)
        w[r] = g(r, 0) * v[0] + g(r, 1) * v[1] + g(r, 2) * v[2];
    const cdbl i(0, 1);
    cdbl lambda = -i * (w[2] - w[0]);
    return {(w[0] + w[2]) / lambda, w[1] / lambda};
}

// Image of the boundary point fixed by NAM; finite unless g is in NAM.
inline HalfPlanePoint act_on_infinity(const Mat3& g) {
    std::array<cdbl, 3> w = {g(0, 0) + g(0, 2), g(1, 0) + g(1, 2), g(2, 0) + g(2, 2)};
    const cdbl i(0, 1);
    cdbl lambda = -i * (w[2] - w[0]);
    return {(w[0] + w[2]) / lambda, w[1] / lambda};
}

// --- Iwasawa and Bruhat decompositions --------------------------------------

struct IwasawaParts {
    cdbl b;
    double r;
    double t;
    Mat3 k;
    Mat3 reconstruct() const { return n_elt(b, r) * a_elt(t) * k; }
};

// g = n(b,r) a(t) k, computed by letting g act on the base point (i,0).
inline IwasawaParts iwasawa(const Mat3& g, double tol = 1e-8) {
    if (su21_residual(g) > tol) throw std::invalid_argument("iwasawa: not in SU(2,1)");
    HalfPlanePoint p = act(g, {cdbl(0, 1), 0});
    const cdbl i(0, 1);
    cdbl b = i * std::conj(p.u); // u = i conj(b)
    double r = p.z.real() / 2.0;
    double t2 = p.z.imag() - std::norm(p.u);
    if (!(t2 > 0)) throw std::invalid_argument("iwasawa: degenerate point");
    double t = std::sqrt(t2);
    Mat3 k = (n_elt(b, r) * a_elt(t)).inverse() * g;
    return {b, r, t, k};
}

// Parameters (eta, alpha, beta) of k in K, canonicalized to Re eta >= 0
// (ties resolved by Im eta >= 0).
struct KParams {
    cdbl eta, alpha, beta;
};

inline KParams k_params(const Mat3& k, double tol = 1e-8) {
    cdbl e2 = k(2, 2); // eta^{-2}
    if (std::abs(k(0, 2)) > tol || std::abs(k(1, 2)) > tol || std::abs(k(2, 0)) > tol ||
        std::abs(k(2, 1)) > tol || std::abs(std::abs(e2) - 1.0) > tol)
        throw std::invalid_argument("k_params: matrix not in K");
    cdbl eta = std::sqrt(1.0 / e2);
    if (eta.real() < 0 || (eta.real() == 0 && eta.imag() < 0)) eta = -eta;
    return {eta, std::conj(k(1, 1) / eta), k(0, 1) / eta};
}

struct BruhatParts {
    bool big_cell = false;
    // small cell: g = n1 h(c); big cell: g = n1 w h(c) n2
    cdbl n1_b;
    double n1_r = 0;
    cdbl c;
    cdbl n2_b;
    double n2_r = 0;

    Mat3 reconstruct() const {
        Mat3 m = n_elt(n1_b, n1_r);
        if (big_cell) m = m * w_elt();
        m = m * h_elt(c);
        if (big_cell) m = m * n_elt(n2_b, n2_r);
        return m;
    }
};

// Cell membership is decided by whether g fixes the boundary point at
// infinity, i.e. whether g maps the direction (1,0,1) to a multiple of
// itself (within 1e-10 of the matrix scale).
inline BruhatParts bruhat_refine(const Mat3& g) {
    const cdbl i(0, 1);
    std::array<cdbl, 3> w = {g(0, 0) + g(0, 2), g(1, 0) + g(1, 2), g(2, 0) + g(2, 2)};
    double scale = std::max({std::abs(w[0]), std::abs(w[1]), std::abs(w[2]), 1e-300});
    bool fixes_infinity =
        std::abs(w[1]) <= 1e-10 * scale && std::abs(w[0] - w[2]) <= 1e-10 * scale;

    BruhatParts out;
    if (fixes_infinity) {
        IwasawaParts iw = iwasawa(g);
        KParams kp = k_params(iw.k);
        // k must lie in M: alpha on the unit circle, beta = 0
        if (std::abs(kp.beta) > 1e-8)
            throw std::invalid_argument("bruhat_refine: NAM factor not in NAM");
        // k = m(zeta) means k(eta,alpha,0) with zeta = k(0,0) entry
        cdbl zeta = iw.k(0, 0);
        out.big_cell = false;
        out.n1_b = iw.b;
        out.n1_r = iw.r;
        out.c = iw.t * zeta;
        return out;
    }

    // g = n1 w h(c) n2.  The boundary image of infinity determines n1.
    HalfPlanePoint bp = act_on_infinity(g);
    cdbl b1 = i * std::conj(bp.u);
    double r1 = bp.z.real() / 2.0;
    Mat3 q = (n_elt(b1, r1) * w_elt()).inverse() * g; // = h(c) n2, fixes infinity
    IwasawaParts iq = iwasawa(q);
    cdbl zeta = iq.k(0, 0);
    if (std::abs(std::abs(zeta) - 1.0) > 1e-8 || std::abs(iq.k(0, 1)) > 1e-8)
        throw std::invalid_argument("bruhat_refine: residual factor not in NAM");
    out.big_cell = true;
    out.n1_b = b1;
    out.n1_r = r1;
    out.c = iq.t * zeta;
    // q = n(b,r) h(c) = h(c) n2 with n2 = h(c)^{-1} n(b,r) h(c)
    cdbl z3 = zeta * zeta * zeta;
    out.n2_b = iq.b / (z3 * iq.t);
    out.n2_r = iq.r / (iq.t * iq.t);
    return out;
}

// --- polynomial basis functions on K ----------------------------------------

struct KBasisIndex {
    int h, p, r, q;
    bool valid() const {
        return p >= 0 && std::abs(r) <= p && std::abs(q) <= p &&
               ((h - p) % 2 == 0) && ((r - p) % 2 == 0) && ((q - p) % 2 == 0);
    }
};

namespace detail {
inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
    return r;
}
} // namespace detail

// Polynomial function on SU(2) from the generating identity
//   (a x + c)^{(p-q)/2} (b x + d)^{(p+q)/2} = sum_r Phi_{p,r,q} x^{(p-r)/2}.
inline cdbl su2_poly(int p, int r, int q, cdbl a, cdbl b, cdbl c, cdbl d) {
    int m = (p - q) / 2, n = (p + q) / 2;
    int target = (p + r) / 2; // total number of c/d factors
    cdbl sum = 0.0;
    for (int i = std::max(0, target - n); i <= std::min(m, target); ++i) {
        int j = target - i;
        cdbl term = detail::binom(m, i) * detail::binom(n, j);
        term *= std::pow(a, double(m - i)) * std::pow(c, double(i));
        term *= std::pow(b, double(n - j)) * std::pow(d, double(j));
        sum += term;
    }
    return sum;
}

// Phi^h_{p,r,q}(k): the SU(2) polynomial twisted by the central character.
inline cdbl kpoly_eval(const KBasisIndex& idx, const Mat3& k) {
    if (!idx.valid()) throw std::invalid_argument("kpoly_eval: invalid index");
    KParams kp = k_params(k);
    cdbl val = su2_poly(idx.p, idx.r, idx.q, kp.alpha, kp.beta, -std::conj(kp.beta),
                        std::conj(kp.alpha));
    return std::pow(kp.eta, double(-idx.h)) * val;
}

// --- numeric differentiation -------------------------------------------------

using GroupFunction = std::function<cdbl(const Mat3&)>;

inline Mat3 mat_exp(const Mat3& x) {
    Mat3 sum = Mat3::identity();
    Mat3 term = Mat3::identity();
    for (int n = 1; n <= 24; ++n) {
        term = (cdbl(1.0 / n)) * (term * x);
        sum = sum + term;
        if (term.norm_inf() < 1e-18 * std::max(1.0, sum.norm_inf())) break;
    }
    return sum;
}

enum class Side { Left, Right };

// d/ds f(g exp(s X)) at s=0 (Right), or d/ds f(exp(s X) g) (Left), for a
// single real direction, via a fourth-order central stencil with one
// Richardson step.
inline cdbl numeric_derivative_dir(const GroupFunction& f, const Mat3& g, const Mat3& X,
                                   Side side, double h = 1e-5) {
    auto shifted = [&](double s) {
        Mat3 e = mat_exp(cdbl(s) * X);
        return side == Side::Right ? f(g * e) : f(e * g);
    };
    auto stencil = [&](double hh) {
        return (-shifted(2 * hh) + 8.0 * shifted(hh) - 8.0 * shifted(-hh) + shifted(-2 * hh)) /
               (12.0 * hh);
    };
    cdbl d1 = stencil(h);
    cdbl d2 = stencil(h / 2.0);
    return (16.0 * d2 - d1) / 15.0;
}

// Complex-linear extension to combinations of basis elements.
inline cdbl numeric_derivative(const GroupFunction& f, const Mat3& g,
                               const lie::LieCombination& X, Side side, double h = 1e-5) {
    cdbl total = 0.0;
    for (const auto& [t, c] : X.coef)
        total += c.to_complex() *
                 numeric_derivative_dir(f, g, to_dbl(lie::basis_matrix(t)), side, h);
    return total;
}

// Action of an enveloping-algebra element by iterated right differentiation.
// Words act with the leftmost factor applied last.
inline cdbl apply_env_numeric(const lie::EnvElement& u, const GroupFunction& f, const Mat3& g,
                              double h = 2e-3) {
    std::function<cdbl(const lie::Word&, const Mat3&)> rec =
        [&](const lie::Word& w, const Mat3& at) -> cdbl {
        if (w.empty()) return f(at);
        lie::Word rest(w.begin() + 1, w.end());
        Mat3 X = to_dbl(lie::basis_matrix(lie::Tag(w[0])));
        auto inner = [&](const Mat3& gg) { return rec(rest, gg); };
        auto shifted = [&](double s) { return inner(at * mat_exp(cdbl(s) * X)); };
        auto stencil = [&](double hh) {
            return (-shifted(2 * hh) + 8.0 * shifted(hh) - 8.0 * shifted(-hh) +
                    shifted(-2 * hh)) /
                   (12.0 * hh);
        };
        cdbl d1 = stencil(h), d2 = stencil(h / 2.0);
        return (16.0 * d2 - d1) / 15.0;
    };
    cdbl total = 0.0;
    for (const auto& [w, c] : u.terms) total += c.to_complex() * rec(w, g);
    return total;
}

} // namespace su21::grp
