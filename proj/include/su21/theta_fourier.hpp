#pragma once

// Theta functions on the quotient of the unipotent group by a standard
// lattice, their transformation laws, quadrature inner products, Fourier
// term operators realized by quadrature, and the action of the lattice
// normalizer on basis vectors.

#include "su21/group_numeric.hpp"
#include "su21/special_functions.hpp"
#include "su21/spectral_params.hpp"

#include <functional>
#include <vector>

namespace su21::th {

using cdbl = std::complex<double>;
using su21::sf::kPi;

// Coordinates on N: n(x, y, r) with b = x + i y.
struct NCoord {
    double x = 0, y = 0, r = 0;
    grp::Mat3 to_group() const { return grp::n_elt(x, y, r); }
};

// n(x,y,r) n(x',y',r') = n(x+x', y+y', r+r'+Im(conj(b) b'))
inline NCoord n_mul(const NCoord& a, const NCoord& b) {
    double im = a.x * b.y - a.y * b.x;
    return {a.x + b.x, a.y + b.y, a.r + b.r + im};
}

struct StandardLattice {
    int sigma = 1;
    // generators n(1,0,0), n(0,1,0), n(0,0,2/sigma)
    std::vector<NCoord> generators() const {
        return {{1, 0, 0}, {0, 1, 0}, {0, 0, 2.0 / sigma}};
    }
    double r_period() const { return 2.0 / sigma; }
};

// unitary character of N attached to beta
inline cdbl character_chi(cdbl beta, const NCoord& n) {
    double phase = 2.0 * kPi * (beta.real() * n.x + beta.imag() * n.y);
    return std::polar(1.0, phase);
}

struct ThetaIndex {
    spec::NabTriple n; // carries sigma, 2*ell, c
    int m = 0;         // Hermite index
};

// Theta series against an arbitrary Schwartz function.
inline cdbl theta_eval_fn(double ell, long long c, const std::function<double(double)>& phi,
                          const NCoord& n) {
    // sum over k with |k + c/(2 ell) + y| below the Gaussian tail cutoff
    double center = double(c) / (2.0 * ell) + n.y;
    double radius = std::sqrt(std::log(1e16) / (2.0 * kPi * std::abs(ell))) + 2.0;
    long long k0 = llround(-center);
    cdbl sum = 0.0;
    for (long long k = k0 - (long long)std::ceil(radius); k <= k0 + (long long)std::ceil(radius);
         ++k) {
        double arg = center + double(k);
        double phase = 2.0 * kPi * ell * (n.r - n.x * (double(c) / ell + 2.0 * k + n.y));
        sum += std::polar(1.0, phase) * phi(arg);
    }
    return sum;
}

inline cdbl theta_eval(const ThetaIndex& idx, const NCoord& n) {
    double ell = idx.n.ell();
    int m = idx.m;
    return theta_eval_fn(ell, idx.n.c, [ell, m](double xi) { return sf::hermite_fn(ell, m, xi); },
                         n);
}

// --- quadrature on the compact quotient --------------------------------------

using NFunction = std::function<cdbl(const NCoord&)>;

// integral over the fundamental box [0,1]^2 x [0, 2/sigma] with the
// rectangle rule, doubling the resolution until stable
inline cdbl integrate_lattice_quotient(const StandardLattice& lat, const NFunction& f,
                                       double tol = 1e-9, int n_start = 32, int n_max = 256) {
    double rp = lat.r_period();
    auto pass = [&](int N) {
        cdbl sum = 0.0;
        for (int ix = 0; ix < N; ++ix)
            for (int iy = 0; iy < N; ++iy)
                for (int ir = 0; ir < N; ++ir)
                    sum += f({double(ix) / N, double(iy) / N, rp * ir / N});
        return sum * (rp / double(N) / double(N) / double(N));
    };
    cdbl prev = pass(n_start);
    for (int N = 2 * n_start; N <= n_max; N *= 2) {
        cdbl cur = pass(N);
        if (std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw std::runtime_error("integrate_lattice_quotient: quadrature did not stabilize");
}

inline cdbl inner_product(const StandardLattice& lat, const NFunction& f1, const NFunction& f2,
                          double tol = 1e-9) {
    return integrate_lattice_quotient(
        lat, [&](const NCoord& n) { return f1(n) * std::conj(f2(n)); }, tol);
}

// --- Fourier term operators ---------------------------------------------------

// abelian term: (sigma/2) \int conj(chi_beta(n)) F(n) dn
inline cdbl fourier_coeff_ab(const StandardLattice& lat, const NFunction& F, cdbl beta,
                             double tol = 1e-9) {
    cdbl v = integrate_lattice_quotient(
        lat, [&](const NCoord& n) { return std::conj(character_chi(beta, n)) * F(n); }, tol);
    return v * (lat.sigma / 2.0);
}

// non-abelian coefficient against Theta_{ell,c}(h_{ell,m})
inline cdbl fourier_coeff_nab(const StandardLattice& lat, const NFunction& F,
                              const ThetaIndex& idx, double tol = 1e-9) {
    cdbl v = integrate_lattice_quotient(
        lat, [&](const NCoord& n) { return std::conj(theta_eval(idx, n)) * F(n); }, tol);
    return v * (lat.sigma / 2.0);
}

// The full (ell,c) term of F as a function on N: sum of the projections on
// the theta basis, truncated once the coefficients fall below the tolerance.
inline cdbl fourier_term_nab(const StandardLattice& lat, const NFunction& F,
                             const spec::NabTriple& n0, const NCoord& at, int m_max = 24,
                             double tol = 1e-9) {
    cdbl sum = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        ThetaIndex idx{n0, m};
        cdbl coef = fourier_coeff_nab(lat, F, idx, tol);
        sum += coef * theta_eval(idx, at);
    }
    return sum;
}

// --- Haar quadrature on K and the polynomial norms -----------------------------

// f integrated against the probability Haar measure of K.  In the angles
// (eta = e^{i phi0}, alpha = cos(theta) e^{i phi1}, beta = sin(theta) e^{i phi2})
// the measure is dphi0/(2pi) du dphi1 dphi2/(2pi)^2 with u = sin^2 theta, so
// the rectangle rule in the periodic angles and Gauss-Legendre in u make the
// quadrature exact on trigonometric polynomials of bounded degree.
inline cdbl integrate_k(const std::function<cdbl(const grp::Mat3&)>& f, int n_eta = 24,
                        int n_u = 16, int n_phi = 24) {
    static const double gl_x[8] = {-0.9602898564975363, -0.7966664774136267,
                                   -0.5255324099163290, -0.1834346424956498,
                                   0.1834346424956498,  0.5255324099163290,
                                   0.7966664774136267,  0.9602898564975363};
    static const double gl_w[8] = {0.1012285362903763, 0.2223810344533745,
                                   0.3137066458778873, 0.3626837833783620,
                                   0.3626837833783620, 0.3137066458778873,
                                   0.2223810344533745, 0.1012285362903763};
    cdbl sum = 0.0;
    int panels = n_u / 8 + 1;
    for (int a = 0; a < n_eta; ++a) {
        double phi0 = 2.0 * kPi * a / n_eta;
        for (int pn = 0; pn < panels; ++pn) {
            double lo = double(pn) / panels, hi = double(pn + 1) / panels;
            for (int q = 0; q < 8; ++q) {
                double u = (lo + hi) / 2 + (hi - lo) / 2 * gl_x[q];
                double wu = gl_w[q] * (hi - lo) / 2;
                double ct = std::sqrt(1.0 - u), st = std::sqrt(u);
                for (int c1 = 0; c1 < n_phi; ++c1)
                    for (int c2 = 0; c2 < n_phi; ++c2) {
                        double p1 = 2.0 * kPi * c1 / n_phi, p2 = 2.0 * kPi * c2 / n_phi;
                        grp::Mat3 k = grp::k_elt(std::polar(1.0, phi0), std::polar(ct, p1),
                                                 std::polar(st, p2));
                        sum += f(k) * wu;
                    }
            }
        }
    }
    return sum / double(n_eta) / double(n_phi) / double(n_phi);
}

// squared L2(K) norm of Phi^h_{p,r,q}
inline double kpoly_norm2(const grp::KBasisIndex& idx) {
    cdbl v = integrate_k([&](const grp::Mat3& k) {
        cdbl x = grp::kpoly_eval(idx, k);
        return cdbl(std::norm(x), 0.0);
    });
    return v.real();
}

// --- Schroedinger representation checks ----------------------------------------

// B = (1/(8 pi i ell)) d^2/dxi^2 + 2 pi i ell xi^2, applied to a Hermite
// function; returns the pointwise ratio against the function itself.
inline cdbl metaplectic_eigenratio(double ell, int m, double xi = 0.37) {
    const cdbl i(0, 1);
    double h = sf::hermite_fn(ell, m, xi);
    double h2 = sf::hermite_fn_deriv2(ell, m, xi);
    cdbl bh = h2 / (8.0 * kPi * i * ell) + 2.0 * kPi * i * ell * xi * xi * h;
    return bh / h;
}

// --- normalizer action -----------------------------------------------------------

// Basis data for a vector u(n) f(t) Phi^h_{p,r,q}(k); the action of the
// lattice normalizer touches only u and multiplies by a constant, except for
// the quarter rotation which mixes the shift classes c.
struct NabVector {
    spec::NabTriple n;
    int m = 0;
    int h = 0, r = 0;
    cdbl coef{1.0, 0.0};
};

enum class NormalizerElt { NCenter, NX, NY, MCubeRoot, MQuarter };

struct NormalizerResult {
    std::vector<NabVector> parts; // sum of basis vectors
};

// rho is the center parameter for NCenter (n(0,rho)); ignored otherwise.
inline NormalizerResult normalizer_action(NormalizerElt e, const NabVector& v,
                                          double rho = 0.0) {
    const cdbl i(0, 1);
    double ell = v.n.ell();
    NormalizerResult out;
    switch (e) {
        case NormalizerElt::NCenter: {
            NabVector w = v;
            w.coef *= std::polar(1.0, 2.0 * kPi * rho * ell);
            out.parts.push_back(w);
            break;
        }
        case NormalizerElt::NX: {
            NabVector w = v;
            w.coef *= std::polar(1.0, 2.0 * kPi * double(v.n.c) / double(v.n.sigma));
            out.parts.push_back(w);
            break;
        }
        case NormalizerElt::NY: {
            NabVector w = v;
            long long shift = v.n.two_ell / v.n.sigma; // 2 ell / sigma
            w.n.c = spec::NabTriple::canonical_c(v.n.c + shift, v.n.two_ell);
            out.parts.push_back(w);
            break;
        }
        case NormalizerElt::MCubeRoot: {
            NabVector w = v;
            w.coef *= std::exp(i * kPi * double(v.h - 3 * v.r) / 3.0);
            out.parts.push_back(w);
            break;
        }
        case NormalizerElt::MQuarter: {
            // finite Fourier transform over the shift classes
            long long M = std::llabs(v.n.two_ell);
            cdbl pref = std::exp(i * kPi * double(v.h - 3 * v.r) / 4.0) *
                        std::pow(i * double(v.n.eps()), double(v.m)) / std::sqrt(double(M));
            for (long long cp = 0; cp < M; ++cp) {
                NabVector w = v;
                w.n.c = cp;
                w.coef = v.coef * pref *
                         std::exp(-i * kPi * double(v.n.c) * double(cp) / ell);
                out.parts.push_back(w);
            }
            break;
        }
    }
    return out;
}

} // namespace su21::th
