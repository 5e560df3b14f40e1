#include <catch2/catch_amalgamated.hpp>

#include "su21/theta_fourier.hpp"

#include <random>

using namespace su21;
using namespace su21::th;

namespace {

std::mt19937 rng(20230131u);
double runif(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

NCoord random_n() { return {runif(-1, 1), runif(-1, 1), runif(-2, 2)}; }

// random element of the lattice: word in the three generators
NCoord random_lattice_elt(const StandardLattice& lat) {
    std::uniform_int_distribution<int> coef(-3, 3);
    NCoord g{0, 0, 0};
    auto gens = lat.generators();
    for (int step = 0; step < 4; ++step) {
        int which = std::uniform_int_distribution<int>(0, 2)(rng);
        int rep = coef(rng);
        for (int k = 0; k < std::abs(rep); ++k) {
            NCoord t = gens[which];
            if (rep < 0) {
                t.x = -t.x;
                t.y = -t.y;
                t.r = -t.r;
            }
            g = n_mul(g, t);
        }
    }
    return g;
}

} // namespace

TEST_CASE("commutator of the first two lattice generators is the central n(0,0,2)") {
    NCoord a{1, 0, 0}, b{0, 1, 0};
    NCoord ab = n_mul(a, b), ba = n_mul(b, a);
    // a b = (b a) n(0,0,2): central element, so compare coordinates
    CHECK(ab.x == ba.x);
    CHECK(ab.y == ba.y);
    CHECK(ab.r - ba.r == Catch::Approx(2.0));
}

TEST_CASE("theta functions are invariant under the standard lattice") {
    for (int sigma : {1, 2}) {
        StandardLattice lat{sigma};
        spec::NabTriple n0{sigma, sigma, 0, 3}; // ell = sigma/2
        for (int m : {0, 1, 3}) {
            ThetaIndex idx{n0, m};
            for (int trial = 0; trial < 20; ++trial) {
                NCoord pt = random_n();
                NCoord gamma = random_lattice_elt(lat);
                cdbl lhs = theta_eval(idx, n_mul(gamma, pt));
                cdbl rhs = theta_eval(idx, pt);
                CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("shift relations in the N-coordinates") {
    spec::NabTriple n0{1, 2, 1, 5}; // ell = 1, c = 1
    double ell = n0.ell();
    const cdbl i(0, 1);
    for (int m : {0, 2}) {
        ThetaIndex idx{n0, m};
        for (int trial = 0; trial < 8; ++trial) {
            NCoord pt = random_n();
            // left shift by n(1/(2 ell), 0, 0) multiplies by e^{-pi i c/ell}
            NCoord s1 = n_mul({1.0 / (2 * ell), 0, 0}, pt);
            CHECK(std::abs(theta_eval(idx, s1) -
                           std::exp(-i * kPi * double(n0.c) / ell) * theta_eval(idx, pt)) <
                  1e-10);
            // left shift by n(0, 1/(2 ell), 0) raises c by one
            NCoord s2 = n_mul({0, 1.0 / (2 * ell), 0}, pt);
            ThetaIndex idx2{n0, m};
            idx2.n.c = spec::NabTriple::canonical_c(n0.c + 1, n0.two_ell);
            CHECK(std::abs(theta_eval(idx, s2) - theta_eval(idx2, pt)) < 1e-10);
        }
    }
}

TEST_CASE("theta value at the identity is a Gaussian sum") {
    spec::NabTriple n0{1, 3, 2, 3}; // ell = 3/2, c = 2
    double ell = n0.ell();
    ThetaIndex idx{n0, 0};
    cdbl got = theta_eval(idx, {0, 0, 0});
    double expected = 0.0;
    for (long long k = -40; k <= 40; ++k) {
        double arg = double(n0.c) / (2 * ell) + k;
        expected += std::sqrt(2.0) * std::pow(ell, 0.25) * std::exp(-2 * kPi * ell * arg * arg);
    }
    CHECK(std::abs(got - expected) < 1e-12);
}

TEST_CASE("orthogonality of theta functions and characters") {
    for (int sigma : {1, 2}) {
        StandardLattice lat{sigma};
        spec::NabTriple n1{sigma, sigma, 0, 3};      // ell = sigma/2, c = 0
        auto theta_f = [&](const ThetaIndex& idx) {
            return NFunction([idx](const NCoord& n) { return theta_eval(idx, n); });
        };
        // same index: 2/sigma
        cdbl ip = inner_product(lat, theta_f({n1, 0}), theta_f({n1, 0}));
        CHECK(std::abs(ip - 2.0 / sigma) < 1e-8);
        // c' != c: 0 (needs |2 ell| >= 2, so take ell = sigma)
        spec::NabTriple n2{sigma, 2 * sigma, 0, 3};
        spec::NabTriple n3 = n2;
        n3.c = 1;
        cdbl ip2 = inner_product(lat, theta_f({n2, 0}), theta_f({n3, 0}));
        CHECK(std::abs(ip2) < 1e-8);
        // different Hermite indices: 0
        cdbl ip3 = inner_product(lat, theta_f({n1, 0}), theta_f({n1, 2}));
        CHECK(std::abs(ip3) < 1e-8);
        // different central parameter: 0
        cdbl ip4 = inner_product(lat, theta_f({n1, 0}), theta_f({n2, 0}));
        CHECK(std::abs(ip4) < 1e-8);
    }
    // characters: (chi_beta, chi_beta') = (2/sigma) delta
    StandardLattice lat{1};
    auto chi = [](cdbl beta) {
        return NFunction([beta](const NCoord& n) { return character_chi(beta, n); });
    };
    CHECK(std::abs(inner_product(lat, chi({1, 1}), chi({1, 1})) - 2.0) < 1e-9);
    CHECK(std::abs(inner_product(lat, chi({1, 1}), chi({1, -1}))) < 1e-9);
    CHECK(std::abs(inner_product(lat, chi({0, 0}), chi({2, 0}))) < 1e-9);
}

TEST_CASE("Fourier projections recover basis vectors") {
    StandardLattice lat{1};
    spec::NabTriple n0{1, 1, 0, 3};
    ThetaIndex idx{n0, 0};
    NFunction F = [&](const NCoord& n) { return theta_eval(idx, n); };
    // projection on the same (ell,c) gives back F
    for (int trial = 0; trial < 5; ++trial) {
        NCoord pt = random_n();
        CHECK(std::abs(fourier_term_nab(lat, F, n0, pt, 6) - F(pt)) < 1e-8);
    }
    // abelian projection of a pure character is diagonal
    NFunction G = [](const NCoord& n) { return character_chi({1, 0}, n) * 2.5; };
    CHECK(std::abs(fourier_coeff_ab(lat, G, {1, 0}) - 2.5) < 1e-9);
    CHECK(std::abs(fourier_coeff_ab(lat, G, {0, 1})) < 1e-9);
    CHECK(std::abs(fourier_coeff_ab(lat, G, {-1, 0})) < 1e-9);
    // and the nonabelian coefficients of a character vanish
    CHECK(std::abs(fourier_coeff_nab(lat, G, idx)) < 1e-9);
}

TEST_CASE("Fourier reconstruction of a finite combination") {
    StandardLattice lat{1};
    spec::NabTriple na{1, 1, 0, 3};
    spec::NabTriple nb{1, 1, 1, 3}; // c = 1 mod 2ell=1? canonical range is [0,1), keep c=0
    nb.c = 0;
    nb.d = 5;
    spec::NabTriple nc{1, -1, 0, 3}; // ell = -1/2
    const cdbl i(0, 1);
    NFunction F = [&](const NCoord& n) {
        return 2.0 * theta_eval({na, 0}, n) - 3.0 * i * theta_eval({na, 2}, n) +
               0.7 * theta_eval({nc, 1}, n) + 1.5 * character_chi({1, 1}, n) +
               0.25 * character_chi({0, 0}, n);
    };
    // re-sum the extracted terms over a finite index set
    for (int trial = 0; trial < 3; ++trial) {
        NCoord pt = random_n();
        cdbl sum = 0.0;
        for (int bx = -2; bx <= 2; ++bx)
            for (int by = -2; by <= 2; ++by)
                sum += fourier_coeff_ab(lat, F, cdbl(bx, by)) *
                       character_chi(cdbl(bx, by), pt);
        for (long long te : {1LL, -1LL, 2LL, -2LL}) {
            spec::NabTriple nn{1, te, 0, 3};
            for (long long c = 0; c < std::llabs(te); ++c) {
                nn.c = c;
                sum += fourier_term_nab(lat, F, nn, pt, 8);
            }
        }
        CHECK(std::abs(sum - F(pt)) < 1e-7);
    }
}

TEST_CASE("derived action of the unipotent directions on theta functions") {
    spec::NabTriple n0{1, 1, 0, 3};
    double ell = n0.ell();
    const cdbl i(0, 1);
    for (int m : {0, 1, 2}) {
        ThetaIndex idx{n0, m};
        for (int trial = 0; trial < 4; ++trial) {
            NCoord pt = random_n();
            double h = 1e-4;
            auto at = [&](const NCoord& d) { return theta_eval(idx, n_mul(pt, d)); };
            // X1 direction: right multiplication by n(s,0,0)
            auto dX1 = (at({h, 0, 0}) - at({-h, 0, 0}) -
                        (at({2 * h, 0, 0}) - at({-2 * h, 0, 0})) / 8.0) /
                       (1.5 * h);
            // expected: -4 pi i ell Theta(xi phi)
            cdbl expX1 = -4.0 * kPi * i * ell *
                         theta_eval_fn(ell, n0.c,
                                       [&](double xi) { return xi * sf::hermite_fn(ell, m, xi); },
                                       pt);
            CHECK(std::abs(dX1 - expX1) < 1e-6 * std::max(1.0, std::abs(expX1)));
            // X2 direction: right multiplication by n(0,s,0); expected Theta(phi')
            auto dX2 = (at({0, h, 0}) - at({0, -h, 0}) -
                        (at({0, 2 * h, 0}) - at({0, -2 * h, 0})) / 8.0) /
                       (1.5 * h);
            cdbl expX2 = theta_eval_fn(
                ell, n0.c, [&](double xi) { return sf::hermite_fn_deriv(ell, m, xi); }, pt);
            CHECK(std::abs(dX2 - expX2) < 1e-6 * std::max(1.0, std::abs(expX2)));
            // X0 direction: right multiplication by n(0,0,s/2); expected pi i ell Theta
            auto dX0 = (at({0, 0, h / 2}) - at({0, 0, -h / 2}) -
                        (at({0, 0, h}) - at({0, 0, -h})) / 8.0) /
                       (1.5 * h);
            cdbl expX0 = kPi * i * ell * theta_eval(idx, pt);
            CHECK(std::abs(dX0 - expX0) < 1e-6 * std::max(1.0, std::abs(expX0)));
        }
    }
}

TEST_CASE("ladder relations transported through the theta functions") {
    // the derived representation sends the raising/lowering combinations of
    // X1, X2 to index shifts on the Hermite parameter
    for (long long te : {1LL, -1LL}) {
        spec::NabTriple n0{1, te, 0, 3};
        double ell = n0.ell();
        int eps = n0.eps();
        const cdbl i(0, 1);
        for (int m : {0, 1, 3}) {
            for (int trial = 0; trial < 3; ++trial) {
                NCoord pt = random_n();
                double h = 1e-4;
                auto at = [&](double sx, double sy) {
                    return theta_eval({n0, m}, n_mul(pt, {sx, sy, 0}));
                };
                auto d1 = (at(h, 0) - at(-h, 0) - (at(2 * h, 0) - at(-2 * h, 0)) / 8.0) /
                          (1.5 * h);
                auto d2 = (at(0, h) - at(0, -h) - (at(0, 2 * h) - at(0, -2 * h)) / 8.0) /
                          (1.5 * h);
                cdbl raising = double(eps) * d1 + i * d2; // eps X1 + i X2
                cdbl lowering = double(eps) * d1 - i * d2; // eps X1 - i X2
                cdbl expRaise = -2.0 * i * std::sqrt(2 * kPi * std::abs(ell) * (m + 1)) *
                                theta_eval({n0, m + 1}, pt);
                CHECK(std::abs(raising - expRaise) < 1e-6 * std::max(1.0, std::abs(expRaise)));
                cdbl expLower =
                    m == 0 ? cdbl(0, 0)
                           : -2.0 * i * std::sqrt(2 * kPi * std::abs(ell) * m) *
                                 theta_eval({n0, m - 1}, pt);
                CHECK(std::abs(lowering - expLower) < 1e-6 * std::max(1.0, std::abs(expLower)));
            }
        }
    }
}

TEST_CASE("metaplectic eigenvalues of the harmonic oscillator") {
    const cdbl i(0, 1);
    CHECK(std::abs(metaplectic_eigenratio(0.5, 0) - i * 0.5) < 1e-8);
    CHECK(std::abs(metaplectic_eigenratio(-0.5, 1) + i * 1.5) < 1e-8);
    for (double ell : {0.5, 1.5, -1.0}) {
        for (int m : {0, 1, 2, 5}) {
            double sgn = ell > 0 ? 1.0 : -1.0;
            cdbl expect = i * 0.5 * double(2 * m + 1) * sgn;
            for (double xi : {0.11, 0.37, 0.9}) {
                CHECK(std::abs(metaplectic_eigenratio(ell, m, xi) - expect) < 1e-8);
            }
            // the 2 pi flow multiplies by e^{i pi (2m+1) sign} = -1
            cdbl flow = std::exp(2.0 * kPi * expect);
            CHECK(std::abs(flow + 1.0) < 1e-10);
        }
    }
}

TEST_CASE("quarter-turn transform of theta functions") {
    // Theta_{l,c}(h_m)(n(ib,r)) = (-i sign l)^m / sqrt(2|l|)
    //                             sum_{c'} e^{pi i c c'/l} Theta_{l,c'}(h_m)(n(b,r))
    const cdbl i(0, 1);
    for (long long te : {2LL, -2LL, 4LL}) {
        spec::NabTriple n0{1, te, 0, 3};
        double ell = n0.ell();
        for (int m : {0, 1, 2}) {
            for (long long c = 0; c < std::llabs(te); ++c) {
                n0.c = c;
                for (int trial = 0; trial < 3; ++trial) {
                    NCoord pt = random_n();
                    NCoord rotated{-pt.y, pt.x, pt.r}; // b -> i b
                    cdbl lhs = theta_eval({n0, m}, rotated);
                    cdbl sum = 0.0;
                    for (long long cp = 0; cp < std::llabs(te); ++cp) {
                        spec::NabTriple np = n0;
                        np.c = cp;
                        sum += std::exp(i * kPi * double(c) * double(cp) / ell) *
                               theta_eval({np, m}, pt);
                    }
                    cdbl rhs = std::pow(-i * (ell > 0 ? 1.0 : -1.0), double(m)) /
                               std::sqrt(2.0 * std::abs(ell)) * sum;
                    CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
                }
            }
        }
    }
}

TEST_CASE("normalizer action rows match direct left translation") {
    const cdbl i(0, 1);
    spec::NabTriple n0{1, 2, 1, 7}; // ell = 1, c = 1
    double ell = n0.ell();
    // pick (h, r, m) consistent with the metaplectic parameter
    int h = 4, r = 0;
    int m = (n0.eps() * (n0.d - h + 3 * r) - 3) / 6;
    REQUIRE(m >= 0);
    NabVector v{n0, m, h, r, 1.0};

    // center translation: multiply by e^{2 pi i rho ell}
    double rho = 0.77;
    auto res = normalizer_action(NormalizerElt::NCenter, v, rho);
    REQUIRE(res.parts.size() == 1);
    CHECK(std::abs(res.parts[0].coef - std::polar(1.0, 2 * kPi * rho * ell)) < 1e-12);
    for (int trial = 0; trial < 3; ++trial) {
        NCoord pt = random_n();
        cdbl direct = theta_eval({n0, m}, n_mul({0, 0, rho}, pt));
        CHECK(std::abs(direct - res.parts[0].coef * theta_eval({n0, m}, pt)) < 1e-10);
    }

    // x-translation by 1/sigma: multiply by e^{2 pi i c/sigma}
    auto resx = normalizer_action(NormalizerElt::NX, v);
    for (int trial = 0; trial < 3; ++trial) {
        NCoord pt = random_n();
        cdbl direct = theta_eval({n0, m}, n_mul({1.0 / n0.sigma, 0, 0}, pt));
        CHECK(std::abs(direct - resx.parts[0].coef * theta_eval({n0, m}, pt)) < 1e-10);
    }

    // y-translation by 1/sigma: shifts c by 2 ell / sigma
    auto resy = normalizer_action(NormalizerElt::NY, v);
    for (int trial = 0; trial < 3; ++trial) {
        NCoord pt = random_n();
        cdbl direct = theta_eval({n0, m}, n_mul({0, 1.0 / n0.sigma, 0}, pt));
        CHECK(std::abs(direct - resy.parts[0].coef * theta_eval({resy.parts[0].n, m}, pt)) <
              1e-10);
    }

    // quarter turn: matches the finite Fourier transform of the classes,
    // including the K-side phase.  Test the N-side only: the left
    // translation by m(i) sends n(b,r) to n(i^3 b, r) inside the N-part.
    auto resq = normalizer_action(NormalizerElt::MQuarter, v);
    REQUIRE(resq.parts.size() == std::size_t(std::llabs(n0.two_ell)));
    for (int trial = 0; trial < 3; ++trial) {
        NCoord pt = random_n();
        // m(i) n(x,y,r) = n(i^3 (x+iy), r) m(i): b -> -i b, i.e. (x,y) -> (y,-x)
        NCoord moved{pt.y, -pt.x, pt.r};
        cdbl direct = theta_eval({n0, m}, moved);
        cdbl viaTable = 0.0;
        for (const auto& part : resq.parts)
            viaTable += part.coef * theta_eval({part.n, m}, pt);
        // the table also carries the K-side phase e^{pi i (h-3r)/4}
        viaTable /= std::exp(i * kPi * double(h - 3 * r) / 4.0);
        CHECK(std::abs(direct - viaTable) < 1e-8 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("squared norms of the K-polynomials follow the factorial ratio") {
    // |Phi^h_{p,r,q}|^2 = p!/(((p+r)/2)! ((p-r)/2)!) |Phi^h_{p,p,q}|^2
    std::vector<std::array<int, 4>> cases = {{3, 1, -1, 1}, {0, 2, 0, 0}, {5, 3, 1, -1},
                                             {2, 2, -2, 2}, {1, 3, -1, 3}};
    for (auto [h, p, r, q] : cases) {
        double lhs = kpoly_norm2({h, p, r, q});
        double rhs = kpoly_norm2({h, p, p, q});
        double fac = sf::factorial(p) /
                     (sf::factorial((p + r) / 2) * sf::factorial((p - r) / 2));
        CHECK(lhs == Catch::Approx(fac * rhs).epsilon(1e-8));
    }
}
