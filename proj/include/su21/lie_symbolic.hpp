#pragma once

// Exact arithmetic in the real Lie algebra su(2,1) and its universal
// enveloping algebra: the eight-element basis, matrix brackets expanded
// back into the basis, PBW normal forms, the center generators, and the
// shift-operator elements acting between highest weight spaces.

#include "su21/rational.hpp"

#include <array>
#include <map>
#include <vector>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace su21::lie {

// Basis of su(2,1); the declaration order is the total order used for
// PBW monomials (n-part, a-part, k-part).
enum class Tag : std::uint8_t { X0, X1, X2, Hr, W1, W2, W0, CKi };
inline constexpr int kBasisSize = 8;
inline constexpr std::array<Tag, 8> kBasis = {
    Tag::X0, Tag::X1, Tag::X2, Tag::Hr, Tag::W1, Tag::W2, Tag::W0, Tag::CKi};

inline const char* tag_name(Tag t) {
    static const char* names[] = {"X0", "X1", "X2", "Hr", "W1", "W2", "W0", "CKi"};
    return names[int(t)];
}

using Scalar = GaussianRational;

// 3x3 matrix with Gaussian-rational entries, row major.
struct Mat3q {
    std::array<Scalar, 9> a{};

    Scalar& operator()(int r, int c) { return a[3 * r + c]; }
    const Scalar& operator()(int r, int c) const { return a[3 * r + c]; }

    friend Mat3q operator+(const Mat3q& x, const Mat3q& y) {
        Mat3q z;
        for (int k = 0; k < 9; ++k) z.a[k] = x.a[k] + y.a[k];
        return z;
    }
    friend Mat3q operator-(const Mat3q& x, const Mat3q& y) {
        Mat3q z;
        for (int k = 0; k < 9; ++k) z.a[k] = x.a[k] - y.a[k];
        return z;
    }
    friend Mat3q operator*(const Scalar& c, const Mat3q& x) {
        Mat3q z;
        for (int k = 0; k < 9; ++k) z.a[k] = c * x.a[k];
        return z;
    }
    friend Mat3q operator*(const Mat3q& x, const Mat3q& y) {
        Mat3q z;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                Scalar s;
                for (int k = 0; k < 3; ++k) s += x(r, k) * y(k, c);
                z(r, c) = s;
            }
        return z;
    }
    friend bool operator==(const Mat3q& x, const Mat3q& y) { return x.a == y.a; }

    bool is_zero() const {
        for (const auto& e : a)
            if (!e.is_zero()) return false;
        return true;
    }
    Mat3q conj_transpose() const {
        Mat3q z;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) z(r, c) = (*this)(c, r).conj();
        return z;
    }
    Scalar trace() const { return a[0] + a[4] + a[8]; }
};

inline Mat3q commutator(const Mat3q& x, const Mat3q& y) { return x * y - y * x; }

namespace detail {
inline Scalar gi() { return Scalar::i(); }

inline Mat3q make(std::initializer_list<Scalar> vals) {
    Mat3q m;
    int k = 0;
    for (const auto& v : vals) m.a[k++] = v;
    return m;
}
} // namespace detail

// The defining matrices.  X0, X1, X2 span the Lie algebra of the unipotent
// group N, Hr spans the Lie algebra of A, and CKi, W0, W1, W2 span the Lie
// algebra of the maximal compact K.
inline const Mat3q& basis_matrix(Tag t) {
    using detail::make;
    const Scalar i = detail::gi();
    const Scalar h(Rational(1, 2));
    static const std::array<Mat3q, 8> mats = {
        // X0
        make({h * i, 0, -(h * i), 0, 0, 0, h * i, 0, -(h * i)}),
        // X1
        make({0, 1, 0, -1, 0, 1, 0, 1, 0}),
        // X2
        make({0, i, 0, i, 0, -i, 0, i, 0}),
        // Hr
        make({0, 0, 1, 0, 0, 0, 1, 0, 0}),
        // W1
        make({0, 1, 0, -1, 0, 0, 0, 0, 0}),
        // W2
        make({0, i, 0, i, 0, 0, 0, 0, 0}),
        // W0
        make({i, 0, 0, 0, -i, 0, 0, 0, 0}),
        // CKi
        make({i, 0, 0, 0, i, 0, 0, 0, -(Scalar(2) * i)}),
    };
    return mats[int(t)];
}

// A complex-linear combination of the eight basis elements.
struct LieCombination {
    std::map<Tag, Scalar> coef;

    LieCombination() = default;
    LieCombination(Tag t) { coef[t] = Scalar(1); }

    LieCombination& add(Tag t, const Scalar& c) {
        auto it = coef.find(t);
        if (it == coef.end()) {
            if (!c.is_zero()) coef[t] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) coef.erase(it);
        }
        return *this;
    }
    bool is_zero() const { return coef.empty(); }

    friend LieCombination operator+(LieCombination a, const LieCombination& b) {
        for (const auto& [t, c] : b.coef) a.add(t, c);
        return a;
    }
    friend LieCombination operator-(LieCombination a, const LieCombination& b) {
        for (const auto& [t, c] : b.coef) a.add(t, -c);
        return a;
    }
    friend LieCombination operator*(const Scalar& s, const LieCombination& a) {
        LieCombination r;
        if (s.is_zero()) return r;
        for (const auto& [t, c] : a.coef) r.coef[t] = s * c;
        return r;
    }
    friend bool operator==(const LieCombination& a, const LieCombination& b) {
        return a.coef == b.coef;
    }

    Mat3q to_matrix() const {
        Mat3q m;
        for (const auto& [t, c] : coef) m = m + c * basis_matrix(t);
        return m;
    }
};

// Exact expansion of a matrix in the basis; the eight matrices are a
// C-basis of sl(3,C), so the expansion exists and is unique whenever the
// matrix lies in that span.  Solved by Gaussian elimination over Q(i).
inline LieCombination expand_in_basis(const Mat3q& m) {
    // Augmented 9 x 9 system: columns are flattened basis matrices.
    std::array<std::array<Scalar, 9>, 9> A{};
    for (int b = 0; b < 8; ++b)
        for (int k = 0; k < 9; ++k) A[k][b] = basis_matrix(Tag(b)).a[k];
    for (int k = 0; k < 9; ++k) A[k][8] = m.a[k];

    int row = 0;
    std::array<int, 8> pivot_row{};
    for (int col = 0; col < 8; ++col) {
        int pr = -1;
        for (int r = row; r < 9; ++r)
            if (!A[r][col].is_zero()) { pr = r; break; }
        if (pr < 0) throw std::logic_error("expand_in_basis: singular basis system");
        std::swap(A[pr], A[row]);
        Scalar inv = Scalar(1) / A[row][col];
        for (int c = col; c < 9; ++c) A[row][c] = inv * A[row][c];
        for (int r = 0; r < 9; ++r) {
            if (r == row || A[r][col].is_zero()) continue;
            Scalar f = A[r][col];
            for (int c = col; c < 9; ++c) A[r][c] -= f * A[row][c];
        }
        pivot_row[col] = row;
        ++row;
    }
    // The ninth row must have reduced to zero, otherwise the matrix is not
    // in the complexified span: that signals corrupted basis data.
    for (int r = row; r < 9; ++r)
        if (!A[r][8].is_zero())
            throw std::domain_error("expand_in_basis: matrix not in span of basis");

    LieCombination out;
    for (int b = 0; b < 8; ++b) out.add(Tag(b), A[pivot_row[b]][8]);
    return out;
}

// Bracket via the matrix commutator, re-expanded exactly.
inline LieCombination bracket(const LieCombination& x, const LieCombination& y) {
    return expand_in_basis(commutator(x.to_matrix(), y.to_matrix()));
}

// ---------------------------------------------------------------------------
// Universal enveloping algebra with PBW normal form.

using Word = std::vector<std::uint8_t>; // basis tags, nondecreasing when normal

struct EnvElement {
    std::map<Word, Scalar> terms; // monomial -> coefficient; zero = empty map

    bool is_zero() const { return terms.empty(); }

    void add_term(const Word& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms[w] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    int degree() const {
        std::size_t d = 0;
        for (const auto& [w, c] : terms) d = std::max(d, w.size());
        return int(d);
    }

    EnvElement operator-() const {
        EnvElement r;
        for (const auto& [w, c] : terms) r.terms[w] = -c;
        return r;
    }

    friend EnvElement operator+(EnvElement a, const EnvElement& b) {
        for (const auto& [w, c] : b.terms) a.add_term(w, c);
        return a;
    }
    friend EnvElement operator-(EnvElement a, const EnvElement& b) {
        for (const auto& [w, c] : b.terms) a.add_term(w, -c);
        return a;
    }
    friend EnvElement operator*(const Scalar& s, const EnvElement& a) {
        EnvElement r;
        if (s.is_zero()) return r;
        for (const auto& [w, c] : a.terms) r.terms[w] = s * c;
        return r;
    }
    friend bool operator==(const EnvElement& a, const EnvElement& b) {
        return a.terms == b.terms;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        for (const auto& [w, c] : terms) {
            if (!s.empty()) s += " + ";
            s += c.str();
            for (auto t : w) {
                s += '*';
                s += tag_name(Tag(t));
            }
        }
        return s;
    }
};

namespace detail {

// Structure constants [a,b] for a < b in the basis order, built once from
// the matrix commutators.
inline const LieCombination& structure_bracket(int a, int b) {
    static const auto table = [] {
        std::array<std::array<LieCombination, 8>, 8> t;
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j)
                t[i][j] = bracket(LieCombination(Tag(i)), LieCombination(Tag(j)));
        return t;
    }();
    return table[a][b];
}

} // namespace detail

// PBW normal form of a single word with coefficient.  Standard rewriting:
// an adjacent descent x y with x > y is replaced by y x + [x,y].
inline EnvElement pbw_normalize_word(Word w, Scalar c) {
    EnvElement out;
    std::vector<std::pair<Word, Scalar>> stack;
    stack.emplace_back(std::move(w), std::move(c));
    while (!stack.empty()) {
        auto [word, coef] = std::move(stack.back());
        stack.pop_back();
        std::size_t k = 0;
        bool sorted = true;
        for (; k + 1 < word.size(); ++k)
            if (word[k] > word[k + 1]) { sorted = false; break; }
        if (sorted) {
            out.add_term(word, coef);
            continue;
        }
        Word swapped = word;
        std::swap(swapped[k], swapped[k + 1]);
        stack.emplace_back(std::move(swapped), coef);
        const auto& br = detail::structure_bracket(word[k + 1], word[k]);
        for (const auto& [t, bc] : br.coef) {
            Word contracted;
            contracted.reserve(word.size() - 1);
            contracted.insert(contracted.end(), word.begin(), word.begin() + k);
            contracted.push_back(std::uint8_t(t));
            contracted.insert(contracted.end(), word.begin() + k + 2, word.end());
            stack.emplace_back(std::move(contracted), -(coef * bc));
        }
    }
    return out;
}

inline EnvElement pbw_normalize(const EnvElement& e) {
    EnvElement out;
    for (const auto& [w, c] : e.terms) out = out + pbw_normalize_word(w, c);
    return out;
}

inline EnvElement operator*(const EnvElement& a, const EnvElement& b) {
    EnvElement out;
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out = out + pbw_normalize_word(std::move(w), ca * cb);
        }
    return out;
}

inline EnvElement env_one() {
    EnvElement e;
    e.terms[Word{}] = Scalar(1);
    return e;
}

inline EnvElement env(Tag t) {
    EnvElement e;
    e.terms[Word{std::uint8_t(t)}] = Scalar(1);
    return e;
}

inline EnvElement env(const LieCombination& x) {
    EnvElement e;
    for (const auto& [t, c] : x.coef) e.add_term(Word{std::uint8_t(t)}, c);
    return e;
}

inline EnvElement env_commutator(const EnvElement& a, const EnvElement& b) {
    return a * b - b * a;
}

// ---------------------------------------------------------------------------
// Root vectors for the compact Cartan subalgebra spanned by CKi and W0.

enum class Root { Z12, Z21, Z13, Z31, Z23, Z32 };

inline const LieCombination& root_vector(Root z) {
    static const auto table = [] {
        const Scalar i = Scalar::i();
        const Scalar h(Rational(1, 2));
        const Scalar q(Rational(1, 4));
        std::array<LieCombination, 6> t;
        // Z12 = W1 - i W2, Z21 = W1 + i W2
        t[0].add(Tag::W1, 1).add(Tag::W2, -i);
        t[1].add(Tag::W1, 1).add(Tag::W2, i);
        // Z13 = Hr/2 + i X0 - (i/4) W0 - (i/4) CKi, and Z31 its conjugate
        t[2].add(Tag::Hr, h).add(Tag::X0, i).add(Tag::W0, -(q * i)).add(Tag::CKi, -(q * i));
        t[3].add(Tag::Hr, h).add(Tag::X0, -i).add(Tag::W0, q * i).add(Tag::CKi, q * i);
        // Z23 = (-W1 - i W2 + X1 + i X2)/2, Z32 its conjugate
        t[4].add(Tag::W1, -h).add(Tag::W2, -(h * i)).add(Tag::X1, h).add(Tag::X2, h * i);
        t[5].add(Tag::W1, -h).add(Tag::W2, h * i).add(Tag::X1, h).add(Tag::X2, -(h * i));
        return t;
    }();
    return table[int(z)];
}

inline EnvElement envZ(Root z) { return env(root_vector(z)); }

// Eigenvalues of ad(CKi) and ad(W0) on the root vectors, as multiples of i.
inline int root_cki_eigen(Root z) {
    switch (z) {
        case Root::Z12: return 0;
        case Root::Z21: return 0;
        case Root::Z13: return 3;
        case Root::Z23: return 3;
        case Root::Z31: return -3;
        case Root::Z32: return -3;
    }
    return 0;
}
inline int root_w0_eigen(Root z) {
    switch (z) {
        case Root::Z12: return 2;
        case Root::Z21: return -2;
        case Root::Z13: return 1;
        case Root::Z23: return -1;
        case Root::Z31: return -1;
        case Root::Z32: return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Center of the enveloping algebra and related elements.

// Hi spans the Lie algebra of M; Hi = (3/2) W0 - (1/2) CKi.
inline LieCombination lie_Hi() {
    LieCombination x;
    x.add(Tag::W0, Scalar(Rational(3, 2))).add(Tag::CKi, Scalar(Rational(-1, 2)));
    return x;
}

struct CenterGenerators {
    EnvElement casimir;        // degree 2
    EnvElement casimir_alt;    // the same element written on the k-side
    EnvElement delta3;         // degree 3
    EnvElement casimir_k;      // Casimir of the compact subalgebra
    EnvElement casimir_k_alt;  // W0^2 - 2i W0 + Z12 Z21
};

inline CenterGenerators central_generators() {
    const Scalar i = Scalar::i();
    auto E = [](Tag t) { return env(t); };
    EnvElement Hi = env(lie_Hi());
    EnvElement Z12 = envZ(Root::Z12), Z21 = envZ(Root::Z21), Z13 = envZ(Root::Z13),
               Z31 = envZ(Root::Z31), Z23 = envZ(Root::Z23), Z32 = envZ(Root::Z32);

    CenterGenerators g;
    g.casimir = E(Tag::Hr) * E(Tag::Hr) - Scalar(4) * E(Tag::Hr) -
                Scalar(Rational(1, 3)) * (Hi * Hi) + Scalar(4) * (E(Tag::X0) * Hi) -
                Scalar(8) * (E(Tag::X0) * E(Tag::W0)) + Scalar(4) * (E(Tag::X0) * E(Tag::X0)) -
                Scalar(2) * (E(Tag::X1) * E(Tag::W1)) + E(Tag::X1) * E(Tag::X1) -
                Scalar(2) * (E(Tag::X2) * E(Tag::W2)) + E(Tag::X2) * E(Tag::X2);

    g.casimir_alt = -(Scalar(Rational(1, 3)) * (E(Tag::CKi) * E(Tag::CKi))) +
                    Scalar(2) * i * E(Tag::CKi) - E(Tag::W0) * E(Tag::W0) +
                    Scalar(2) * i * E(Tag::W0) - Z12 * Z21 + Scalar(4) * (Z13 * Z31) +
                    Scalar(4) * (Z23 * Z32);

    g.delta3 = -(Scalar(Rational(1, 9)) * i) * (E(Tag::CKi) * E(Tag::CKi) * E(Tag::CKi)) +
               i * (E(Tag::CKi) * E(Tag::W0) * E(Tag::W0)) + i * (Z12 * E(Tag::CKi) * Z21) +
               Scalar(2) * i * (Z13 * E(Tag::CKi) * Z31) -
               Scalar(6) * i * (Z13 * E(Tag::W0) * Z31) - Scalar(6) * (Z13 * Z21 * Z32) +
               Scalar(2) * i * (Z23 * E(Tag::CKi) * Z32) +
               Scalar(6) * i * (Z23 * E(Tag::W0) * Z32) + Scalar(6) * (Z23 * Z12 * Z31) -
               Scalar(2) * (E(Tag::CKi) * E(Tag::CKi)) + Scalar(2) * (E(Tag::CKi) * E(Tag::W0)) +
               Scalar(24) * (Z13 * Z31) + Scalar(24) * (Z23 * Z32) + Scalar(8) * i * E(Tag::CKi);

    g.casimir_k = E(Tag::W0) * E(Tag::W0) + E(Tag::W1) * E(Tag::W1) + E(Tag::W2) * E(Tag::W2);
    g.casimir_k_alt = E(Tag::W0) * E(Tag::W0) - Scalar(2) * i * E(Tag::W0) + Z12 * Z21;
    return g;
}

inline bool is_central(const EnvElement& u) {
    for (Tag t : kBasis) {
        if (!pbw_normalize(env_commutator(env(t), u)).is_zero()) return false;
    }
    return true;
}

// Commutes with the Lie algebra of K (but not necessarily all of g).
inline bool commutes_with_k(const EnvElement& u) {
    for (Tag t : {Tag::W0, Tag::W1, Tag::W2, Tag::CKi})
        if (!pbw_normalize(env_commutator(env(t), u)).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Shift operators as elements of U(g).  A shift direction (dh, dp) with
// dh = +-3, dp = +-1 moves a highest weight vector of K-type (h,p) to one of
// K-type (h+dh, p+dp).  The downward operators depend on p.

struct ShiftDirection {
    int dh; // +3 or -3
    int dp; // +1 or -1
};

inline EnvElement shift_operator_element(ShiftDirection dir, int p) {
    const Scalar inv2p1 = Scalar(1) / Scalar(2 * (p + 1));
    if (dir.dp == 1) {
        if (p < 0) throw std::invalid_argument("shift_operator_element: p < 0");
        return dir.dh > 0 ? envZ(Root::Z31) : envZ(Root::Z23);
    }
    if (p < 0) throw std::invalid_argument("shift_operator_element: p < 0 for downward shift");
    if (dir.dh > 0) return envZ(Root::Z32) + inv2p1 * (envZ(Root::Z12) * envZ(Root::Z31));
    return envZ(Root::Z13) - inv2p1 * (envZ(Root::Z12) * envZ(Root::Z23));
}

// The second printed form of the downward operators; equal to the first
// after PBW normalization.
inline EnvElement shift_operator_element_alt(ShiftDirection dir, int p) {
    if (dir.dp == 1) return shift_operator_element(dir, p);
    const Scalar pf = Scalar(p) / Scalar(p + 1);
    const Scalar inv2p1 = Scalar(1) / Scalar(2 * (p + 1));
    if (dir.dh > 0) return pf * envZ(Root::Z32) + inv2p1 * (envZ(Root::Z31) * envZ(Root::Z12));
    return pf * envZ(Root::Z13) - inv2p1 * (envZ(Root::Z23) * envZ(Root::Z12));
}

} // namespace su21::lie
