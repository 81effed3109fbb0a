#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quadsel/arith.hpp"
#include "quadsel/bit_matrix.hpp"
#include "quadsel/errors.hpp"

namespace quadsel {

/// x + y*omega in the integral basis {1, omega} of the ring of integers.
struct Element {
    Integer x = 0;
    Integer y = 0;

    Element() = default;
    Element(Integer x_, Integer y_ = 0) : x(std::move(x_)), y(std::move(y_)) {}
    Element(long x_) : x(x_), y(0) {}

    bool is_zero() const { return x == 0 && y == 0; }
    bool operator==(const Element& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Element& o) const { return !(*this == o); }

    Element operator-() const { return {-x, -y}; }
    Element operator+(const Element& o) const { return {x + o.x, y + o.y}; }
    Element operator-(const Element& o) const { return {x - o.x, y - o.y}; }
    Element operator*(const Integer& k) const { return {x * k, y * k}; }

    /// Content gcd(x, y).
    Integer content() const { return gcd(x, y); }

    std::string to_string() const { return "[" + x.get_str() + ", " + y.get_str() + "]"; }
};

inline Element exact_div(const Element& a, const Integer& k) { return {exact_div(a.x, k), exact_div(a.y, k)}; }

/// Field element num/den with den > 0; used where generators are only known up to a denominator.
struct Fraction {
    Element num;
    Integer den = 1;

    void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        Integer g = gcd(num.content(), den);
        if (g > 1) {
            num = exact_div(num, g);
            den = exact_div(den, g);
        }
    }
    bool is_integral() const { return den == 1; }
};

class QuadField;

/// The unit group of O_F / 4 O_F together with its subgroup of squares.
struct Mod4Data {
    std::vector<int> unit_residues;  // residue indices 4*(x mod 4) + (y mod 4)
    std::vector<int> squares;
    std::vector<int> basis;          // generators of the square-class quotient
    int dim = 0;
    std::array<BitVector, 16> coords;  // empty for non-unit residues

    static Element residue_element(int idx) { return Element(idx / 4, idx % 4); }
    static int residue_index(const Element& a) {
        return static_cast<int>(mod_u64(a.x, 4) * 4 + mod_u64(a.y, 4));
    }
    bool is_square(int idx) const;
};

/// F = Q(sqrt d) for squarefree d != 0, 1, or the rational field.
class QuadField {
public:
    /// Throws DomainError for d in {0, 1} or d not squarefree.
    static QuadField make(std::int64_t d) {
        if (d == 0 || d == 1) throw DomainError("make_field: d must not be 0 or 1");
        if (!is_squarefree(d)) throw DomainError("make_field: d = " + std::to_string(d) + " is not squarefree");
        return QuadField(d, false);
    }
    static QuadField rationals() { return QuadField(1, true); }

    bool is_rational() const { return rational_; }
    bool is_real() const { return rational_ || d_ > 0; }
    bool is_imaginary() const { return !rational_ && d_ < 0; }
    std::int64_t d() const { return d_; }
    const Integer& disc() const { return disc_; }
    int r() const { return r_; }
    int s() const { return s_; }
    int n() const { return n_; }
    /// omega^2 = t*omega - nw
    const Integer& omega_trace() const { return t_; }
    const Integer& omega_norm() const { return nw_; }
    bool omega_is_half() const { return t_ == 1; }

    Element one() const { return Element(1); }
    Element omega() const { return Element(0, 1); }
    /// sqrt(d) as an element of O_F.
    Element sqrt_d() const { return omega_is_half() ? Element(-1, 2) : Element(0, 1); }

    Element mul(const Element& a, const Element& b) const {
        if (rational_) return Element(a.x * b.x);
        return {a.x * b.x - nw_ * a.y * b.y, a.x * b.y + a.y * b.x + t_ * a.y * b.y};
    }
    Element sqr(const Element& a) const { return mul(a, a); }
    Element pow(Element a, unsigned long e) const {
        Element r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Element conj(const Element& a) const {
        if (rational_) return a;
        return {a.x + t_ * a.y, -a.y};
    }
    Integer norm(const Element& a) const {
        if (rational_) return a.x;
        return a.x * a.x + t_ * a.x * a.y + nw_ * a.y * a.y;
    }
    Integer trace(const Element& a) const {
        if (rational_) return a.x;
        return 2 * a.x + t_ * a.y;
    }

    /// (X, Y) with 2a = X + Y sqrt(d).
    std::pair<Integer, Integer> sqrt_d_coords(const Element& a) const {
        if (omega_is_half()) return {2 * a.x + a.y, a.y};
        return {2 * a.x, 2 * a.y};
    }
    Element from_sqrt_d_coords(const Integer& X, const Integer& Y) const {
        // inverse of sqrt_d_coords; requires the coordinates to be integral
        if (omega_is_half()) return {exact_div(X - Y, 2), Y};
        return {exact_div(X, 2), exact_div(Y, 2)};
    }

    /// Sign of the real embedding i (0: sqrt d -> +sqrt d, 1: sqrt d -> -sqrt d). Exact.
    int embedding_sign(const Element& a, int i) const {
        if (rational_) return sgn(a.x);
        if (d_ < 0) throw DomainError("embedding_sign: imaginary field has no real embeddings");
        auto [X, Y] = sqrt_d_coords(a);
        if (i == 1) Y = -Y;
        return sign_of_surd(X, Y, Integer(static_cast<long>(d_)));
    }

    /// Bit i set iff the i-th real embedding of a is negative.
    BitVector signature(const Element& a) const {
        if (a.is_zero()) throw DomainError("signature: zero element");
        BitVector v(r_);
        for (int i = 0; i < r_; ++i) v[i] = embedding_sign(a, i) < 0;
        return v;
    }
    bool is_totally_positive(const Element& a) const {
        for (bool b : signature(a))
            if (b) return false;
        return true;
    }

    /// Square root in O_F when `a` is the square of an integral element.
    std::optional<Element> sqrt(const Element& a) const {
        if (a.is_zero()) return Element(0);
        if (rational_) {
            if (!is_perfect_square(a.x)) return std::nullopt;
            return Element(isqrt(a.x));
        }
        const Integer N = norm(a);
        if (!is_perfect_square(N)) return std::nullopt;
        const Integer m = isqrt(N);
        const Integer D(static_cast<long>(d_));
        auto [X, Y] = sqrt_d_coords(a);
        for (int sigma : {1, -1}) {
            const Integer U = X + 2 * sigma * m;
            const Integer W = X - 2 * sigma * m;
            if (!is_perfect_square(U) || W % D != 0) continue;
            const Integer V = W / D;
            if (!is_perfect_square(V)) continue;
            Integer u = isqrt(U), v = isqrt(V);
            if (Y < 0) v = -v;
            if (u * v != Y) continue;
            if (omega_is_half() ? ((u - v) % 2 != 0) : (u % 2 != 0 || v % 2 != 0)) continue;
            Element b = from_sqrt_d_coords(u, v);
            if (sqr(b) == a) return b;
        }
        return std::nullopt;
    }
    bool is_square(const Element& a) const { return sqrt(a).has_value(); }

    /// a and b represent the same class in F^x / F^x2 (both integral, nonzero).
    bool same_square_class(const Element& a, const Element& b) const { return is_square(mul(a, b)); }

    const Mod4Data& mod4() const { return mod4_; }

    Element reduce_mod4(const Element& a) const { return Mod4Data::residue_element(Mod4Data::residue_index(a)); }

    std::string name() const {
        if (rational_) return "Q";
        return "Q(sqrt(" + std::to_string(d_) + "))";
    }

private:
    QuadField(std::int64_t d, bool rational) : rational_(rational), d_(d) {
        if (rational_) {
            disc_ = 1;
            r_ = 1;
            s_ = 0;
            n_ = 1;
            t_ = 0;
            nw_ = 0;
        } else {
            const std::int64_t dm4 = mod(d, 4);
            disc_ = dm4 == 1 ? Integer(static_cast<long>(d)) : Integer(static_cast<long>(4 * d));
            r_ = d > 0 ? 2 : 0;
            s_ = d > 0 ? 0 : 1;
            n_ = 2;
            if (dm4 == 1) {
                t_ = 1;
                nw_ = Integer(static_cast<long>((1 - d) / 4));
            } else {
                t_ = 0;
                nw_ = Integer(static_cast<long>(-d));
            }
        }
        build_mod4();
    }

    static int sgn(const Integer& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

    /// Sign of X + Y sqrt(D), D > 0 not a square.
    static int sign_of_surd(const Integer& X, const Integer& Y, const Integer& D) {
        if (X >= 0 && Y >= 0) return (X == 0 && Y == 0) ? 0 : 1;
        if (X <= 0 && Y <= 0) return -1;
        const Integer diff = X * X - Y * Y * D;
        return X > 0 ? sgn(diff) : -sgn(diff);
    }

    void build_mod4();

    bool rational_ = false;
    std::int64_t d_ = 0;
    Integer disc_;
    int r_ = 0, s_ = 0, n_ = 0;
    Integer t_, nw_;
    Mod4Data mod4_;
};

inline bool Mod4Data::is_square(int idx) const {
    for (int s : squares)
        if (s == idx) return true;
    return false;
}

inline void QuadField::build_mod4() {
    // Residues of O_F/4 are indexed 4x + y; the rational field only uses y = 0.
    auto mul_idx = [this](int a, int b) {
        return Mod4Data::residue_index(mul(Mod4Data::residue_element(a), Mod4Data::residue_element(b)));
    };
    const int count = rational_ ? 4 : 16;
    auto idx_of = [this](int k) { return rational_ ? 4 * k : k; };

    Mod4Data m;
    for (int k = 0; k < count; ++k) {
        const int idx = idx_of(k);
        if (mpz_odd_p(norm(Mod4Data::residue_element(idx)).get_mpz_t())) m.unit_residues.push_back(idx);
    }
    std::vector<bool> is_sq(16, false);
    for (int u : m.unit_residues) is_sq[mul_idx(u, u)] = true;
    for (int i = 0; i < 16; ++i)
        if (is_sq[i]) m.squares.push_back(i);

    // Greedy basis of units/squares: grow the spanned subgroup until it covers all units.
    std::vector<int> span = m.squares;
    auto in_span = [&](int idx) { return std::find(span.begin(), span.end(), idx) != span.end(); };
    for (int u : m.unit_residues) {
        if (in_span(u)) continue;
        m.basis.push_back(u);
        std::vector<int> grown = span;
        for (int s : span) grown.push_back(mul_idx(s, u));
        std::sort(grown.begin(), grown.end());
        grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
        span = std::move(grown);
    }
    m.dim = static_cast<int>(m.basis.size());
    if (m.dim != n_ || (m.squares.size() << m.dim) != m.unit_residues.size())
        throw TheoremViolation("mod4_data: dim M4/M4^2 = " + std::to_string(m.dim) + " but n = " + std::to_string(n_) +
                               " for " + name());

    // Coordinates by enumerating all exponent vectors against the square set.
    for (unsigned mask = 0; mask < (1u << m.dim); ++mask) {
        int prod = Mod4Data::residue_index(Element(1));
        BitVector bits(m.dim);
        for (int j = 0; j < m.dim; ++j) {
            bits[j] = (mask >> j) & 1u;
            if (bits[j]) prod = mul_idx(prod, m.basis[j]);
        }
        for (int s : m.squares) m.coords[mul_idx(prod, s)] = bits;
    }
    mod4_ = std::move(m);
}

inline QuadField make_field(std::int64_t d) { return QuadField::make(d); }

inline const Mod4Data& mod4_data(const QuadField& F) { return F.mod4(); }

inline BitVector signature(const QuadField& F, const Element& a) { return F.signature(a); }

/// a is congruent to the square of an odd element modulo 4 O_F.
inline bool is_square_mod4(const QuadField& F, const Element& a) {
    if (mpz_even_p(F.norm(a).get_mpz_t())) throw DomainError("is_square_mod4: element has even norm");
    return F.mod4().is_square(Mod4Data::residue_index(a));
}

/// Coordinates of the class of a in M4/M4^2 with respect to the stored basis.
inline BitVector mod4_coords(const QuadField& F, const Element& a) {
    if (mpz_even_p(F.norm(a).get_mpz_t())) throw DomainError("mod4_coords: element has even norm");
    return F.mod4().coords[Mod4Data::residue_index(a)];
}

}  // namespace quadsel
