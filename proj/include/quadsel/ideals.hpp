#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "quadsel/field.hpp"
#include "quadsel/units.hpp"

namespace quadsel {

/// The integral ideal c * (aZ + (b + omega)Z) in canonical form: c > 0, a > 0, 0 <= b < a.
/// Over the rational field only c is meaningful (a = 1, b = 0).
struct Ideal {
    Integer c = 1;
    Integer a = 1;
    Integer b = 0;

    bool operator==(const Ideal& o) const { return c == o.c && a == o.a && b == o.b; }
    bool operator!=(const Ideal& o) const { return !(*this == o); }
    bool operator<(const Ideal& o) const { return std::tie(c, a, b) < std::tie(o.c, o.a, o.b); }

    bool is_unit_ideal() const { return c == 1 && a == 1; }
    bool is_primitive() const { return c == 1; }

    std::string to_string() const { return "(" + c.get_str() + "; " + a.get_str() + ", " + b.get_str() + ")"; }
};

inline Integer ideal_norm(const QuadField& F, const Ideal& I) {
    if (F.is_rational()) return I.c;
    return I.c * I.c * I.a;
}

/// Z-basis {c a, c (b + omega)}.
inline std::pair<Element, Element> z_basis(const QuadField& F, const Ideal& I) {
    if (F.is_rational()) return {Element(I.c), Element(0)};
    return {Element(I.c * I.a), Element(I.c * I.b, I.c)};
}

/// Canonical form of the Z-module spanned by `gens`; throws if the module is not an ideal of full rank.
inline Ideal ideal_from_module(const QuadField& F, const std::vector<Element>& gens) {
    if (F.is_rational()) {
        Integer g = 0;
        for (const auto& e : gens) g = gcd(g, e.x);
        if (g == 0) throw DomainError("ideal: zero ideal");
        return Ideal{g, 1, 0};
    }
    // Lower-triangular basis {(A, 0), (Bx, C)} built incrementally.
    Integer A = 0;
    Element v(0, 0);
    for (const auto& w : gens) {
        if (w.y == 0) {
            A = gcd(A, w.x);
        } else if (v.y == 0) {
            v = w;
        } else {
            auto [g, s, t] = xgcd(v.y, w.y);
            const Integer wy = exact_div(w.y, g), vy = exact_div(v.y, g);
            const Element z = v * wy - w * vy;  // y-coordinate vanishes
            v = v * s + w * t;
            A = gcd(A, z.x);
        }
    }
    if (v.y == 0 || A == 0) throw DomainError("ideal: module is not of full rank");
    if (v.y < 0) v = -v;
    const Integer C = v.y;
    const Integer B = mod(v.x, A);
    if (A % C != 0 || B % C != 0) throw DomainError("ideal: module is not an O_F-ideal");
    Ideal I{C, A / C, B / C};
    if (F.norm(Element(I.b, 1)) % I.a != 0) throw DomainError("ideal: module is not an O_F-ideal");
    return I;
}

/// The O_F-ideal generated by `gens`.
inline Ideal ideal_from_generators(const QuadField& F, const std::vector<Element>& gens) {
    std::vector<Element> module;
    for (const auto& g : gens) {
        module.push_back(g);
        if (!F.is_rational()) module.push_back(F.mul(g, F.omega()));
    }
    return ideal_from_module(F, module);
}

inline Ideal principal_ideal(const QuadField& F, const Element& g) {
    if (g.is_zero()) throw DomainError("principal_ideal: zero element");
    return ideal_from_generators(F, {g});
}

inline Ideal rational_ideal(const Integer& n) { return Ideal{abs(n), 1, 0}; }

inline Ideal ideal_mul(const QuadField& F, const Ideal& I, const Ideal& J) {
    auto [i1, i2] = z_basis(F, I);
    auto [j1, j2] = z_basis(F, J);
    return ideal_from_module(F, {F.mul(i1, j1), F.mul(i1, j2), F.mul(i2, j1), F.mul(i2, j2)});
}

inline Ideal ideal_pow(const QuadField& F, Ideal I, unsigned e) {
    Ideal r;
    while (e) {
        if (e & 1) r = ideal_mul(F, r, I);
        I = ideal_mul(F, I, I);
        e >>= 1;
    }
    return r;
}

inline Ideal ideal_conj(const QuadField& F, const Ideal& I) {
    auto [i1, i2] = z_basis(F, I);
    return ideal_from_module(F, {F.conj(i1), F.conj(i2)});
}

inline Ideal ideal_sum(const QuadField& F, const Ideal& I, const Ideal& J) {
    auto [i1, i2] = z_basis(F, I);
    auto [j1, j2] = z_basis(F, J);
    return ideal_from_module(F, {i1, i2, j1, j2});
}

inline bool ideal_contains(const QuadField& F, const Ideal& I, const Element& e) {
    if (F.is_rational()) return e.x % I.c == 0;
    if (e.x % I.c != 0 || e.y % I.c != 0) return false;
    // e/c = u a + v (b + omega)  =>  v = y/c, u = (x/c - v b)/a
    const Integer v = e.y / I.c;
    return (e.x / I.c - v * I.b) % I.a == 0;
}

// ---- prime ideals --------------------------------------------------------

enum class SplitType { split, inert, ramified };

inline const char* to_string(SplitType t) {
    switch (t) {
        case SplitType::split: return "split";
        case SplitType::inert: return "inert";
        case SplitType::ramified: return "ramified";
    }
    return "?";
}

struct PrimeSplitting {
    SplitType type;
    std::uint64_t p;
    std::vector<Ideal> primes;  // ordered by b
};

/// Decomposition of the rational prime p in O_F.
inline PrimeSplitting split_prime(const QuadField& F, std::uint64_t p) {
    if (!is_prime(p)) throw DomainError("split_prime: " + std::to_string(p) + " is not prime");
    const Integer P(static_cast<unsigned long>(p));
    if (F.is_rational()) return {SplitType::inert, p, {rational_ideal(P)}};

    // b is a root of N(b + omega) = b^2 + t b + nw modulo p
    std::vector<std::uint64_t> roots;
    if (p == 2) {
        for (std::uint64_t b = 0; b < 2; ++b)
            if (mod_u64(F.norm(Element(Integer(static_cast<unsigned long>(b)), 1)), 2) == 0) roots.push_back(b);
    } else {
        const std::uint64_t dm = mod_u64(Integer(static_cast<long>(F.d())), p);
        if (auto s = sqrt_mod_prime(dm, p)) {
            for (std::uint64_t root : {*s, (p - *s) % p}) {
                // t = 0: b = -root;  t = 1: b = (-1 - root)/2
                std::uint64_t b = (p - root) % p;
                if (F.omega_is_half()) b = mulmod((p - 1 + p - root) % p, (p + 1) / 2, p);
                roots.push_back(b);
            }
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    }
    const int k = kronecker_prime(F.disc(), p);
    PrimeSplitting out{k == 1 ? SplitType::split : (k == 0 ? SplitType::ramified : SplitType::inert), p, {}};
    const std::size_t expected = out.type == SplitType::split ? 2 : (out.type == SplitType::ramified ? 1 : 0);
    if (roots.size() != expected) throw TheoremViolation("split_prime: root count disagrees with Kronecker symbol");
    if (out.type == SplitType::inert) {
        out.primes.push_back(Ideal{P, 1, 0});
    } else {
        for (auto b : roots) out.primes.push_back(Ideal{1, P, Integer(static_cast<unsigned long>(b))});
    }
    return out;
}

using Factorization = std::vector<std::pair<Ideal, int>>;

/// Prime ideal factorization, ordered by (norm, b).
inline Factorization factorize(const QuadField& F, const Ideal& I) {
    if (I.c == 0 || I.a == 0) throw DomainError("factorize: zero ideal");
    Factorization out;
    if (F.is_rational()) {
        for (auto [p, e] : factor(I.c)) out.emplace_back(rational_ideal(Integer(static_cast<unsigned long>(p))), e);
        return out;
    }
    for (auto [p, e] : factor(ideal_norm(F, I))) {
        (void)e;
        const Integer P(static_cast<unsigned long>(p));
        int ec = 0, ea = 0;
        for (Integer c = I.c; c % P == 0; c /= P) ++ec;
        for (Integer a = I.a; a % P == 0; a /= P) ++ea;
        const PrimeSplitting sp = split_prime(F, p);
        switch (sp.type) {
            case SplitType::inert:
                if (ea) throw TheoremViolation("factorize: inert prime divides a primitive ideal");
                out.emplace_back(sp.primes[0], ec);
                break;
            case SplitType::ramified:
                if (ea > 1) throw TheoremViolation("factorize: primitive ideal divisible by a ramified prime squared");
                out.emplace_back(sp.primes[0], 2 * ec + ea);
                break;
            case SplitType::split: {
                const Integer bm = mod(I.b, P);
                int hits = 0;
                for (const auto& q : sp.primes) {
                    int ex = ec;
                    if (ea && bm == q.b) {
                        ex += ea;
                        ++hits;
                    }
                    if (ex) out.emplace_back(q, ex);
                }
                if (ea && hits != 1) throw TheoremViolation("factorize: primitive part matches no prime above p");
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [&](const auto& l, const auto& r) {
        return std::make_pair(ideal_norm(F, l.first), l.first.b) < std::make_pair(ideal_norm(F, r.first), r.first.b);
    });
    return out;
}

inline Ideal from_factorization(const QuadField& F, const Factorization& fac) {
    Ideal r;
    for (const auto& [q, e] : fac) r = ideal_mul(F, r, ideal_pow(F, q, static_cast<unsigned>(e)));
    return r;
}

/// The ideal b with b^2 = I, if every prime exponent of I is even.
inline std::optional<Ideal> ideal_sqrt(const QuadField& F, const Ideal& I) {
    Factorization half;
    for (const auto& [q, e] : factorize(F, I)) {
        if (e % 2) return std::nullopt;
        half.emplace_back(q, e / 2);
    }
    return from_factorization(F, half);
}

// ---- reduction and principal generators ----------------------------------
//
// A primitive ideal aZ + theta Z with theta = (-B + sqrt(Disc))/2 is tracked as the
// pair (a, B). One reduction step passes to a' = |C|, C = (B^2 - Disc)/4a, with
// B' = -B normalized mod 2a'; then I = (theta/C) I'.

namespace detail {

struct ReductionState {
    Integer a;
    Integer B;
    bool operator==(const ReductionState& o) const { return a == o.a && B == o.B; }
};

inline ReductionState state_of(const QuadField& F, const Ideal& prim) {
    return {prim.a, F.omega_is_half() ? Integer(-(2 * prim.b + 1)) : Integer(-2 * prim.b)};
}

inline Element theta(const QuadField& F, const Integer& B) {
    return F.from_sqrt_d_coords(-B, F.omega_is_half() ? Integer(1) : Integer(2));
}

/// r == B (mod 2m) in (-m, m].
inline Integer centered(const Integer& B, const Integer& m) {
    Integer r = mod(B, 2 * m);
    if (r > m) r -= 2 * m;
    return r;
}

/// Real-field normalization: in (sqrt(Disc) - 2m, sqrt(Disc)) when m < sqrt(Disc), else centered.
inline Integer real_normalized(const Integer& B, const Integer& m, const Integer& root) {
    if (m <= root) return root - mod(root - B, 2 * m);
    return centered(B, m);
}

inline bool real_reduced(const Integer& a, const Integer& B, const Integer& root) {
    // |sqrt(Disc) - 2a| < B < sqrt(Disc)
    return B <= root && 2 * a - B <= root && 2 * a + B > root;
}

class Tracker {
public:
    explicit Tracker(const QuadField& F) : F_(F), gamma_{F.one(), 1} {}

    ReductionState step(const ReductionState& st, bool real, const Integer& root) {
        const Integer C = exact_div(st.B * st.B - F_.disc(), 4 * st.a);
        if (C == 0) throw TheoremViolation("reduction: degenerate form");
        gamma_.num = F_.mul(gamma_.num, theta(F_, st.B));
        gamma_.den *= C;
        gamma_.normalize();
        const Integer m = abs(C);
        return {m, real ? real_normalized(-st.B, m, root) : centered(-st.B, m)};
    }
    const Fraction& gamma() const { return gamma_; }

private:
    const QuadField& F_;
    Fraction gamma_;
};

constexpr int kReductionCap = 1 << 22;

}  // namespace detail

/// A generator of I when I is principal; reduces I and, for real fields, walks the reduced cycle.
inline std::optional<Element> principal_generator(const QuadField& F, const Ideal& I) {
    if (I.c == 0) throw DomainError("principal_generator: zero ideal");
    if (F.is_rational()) return Element(I.c);

    using namespace detail;
    Tracker tr(F);
    ReductionState st = state_of(F, Ideal{1, I.a, I.b});
    bool principal = false;
    if (F.is_imaginary()) {
        for (int guard = 0;; ++guard) {
            if (guard > kReductionCap) throw TheoremViolation("principal_generator: reduction did not terminate");
            st.B = centered(st.B, st.a);
            const Integer C = exact_div(st.B * st.B - F.disc(), 4 * st.a);
            if (st.a <= C) break;
            st = tr.step(st, false, 0);
        }
        principal = st.a == 1;
    } else {
        const Integer root = isqrt(F.disc());
        int guard = 0;
        while (!real_reduced(st.a, st.B, root)) {
            if (++guard > kReductionCap) throw TheoremViolation("principal_generator: reduction did not terminate");
            st = tr.step(st, true, root);
        }
        const ReductionState start = st;
        principal = st.a == 1;
        while (!principal) {
            if (++guard > kReductionCap) throw TheoremViolation("principal_generator: cycle did not close");
            st = tr.step(st, true, root);
            if (st.a == 1) principal = true;
            else if (st == start) break;
        }
    }
    if (!principal) return std::nullopt;
    Fraction g = tr.gamma();
    g.normalize();
    if (!g.is_integral()) throw TheoremViolation("principal_generator: generator is not integral");
    Element gen = g.num * I.c;
    if (principal_ideal(F, gen) != I) throw TheoremViolation("principal_generator: generator does not generate " + I.to_string());
    return gen;
}

/// The unit obtained by walking the principal reduced cycle once; equals +-eps^{+-1}.
inline Element cycle_unit(const QuadField& F) {
    if (F.is_rational() || F.d() < 0) throw DomainError("cycle_unit: field must be real quadratic");
    using namespace detail;
    const Integer root = isqrt(F.disc());
    Tracker tr(F);
    // the reduced representative of O_F: B == Disc (mod 2), largest below sqrt(Disc)
    Integer B0 = root;
    if (mod(B0 - F.disc(), 2) != 0) B0 -= 1;
    ReductionState st{1, B0};
    for (int guard = 0;; ++guard) {
        if (guard > kReductionCap) throw TheoremViolation("cycle_unit: cycle did not close");
        st = tr.step(st, true, root);
        if (st.a == 1) break;
    }
    Fraction g = tr.gamma();
    g.normalize();
    if (!g.is_integral()) throw TheoremViolation("cycle_unit: relative generator not integral");
    return unit_greater_than_one(F, g.num);
}

/// Representatives of E/E^2 used for sign adjustments: {1, -1, eps, -eps} or the imaginary analogue.
inline std::vector<Element> unit_coset_reps(const QuadField& F, const std::optional<Element>& eps) {
    if (F.is_rational()) return {F.one(), Element(-1)};
    if (F.is_imaginary()) {
        if (F.d() == -1) return {F.one(), F.omega()};
        return {F.one(), Element(-1)};
    }
    const Element e = eps ? *eps : fundamental_unit(F);
    return {F.one(), Element(-1), e, -e};
}

/// A totally positive generator of I, if I is principal in the strict sense.
inline std::optional<Element> strict_generator(const QuadField& F, const Ideal& I,
                                               const std::optional<Element>& eps = std::nullopt) {
    auto g = principal_generator(F, I);
    if (!g) return std::nullopt;
    if (F.is_imaginary()) return g;
    if (F.is_rational()) return Element(abs(g->x));
    for (const auto& u : unit_coset_reps(F, eps)) {
        Element cand = F.mul(*g, u);
        if (F.is_totally_positive(cand)) return cand;
    }
    return std::nullopt;
}

}  // namespace quadsel
