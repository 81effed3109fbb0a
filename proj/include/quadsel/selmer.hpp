#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadsel/bit_matrix.hpp"
#include "quadsel/classgroups.hpp"
#include "quadsel/prime_stream.hpp"

namespace quadsel {

/// Everything computed once per field: class groups, units, default search bound.
struct FieldData {
    QuadField F;
    ClassGroups groups;
    UnitData units;
    std::uint64_t prime_bound;

    explicit FieldData(const QuadField& f, std::uint64_t bound = 0)
        : F(f), groups(f), units(unit_structure(f)), prime_bound(bound ? bound : default_bound(f)) {}

    static std::uint64_t default_bound(const QuadField& f) {
        return 200 * static_cast<std::uint64_t>(to_i64(abs(f.disc())));
    }
    int rho() const { return groups.ordinary().two_rank; }
    int rho_plus() const { return groups.narrow().two_rank; }
};

// ---- coprime representatives ---------------------------------------------

/// The ideal a with (alpha) = a^2; DomainError when alpha is not singular.
inline Ideal singular_root(const QuadField& F, const Element& alpha) {
    if (alpha.is_zero()) throw DomainError("singular_root: zero element");
    auto a = ideal_sqrt(F, principal_ideal(F, alpha));
    if (!a) throw DomainError("singular_root: " + alpha.to_string() + " does not generate the square of an ideal");
    return *a;
}

/// beta in the square class of alpha with (beta) = b^2 and N(b) coprime to `avoid`.
///
/// If (alpha) = a^2 and a q = (delta) for a prime q prime to `avoid`, then
/// beta = alpha (N q / delta)^2 generates conj(q)^2.
inline Element coprime_representative(const FieldData& fd, const Element& alpha, const Integer& avoid,
                                      std::optional<std::uint64_t> bound = std::nullopt) {
    const QuadField& F = fd.F;
    const Ideal a = singular_root(F, alpha);
    if (gcd(ideal_norm(F, a), avoid) == 1) return alpha;
    const std::uint64_t B = bound ? *bound : fd.prime_bound;
    const int target = fd.groups.ordinary_class(a);

    auto adjust = [&](const Ideal& q) {
        const auto delta = principal_generator(F, ideal_mul(F, a, q));
        if (!delta) throw TheoremViolation("coprime_representative: a q is not principal for " + q.to_string());
        const Integer Nq = ideal_norm(F, q);
        if (F.is_rational()) return Element(exact_div(alpha.x * Nq * Nq, delta->x * delta->x));
        const Integer Nd = F.norm(*delta);
        return exact_div(F.mul(alpha, F.sqr(F.conj(*delta))) * (Nq * Nq), Nd * Nd);
    };

    if (target == fd.groups.ordinary().group.identity()) return adjust(Ideal{});
    PrimeIdealStream stream(F, B);
    PrimeIdealStream::Entry e;
    while (stream.next(e)) {
        if (gcd(Integer(static_cast<unsigned long>(e.p)), avoid) != 1) continue;
        if (fd.groups.ordinary_class(e.ideal) != target) continue;
        return adjust(e.ideal);
    }
    throw InconclusiveError("coprime_representative: no prime ideal in the required class", B);
}

inline Element odd_representative(const FieldData& fd, const Element& alpha) {
    return coprime_representative(fd, alpha, 2);
}

// ---- Selmer spaces -------------------------------------------------------

enum class SelmerKind { full, plus, four, four_plus };

inline const char* to_string(SelmerKind k) {
    switch (k) {
        case SelmerKind::full: return "Sel";
        case SelmerKind::plus: return "Sel+";
        case SelmerKind::four: return "Sel4";
        case SelmerKind::four_plus: return "Sel4+";
    }
    return "?";
}

struct SelmerSpace {
    QuadField field = QuadField::rationals();
    SelmerKind kind = SelmerKind::full;
    std::vector<Element> basis;
    std::vector<Element> odd_reps;  // same classes, odd norm
    int dim = 0;
    BitMatrix sign_matrix;  // r x dim
    BitMatrix mod4_matrix;  // n x dim
};

namespace detail {

inline SelmerSpace fill_selmer(const FieldData& fd, SelmerKind kind, std::vector<Element> basis) {
    SelmerSpace S{fd.F, kind, std::move(basis), {}, 0, {}, {}};
    S.dim = static_cast<int>(S.basis.size());
    for (const auto& b : S.basis) S.odd_reps.push_back(odd_representative(fd, b));
    S.sign_matrix = sign_columns(fd.F, S.basis);
    S.mod4_matrix = mod4_columns(fd.F, S.odd_reps);
    return S;
}

}  // namespace detail

/// True iff no nonempty subproduct of `gens` is a square in F.
inline bool square_classes_independent(const QuadField& F, const std::vector<Element>& gens) {
    const std::size_t k = gens.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        Element p = F.one();
        for (std::size_t i = 0; i < k; ++i)
            if ((mask >> i) & 1u) p = F.mul(p, gens[i]);
        if (F.is_square(p)) return false;
    }
    return true;
}

/// alpha lies in the span of `gens` modulo squares.
inline bool in_square_span(const QuadField& F, const Element& alpha, const std::vector<Element>& gens) {
    const std::size_t k = gens.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Element p = alpha;
        for (std::size_t i = 0; i < k; ++i)
            if ((mask >> i) & 1u) p = F.mul(p, gens[i]);
        if (F.is_square(p)) return true;
    }
    return false;
}

inline bool same_square_span(const QuadField& F, const std::vector<Element>& a, const std::vector<Element>& b) {
    for (const auto& x : a)
        if (!in_square_span(F, x, b)) return false;
    for (const auto& y : b)
        if (!in_square_span(F, y, a)) return false;
    return true;
}

/// Sel(F): units mod squares plus generators of a^2 for a basis of Cl(F)[2].
inline SelmerSpace selmer_space(const FieldData& fd) {
    std::vector<Element> basis = fd.units.basis_E_mod_E2;
    for (const auto& a : fd.groups.ordinary().two_torsion_basis) {
        auto g = principal_generator(fd.F, ideal_mul(fd.F, a, a));
        if (!g) throw TheoremViolation("selmer_space: square of 2-torsion ideal " + a.to_string() + " not principal");
        basis.push_back(*g);
    }
    SelmerSpace S = detail::fill_selmer(fd, SelmerKind::full, std::move(basis));
    const int expected = fd.rho() + fd.F.r() + fd.F.s();
    if (S.dim != expected)
        throw TheoremViolation("selmer_space: dim " + std::to_string(S.dim) + " != rho + r + s = " +
                               std::to_string(expected) + " for " + fd.F.name());
    if (!square_classes_independent(fd.F, S.basis))
        throw TheoremViolation("selmer_space: basis classes are dependent for " + fd.F.name());
    return S;
}

inline int expected_selmer_dim(const FieldData& fd, SelmerKind kind) {
    switch (kind) {
        case SelmerKind::full: return fd.rho() + fd.F.r() + fd.F.s();
        case SelmerKind::plus: return fd.rho_plus() + fd.F.s();
        case SelmerKind::four: return fd.rho_plus();
        case SelmerKind::four_plus: return fd.rho();
    }
    return -1;
}

/// Sel+, Sel4 or Sel4+ as the kernel of the sign map, the mod-4 map, or both.
inline SelmerSpace selmer_subspace(const FieldData& fd, const SelmerSpace& sel, SelmerKind kind,
                                   bool check = true) {
    if (kind == SelmerKind::full) return sel;
    BitMatrix m;
    switch (kind) {
        case SelmerKind::plus: m = sel.sign_matrix; break;
        case SelmerKind::four: m = sel.mod4_matrix; break;
        default: m = sel.sign_matrix.stacked(sel.mod4_matrix); break;
    }
    std::vector<Element> basis;
    for (const auto& v : f2_kernel_basis(m)) basis.push_back(detail::product_of(fd.F, sel.basis, v));
    SelmerSpace S = detail::fill_selmer(fd, kind, std::move(basis));
    if (check && S.dim != expected_selmer_dim(fd, kind))
        throw TheoremViolation(std::string("selmer_subspace: dim ") + to_string(kind) + " = " + std::to_string(S.dim) +
                               ", expected " + std::to_string(expected_selmer_dim(fd, kind)) + " for " + fd.F.name());
    return S;
}

inline SelmerSpace selmer_subspace(const FieldData& fd, SelmerKind kind) {
    return selmer_subspace(fd, selmer_space(fd), kind);
}

/// 2-ranks of the ray class groups mod 4 and 4 infinity, and rho+ recomputed, from the exact sequences.
struct RayRanks {
    int rho4 = 0;
    int rho4_plus = 0;
    int rho_plus_via_selmer = 0;
};

inline RayRanks ray_2ranks(const FieldData& fd, const SelmerSpace& sel) {
    const int rho = fd.rho(), r = fd.F.r(), n = fd.F.n();
    RayRanks out;
    out.rho_plus_via_selmer = rho + r - static_cast<int>(f2_rank(sel.sign_matrix));
    out.rho4 = rho + n - static_cast<int>(f2_rank(sel.mod4_matrix));
    out.rho4_plus = rho + n + r - static_cast<int>(f2_rank(sel.sign_matrix.stacked(sel.mod4_matrix)));
    return out;
}

// ---- conductors ----------------------------------------------------------

enum class Modulus { one, inf, four, four_inf };

inline const char* to_string(Modulus m) {
    switch (m) {
        case Modulus::one: return "1";
        case Modulus::inf: return "inf";
        case Modulus::four: return "4";
        case Modulus::four_inf: return "4inf";
    }
    return "?";
}

/// m1 divides m2 in the order 1 | inf | 4inf, 1 | 4 | 4inf.
inline bool divides(Modulus m1, Modulus m2) {
    if (m1 == m2 || m1 == Modulus::one || m2 == Modulus::four_inf) return true;
    return false;
}

/// Smallest modulus among {1, inf, 4, 4inf} that the class of omega satisfies.
inline Modulus conductor_class(const FieldData& fd, const Element& omega) {
    singular_root(fd.F, omega);
    const bool sq4 = is_square_mod4(fd.F, odd_representative(fd, omega));
    const bool pos = fd.F.is_totally_positive(omega);
    if (sq4 && pos) return Modulus::one;
    if (sq4) return Modulus::inf;
    if (pos) return Modulus::four;
    return Modulus::four_inf;
}

// ---- base change Q <-> F -------------------------------------------------

/// Canonical representative of a class of Q^x / Q^x2: signed squarefree part.
inline Integer rational_class(const Integer& a) {
    if (a == 0) throw DomainError("rational_class: zero");
    return squarefree_part(a);
}

/// j: Sel(Q) -> Sel(F), a Q^x2 -> a F^x2.
inline Element selmer_lift(const QuadField& F, const Integer& a) {
    const Integer c = rational_class(a);
    return F.is_rational() ? Element(c) : Element(c, 0);
}

/// N: Sel(F) -> Sel(Q), omega F^x2 -> N(omega) Q^x2.
inline Integer selmer_norm(const QuadField& F, const Element& omega) {
    if (omega.is_zero()) throw DomainError("selmer_norm: zero");
    return rational_class(F.norm(omega));
}

/// The class of omega is trivial in F^x / F^x2.
inline bool is_trivial_class(const QuadField& F, const Element& omega) { return F.is_square(omega); }

}  // namespace quadsel
