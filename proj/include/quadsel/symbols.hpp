#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "quadsel/selmer.hpp"

namespace quadsel {

// ---- residue symbols -----------------------------------------------------

namespace detail {

// F_p[w] / (w^2 - t w + nw), elements u + v w
struct Fp2 {
    std::uint64_t p, t, nw;

    std::pair<std::uint64_t, std::uint64_t> mul(std::pair<std::uint64_t, std::uint64_t> a,
                                                std::pair<std::uint64_t, std::uint64_t> b) const {
        // w^2 = t w - nw
        const std::uint64_t uu = mulmod(a.first, b.first, p);
        const std::uint64_t vv = mulmod(a.second, b.second, p);
        const std::uint64_t uv = (mulmod(a.first, b.second, p) + mulmod(a.second, b.first, p)) % p;
        const std::uint64_t u = (uu + p - mulmod(vv, nw, p)) % p;
        const std::uint64_t v = (uv + mulmod(vv, t, p)) % p;
        return {u, v};
    }
    std::pair<std::uint64_t, std::uint64_t> pow(std::pair<std::uint64_t, std::uint64_t> a, std::uint64_t e) const {
        std::pair<std::uint64_t, std::uint64_t> r{1 % p, 0};
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

}  // namespace detail

/// (alpha / p) = alpha^((Np - 1)/2) in O_F / p, for an odd prime ideal p not dividing alpha.
inline int residue_symbol(const QuadField& F, const Element& alpha, const Ideal& prime) {
    const Integer N = ideal_norm(F, prime);
    if (N % 2 == 0) throw DomainError("residue_symbol: prime " + prime.to_string() + " is even");
    if (ideal_contains(F, prime, alpha))
        throw DomainError("residue_symbol: " + prime.to_string() + " divides " + alpha.to_string());
    if (F.is_rational()) return jacobi(alpha.x, prime.c);
    if (prime.c == 1) {
        // degree one: omega = -b mod p
        const Integer& p = prime.a;
        return jacobi(mod(alpha.x - alpha.y * prime.b, p), p);
    }
    const std::uint64_t p = mpz_get_ui(prime.c.get_mpz_t());
    detail::Fp2 K{p, mod_u64(F.omega_trace(), p), mod_u64(F.omega_norm(), p)};
    const auto r = K.pow({mod_u64(alpha.x, p), mod_u64(alpha.y, p)}, (p * p - 1) / 2);
    if (r.second != 0) throw TheoremViolation("residue_symbol: Euler power left F_p");
    if (r.first == 1) return 1;
    if (r.first == p - 1) return -1;
    throw TheoremViolation("residue_symbol: Euler power is not +-1");
}

/// (omega / a) for a Selmer class omega and an odd ideal a, via a representative prime to a.
inline int symbol_ideal(const FieldData& fd, const Element& omega, const Ideal& a) {
    const Integer N = ideal_norm(fd.F, a);
    if (N % 2 == 0) throw DomainError("symbol_ideal: ideal " + a.to_string() + " is even");
    if (N == 1) return 1;
    const Element w = coprime_representative(fd, omega, N);
    int s = 1;
    for (const auto& [q, e] : factorize(fd.F, a))
        if (e % 2) s *= residue_symbol(fd.F, w, q);
    return s;
}

/// (alpha / beta) for coprime integral alpha and odd beta: product over the primes of (beta).
inline int symbol_element(const QuadField& F, const Element& alpha, const Element& beta) {
    int s = 1;
    for (const auto& [q, e] : factorize(F, principal_ideal(F, beta)))
        if (e % 2) s *= residue_symbol(F, alpha, q);
    return s;
}

// ---- ideal groups --------------------------------------------------------

enum class IdealGroupKind { I2P, I2P_plus, I2P4, I2P4_plus };

inline const char* to_string(IdealGroupKind k) {
    switch (k) {
        case IdealGroupKind::I2P: return "I2P";
        case IdealGroupKind::I2P_plus: return "I2P+";
        case IdealGroupKind::I2P4: return "I2P4";
        case IdealGroupKind::I2P4_plus: return "I2P4+";
    }
    return "?";
}

/// The Selmer group whose symbols cut out the ideal group.
inline SelmerKind dual_selmer(IdealGroupKind k) {
    switch (k) {
        case IdealGroupKind::I2P: return SelmerKind::four_plus;
        case IdealGroupKind::I2P_plus: return SelmerKind::four;
        case IdealGroupKind::I2P4: return SelmerKind::plus;
        case IdealGroupKind::I2P4_plus: return SelmerKind::full;
    }
    return SelmerKind::full;
}

enum class Membership { member, non_member, inconclusive };

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::member: return "member";
        case Membership::non_member: return "non_member";
        case Membership::inconclusive: return "inconclusive";
    }
    return "?";
}

struct MembershipResult {
    Membership verdict = Membership::inconclusive;
    bool exhaustive = false;  // every class of b that could work was tried
    std::optional<Element> alpha;
    std::optional<Ideal> b;
};

inline bool satisfies(const QuadField& F, const Element& alpha, IdealGroupKind kind) {
    const bool need_pos = kind == IdealGroupKind::I2P_plus || kind == IdealGroupKind::I2P4_plus;
    const bool need_sq4 = kind == IdealGroupKind::I2P4 || kind == IdealGroupKind::I2P4_plus;
    if (need_pos && !F.is_totally_positive(alpha)) return false;
    if (need_sq4 && !is_square_mod4(F, alpha)) return false;
    return true;
}

/// Is the odd ideal a in I^2 P, I^2 P+, I^2 P4 or I^2 P4+ ?
///
/// Searches a b^2 = (alpha) over one odd b per admissible ideal class (the condition on alpha
/// only depends on the class of b), times unit coset representatives.
inline MembershipResult ideal_group_membership(const FieldData& fd, const Ideal& a, IdealGroupKind kind,
                                               std::optional<std::uint64_t> bound = std::nullopt,
                                               const SelmerSpace* sel = nullptr) {
    const QuadField& F = fd.F;
    if (ideal_norm(F, a) % 2 == 0) throw DomainError("ideal_group_membership: ideal " + a.to_string() + " is even");
    const std::uint64_t B = bound ? *bound : fd.prime_bound;
    const auto& G = fd.groups.ordinary().group;
    const int ca = fd.groups.ordinary_class(a);

    std::vector<int> wanted;
    for (int c = 0; c < G.order(); ++c)
        if (G.mul(G.mul(c, c), ca) == G.identity()) wanted.push_back(c);

    std::vector<std::pair<int, Ideal>> candidates;
    if (!wanted.empty() && wanted.front() == G.identity()) candidates.emplace_back(G.identity(), Ideal{});
    if (candidates.size() < wanted.size()) {
        std::vector<bool> seen(G.order(), false);
        if (!candidates.empty()) seen[G.identity()] = true;
        PrimeIdealStream stream(F, B, 3);
        PrimeIdealStream::Entry e;
        while (candidates.size() < wanted.size() && stream.next(e)) {
            const int c = fd.groups.ordinary_class(e.ideal);
            if (seen[c] || !std::binary_search(wanted.begin(), wanted.end(), c)) continue;
            seen[c] = true;
            candidates.emplace_back(c, e.ideal);
        }
    }

    MembershipResult out;
    out.exhaustive = candidates.size() == wanted.size();
    const auto reps = unit_coset_reps(F, fd.units.fundamental);
    for (const auto& [c, b] : candidates) {
        (void)c;
        const Ideal ab2 = ideal_mul(F, a, ideal_mul(F, b, b));
        const auto g = principal_generator(F, ab2);
        if (!g) throw TheoremViolation("ideal_group_membership: a b^2 not principal for b = " + b.to_string());
        for (const auto& u : reps) {
            const Element alpha = F.mul(*g, u);
            if (satisfies(F, alpha, kind)) {
                out.verdict = Membership::member;
                out.alpha = alpha;
                out.b = b;
                return out;
            }
        }
    }
    // certify non-membership by a dual symbol equal to -1
    const SelmerSpace full = sel ? *sel : selmer_space(fd);
    const SelmerSpace dual = selmer_subspace(fd, full, dual_selmer(kind));
    for (const auto& w : dual.basis) {
        if (symbol_ideal(fd, w, a) == -1) {
            out.verdict = Membership::non_member;
            return out;
        }
    }
    out.verdict = Membership::inconclusive;
    return out;
}

// ---- pairings ------------------------------------------------------------

enum class PairingKind { EP1, EP2, EP3, EP4 };

inline const char* to_string(PairingKind k) {
    switch (k) {
        case PairingKind::EP1: return "EP1";
        case PairingKind::EP2: return "EP2";
        case PairingKind::EP3: return "EP3";
        case PairingKind::EP4: return "EP4";
    }
    return "?";
}

inline SelmerKind selmer_side(PairingKind k) {
    switch (k) {
        case PairingKind::EP1: return SelmerKind::full;
        case PairingKind::EP2: return SelmerKind::plus;
        case PairingKind::EP3: return SelmerKind::four;
        case PairingKind::EP4: return SelmerKind::four_plus;
    }
    return SelmerKind::full;
}

enum class PairingVerdict { perfect, rank_deficit, inconclusive };

inline const char* to_string(PairingVerdict v) {
    switch (v) {
        case PairingVerdict::perfect: return "perfect";
        case PairingVerdict::rank_deficit: return "rank_deficit";
        case PairingVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct PairingReport {
    PairingKind kind = PairingKind::EP1;
    SelmerSpace selmer_side;
    std::vector<Ideal> row_ideals;
    BitMatrix matrix;  // 1 where the symbol is -1
    int achieved_rank = 0;
    int expected_rank = 0;
    std::uint64_t primes_tried = 0;
    PairingVerdict verdict = PairingVerdict::inconclusive;
};

/// Symbols of the Selmer side against odd primes of increasing norm until full rank.
inline PairingReport pairing_matrix(const FieldData& fd, const SelmerSpace& sel, PairingKind kind,
                                    std::optional<std::uint64_t> bound = std::nullopt) {
    const QuadField& F = fd.F;
    PairingReport rep;
    rep.kind = kind;
    try {
        rep.selmer_side = selmer_subspace(fd, sel, selmer_side(kind));
    } catch (const InconclusiveError&) {
        rep.verdict = PairingVerdict::inconclusive;
        return rep;
    }
    const SelmerSpace& S = rep.selmer_side;
    rep.expected_rank = S.dim;
    rep.matrix = BitMatrix(0, S.dim);
    if (S.dim == 0) {
        rep.verdict = PairingVerdict::perfect;
        return rep;
    }
    Integer bad = F.disc() * 2;
    for (const auto& w : S.odd_reps) bad *= F.norm(w);

    const std::uint64_t B = bound ? *bound : fd.prime_bound;
    PrimeIdealStream stream(F, B, 3);
    PrimeIdealStream::Entry e;
    while (rep.achieved_rank < rep.expected_rank && stream.next(e)) {
        if (mod_u64(bad, e.p) == 0) continue;
        ++rep.primes_tried;
        BitVector row(S.dim);
        for (int j = 0; j < S.dim; ++j) row[j] = residue_symbol(F, S.odd_reps[j], e.ideal) == -1;
        BitMatrix grown = rep.matrix;
        grown.append_row(row);
        const int rk = static_cast<int>(f2_rank(grown));
        if (rk > rep.achieved_rank) {
            rep.matrix = std::move(grown);
            rep.row_ideals.push_back(e.ideal);
            rep.achieved_rank = rk;
        }
    }
    rep.verdict = rep.achieved_rank == rep.expected_rank ? PairingVerdict::perfect : PairingVerdict::rank_deficit;
    return rep;
}

inline PairingReport pairing_matrix(const FieldData& fd, PairingKind kind) {
    return pairing_matrix(fd, selmer_space(fd), kind);
}

// ---- reciprocity ---------------------------------------------------------

enum class Check { pass, fail, skipped, inconclusive };

inline const char* to_string(Check c) {
    switch (c) {
        case Check::pass: return "pass";
        case Check::fail: return "fail";
        case Check::skipped: return "skipped";
        case Check::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Odd norms, coprime, and alpha (or beta) primary with one of the two totally positive.
inline bool reciprocity_hypothesis(const QuadField& F, const Element& alpha, const Element& beta) {
    if (alpha.is_zero() || beta.is_zero()) return false;
    if (F.norm(alpha) % 2 == 0 || F.norm(beta) % 2 == 0) return false;
    if (!ideal_sum(F, principal_ideal(F, alpha), principal_ideal(F, beta)).is_unit_ideal()) return false;
    const bool pa = F.is_totally_positive(alpha), pb = F.is_totally_positive(beta);
    if (is_square_mod4(F, alpha) && (pa || pb)) return true;
    if (is_square_mod4(F, beta) && (pb || pa)) return true;
    return false;
}

inline Check reciprocity_check(const QuadField& F, const Element& alpha, const Element& beta) {
    if (!reciprocity_hypothesis(F, alpha, beta)) return Check::skipped;
    return symbol_element(F, alpha, beta) == symbol_element(F, beta, alpha) ? Check::pass : Check::fail;
}

struct FuzzStats {
    std::uint64_t pairs = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t draws = 0;
    std::uint64_t seed = 0;
};

/// `trials` random pairs with coordinates in [-height, height] that satisfy the hypothesis.
inline FuzzStats reciprocity_fuzz(const QuadField& F, std::uint64_t trials, long height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-height, height);
    auto draw = [&] { return F.is_rational() ? Element(coord(rng)) : Element(Integer(coord(rng)), Integer(coord(rng))); };
    FuzzStats st;
    st.seed = seed;
    const std::uint64_t max_draws = 1000 * trials + 1000;
    while (st.pairs < trials && st.draws < max_draws) {
        ++st.draws;
        const Element a = draw(), b = draw();
        const Check c = reciprocity_check(F, a, b);
        if (c == Check::skipped) continue;
        ++st.pairs;
        if (c == Check::fail) ++st.mismatches;
    }
    return st;
}

// ---- supplementary law ---------------------------------------------------

enum class SuppVerdict { verified, refuted, inconclusive };

inline const char* to_string(SuppVerdict v) {
    switch (v) {
        case SuppVerdict::verified: return "verified";
        case SuppVerdict::refuted: return "refuted";
        case SuppVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct SuppResult {
    SuppVerdict verdict = SuppVerdict::inconclusive;
    bool symbols_trivial = false;  // (omega / a) = 1 for all omega in Sel
    Membership membership = Membership::inconclusive;
};

/// a b^2 = (alpha) with alpha = 1 mod 4 infinity  <=>  (omega / a) = 1 for every omega in Sel(F).
inline SuppResult supplementary_check(const FieldData& fd, const SelmerSpace& sel, const Ideal& a,
                                      std::optional<std::uint64_t> bound = std::nullopt) {
    SuppResult out;
    try {
        out.symbols_trivial = true;
        for (const auto& w : sel.basis)
            if (symbol_ideal(fd, w, a) == -1) out.symbols_trivial = false;
        const auto m = ideal_group_membership(fd, a, IdealGroupKind::I2P4_plus, bound, &sel);
        out.membership = m.verdict;
        if (m.verdict == Membership::member) {
            out.verdict = out.symbols_trivial ? SuppVerdict::verified : SuppVerdict::refuted;
        } else if (!out.symbols_trivial) {
            out.verdict = SuppVerdict::verified;
        } else {
            out.verdict = m.exhaustive ? SuppVerdict::refuted : SuppVerdict::inconclusive;
        }
    } catch (const InconclusiveError&) {
        out.verdict = SuppVerdict::inconclusive;
    }
    return out;
}

}  // namespace quadsel
