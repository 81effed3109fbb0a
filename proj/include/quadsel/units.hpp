#pragma once

#include "quadsel/field.hpp"

namespace quadsel {

/// Among {u, -u, conj u, -conj u} pick the one > 1 under the first real embedding.
/// `u` must be a unit other than +-1 of a real quadratic field.
inline Element unit_greater_than_one(const QuadField& F, const Element& u) {
    const Element c = F.conj(u);
    for (const Element& cand : {u, -u, c, -c}) {
        if (F.embedding_sign(cand - F.one(), 0) > 0) return cand;
    }
    throw TheoremViolation("unit_greater_than_one: no candidate exceeds 1");
}

/// Fundamental unit eps > 1 of a real quadratic field from the continued fraction of omega.
///
/// omega = (P0 + sqrt d)/Q0 with (P0, Q0) = (0, 1) or (1, 2). The expansion
/// (P_k + sqrt d)/Q_k returns to denominator Q0 exactly at the end of a period,
/// and then eps = p_k - q_k * conj(omega) for the last convergent p_k/q_k.
inline Element fundamental_unit(const QuadField& F) {
    if (F.is_rational() || F.d() < 0) throw DomainError("fundamental_unit: field must be real quadratic");
    const Integer D(static_cast<long>(F.d()));
    const Integer root = isqrt(D);
    const Integer Q0 = F.omega_is_half() ? 2 : 1;
    Integer P = F.omega_is_half() ? 1 : 0;
    Integer Q = Q0;
    Integer p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
    for (;;) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), Integer(P + root).get_mpz_t(), Q.get_mpz_t());
        const Integer p = a * p_prev + p_prev2;
        const Integer q = a * q_prev + q_prev2;
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
        P = a * Q - P;
        Q = exact_div(D - P * P, Q);
        if (Q == Q0) break;
    }
    // conj(omega) = t - omega
    Element eps(p_prev - F.omega_trace() * q_prev, q_prev);
    const Integer N = F.norm(eps);
    if (N != 1 && N != -1) throw TheoremViolation("fundamental_unit: norm is not +-1 for " + F.name());
    return eps;
}

}  // namespace quadsel
