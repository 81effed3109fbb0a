#pragma once

// Rational number theory used by the field layer: residue symbols,
// primality, factorization of machine-size integers, square roots mod p.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "quadsel/errors.hpp"

namespace quadsel {

using Integer = mpz_class;

inline Integer isqrt(const Integer& n) {
    if (n < 0) throw DomainError("isqrt of negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

/// Non-negative remainder of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Exact quotient; throws if `d` does not divide `n`.
inline Integer exact_div(const Integer& n, const Integer& d) {
    if (d == 0 || !mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
        throw TheoremViolation("exact_div: non-exact division");
    Integer q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// Extended gcd: returns (g, s, t) with s a + t b = g >= 0.
inline std::tuple<Integer, Integer, Integer> xgcd(const Integer& a, const Integer& b) {
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {g, s, t};
}

inline std::int64_t to_i64(const Integer& n) {
    if (!n.fits_slong_p()) throw DomainError("integer does not fit in 64 bits");
    return n.get_si();
}

/// Jacobi symbol (a/n) for odd n >= 1.
inline int jacobi(Integer a, Integer n) {
    if (n <= 0 || mpz_even_p(n.get_mpz_t())) throw DomainError("jacobi: modulus must be odd and positive");
    a = mod(a, n);
    int t = 1;
    while (a != 0) {
        while (mpz_even_p(a.get_mpz_t())) {
            a /= 2;
            const unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 8);
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) t = -t;
        a = mod(a, n);
    }
    return n == 1 ? t : 0;
}

/// Kronecker symbol (a/p) for a prime p (p = 2 allowed).
inline int kronecker_prime(const Integer& a, std::uint64_t p) {
    if (p == 2) {
        if (mpz_even_p(a.get_mpz_t())) return 0;
        const unsigned long r = mpz_fdiv_ui(a.get_mpz_t(), 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    return jacobi(a, Integer(static_cast<unsigned long>(p)));
}

// ---- machine-word modular arithmetic ------------------------------------

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t mod_u64(const Integer& a, std::uint64_t m) {
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

inline void factor_into(std::uint64_t n, std::map<std::uint64_t, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    const std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization as ascending (p, e) pairs.
inline std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
    if (n == 0) throw DomainError("factor: zero");
    std::map<std::uint64_t, int> f;
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    }
    detail::factor_into(n, f);
    return {f.begin(), f.end()};
}

inline std::vector<std::pair<std::uint64_t, int>> factor(const Integer& n) {
    Integer a = abs(n);
    if (!a.fits_ulong_p()) throw DomainError("factor: integer exceeds 64 bits");
    return factor(static_cast<std::uint64_t>(a.get_ui()));
}

inline bool is_squarefree(std::int64_t n) {
    if (n == 0) return false;
    for (auto [p, e] : factor(static_cast<std::uint64_t>(n < 0 ? -n : n)))
        if (e > 1) return false;
    return true;
}

/// Sign times squarefree part: the canonical representative of n Q^{x2}.
inline Integer squarefree_part(const Integer& n) {
    if (n == 0) throw DomainError("squarefree_part of zero");
    Integer r = 1;
    for (auto [p, e] : factor(n))
        if (e % 2) r *= static_cast<unsigned long>(p);
    return n < 0 ? Integer(-r) : r;
}

/// A square root of a modulo an odd prime p (Tonelli-Shanks); nullopt for non-residues.
inline std::optional<std::uint64_t> sqrt_mod_prime(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (p == 2 || a == 0) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

/// Primes <= n by the sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

inline std::uint64_t next_prime(std::uint64_t n) {
    while (!is_prime(n)) ++n;
    return n;
}

}  // namespace quadsel
