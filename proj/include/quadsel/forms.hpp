#pragma once

// Primitive binary quadratic forms (a, b, c) of fundamental discriminant b^2 - 4ac.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "quadsel/arith.hpp"
#include "quadsel/ideals.hpp"

namespace quadsel {

struct Form {
    Integer a, b, c;

    Integer disc() const { return b * b - 4 * a * c; }
    bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const Form& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
    std::string to_string() const { return "(" + a.get_str() + ", " + b.get_str() + ", " + c.get_str() + ")"; }
};

inline Form make_form(const Integer& a, const Integer& b, const Integer& disc) {
    return {a, b, exact_div(b * b - disc, 4 * a)};
}

/// The form attached to the primitive part of an ideal: [a, (-B + sqrt D)/2] -> (a, B, C).
inline Form form_of_ideal(const QuadField& F, const Ideal& I) {
    const Integer B = F.omega_is_half() ? Integer(-(2 * I.b + 1)) : Integer(-2 * I.b);
    return make_form(I.a, B, F.disc());
}

/// A primitive ideal in the narrow class of a form with a > 0.
inline Ideal ideal_of_form(const QuadField& F, const Form& f) {
    if (f.a <= 0) throw DomainError("ideal_of_form: leading coefficient must be positive");
    const Element th = detail::theta(F, f.b);
    return Ideal{1, f.a, mod(th.x, f.a)};
}

/// A properly equivalent form with positive leading coefficient.
inline Form positive_leading(const Form& f) {
    if (f.a > 0) return f;
    if (f.c > 0) return {f.c, -f.b, f.a};
    // (a, b, c) -> (a + b + c, b + 2c, c) under x -> x, y -> x + y; repeat until positive
    Form g = f;
    for (int i = 0; i < 64 && g.a <= 0; ++i) g = {g.a + g.b + g.c, g.b + 2 * g.c, g.c};
    if (g.a <= 0) throw DomainError("positive_leading: form represents no positive value nearby");
    return g;
}

/// Indefinite: |sqrt D - 2|a|| < b < sqrt D.  Definite: |b| <= a <= c with the usual boundary rule.
inline bool is_reduced(const Form& f, const Integer& D) {
    if (D > 0) return detail::real_reduced(abs(f.a), f.b, isqrt(D));
    if (abs(f.b) > f.a || f.a > f.c) return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

/// One step of rho: (a, b, c) -> (c, r, (r^2 - D)/4c).
inline Form rho(const Form& f, const Integer& D) {
    const Integer m = abs(f.c);
    const Integer r = D > 0 ? detail::real_normalized(-f.b, m, isqrt(D)) : detail::centered(-f.b, m);
    return make_form(f.c, r, D);
}

inline Form reduce(Form f) {
    const Integer D = f.disc();
    if (D < 0) {
        if (f.a < 0) throw DomainError("reduce: negative definite form");
        for (;;) {
            f = make_form(f.a, detail::centered(f.b, f.a), D);
            if (f.a > f.c) {
                f = make_form(f.c, -f.b, D);
                continue;
            }
            if ((f.a == f.c || abs(f.b) == f.a) && f.b < 0) f = make_form(f.a, -f.b, D);
            return f;
        }
    }
    for (int guard = 0; !is_reduced(f, D); ++guard) {
        if (guard > detail::kReductionCap) throw TheoremViolation("reduce: did not terminate");
        f = rho(f, D);
    }
    return f;
}

/// Composition of forms with positive leading coefficients (Dirichlet / Shanks), unreduced.
inline Form compose(Form f1, Form f2) {
    f1 = positive_leading(f1);
    f2 = positive_leading(f2);
    const Integer D = f1.disc();
    if (f1.a > f2.a) std::swap(f1, f2);
    const Integer s = exact_div(f1.b + f2.b, 2);
    const Integer n = f2.b - s;
    Integer y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        auto [g, u, v] = xgcd(f2.a, f1.a);
        (void)v;
        y1 = u;
        d = g;
    }
    Integer x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        auto [g, u, v] = xgcd(s, d);
        x2 = u;
        y2 = -v;
        d1 = g;
    }
    const Integer v1 = exact_div(f1.a, d1);
    const Integer v2 = exact_div(f2.a, d1);
    const Integer r = mod(y1 * y2 * n - x2 * f2.c, v1);
    const Integer b3 = f2.b + 2 * v2 * r;
    const Integer a3 = v1 * v2;
    return make_form(a3, b3, D);
}

/// The unit (principal) form of discriminant D.
inline Form principal_form(const Integer& D) {
    const Integer b = mod(D, 2);
    return reduce(make_form(1, b, D));
}

/// All reduced primitive forms of discriminant D (positive definite ones when D < 0).
inline std::vector<Form> reduced_forms(const Integer& D) {
    std::vector<Form> out;
    auto primitive = [](const Form& f) { return gcd(gcd(f.a, f.b), f.c) == 1; };
    if (D < 0) {
        const Integer amax = isqrt(-D / 3);
        for (Integer a = 1; a <= amax; ++a) {
            for (Integer b = -a + 1; b <= a; ++b) {
                if (mod(b - D, 2) != 0) continue;
                const Integer num = b * b - D;
                if (num % (4 * a) != 0) continue;
                Form f{a, b, num / (4 * a)};
                if (f.c < a || (f.c == a && b < 0)) continue;
                if (primitive(f)) out.push_back(f);
            }
        }
    } else {
        const Integer root = isqrt(D);
        for (Integer b = 1; b <= root; ++b) {
            if (mod(b - D, 2) != 0) continue;
            const Integer N = (D - b * b) / 4;  // = -ac > 0
            for (Integer a = 1; a <= N; ++a) {
                if (N % a != 0) continue;
                if (!detail::real_reduced(a, b, root)) continue;
                for (int sign : {1, -1}) {
                    Form f{a * sign, b, -(N / a) * sign};
                    if (primitive(f)) out.push_back(f);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace quadsel
