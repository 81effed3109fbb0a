#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "quadsel/abelian_group.hpp"
#include "quadsel/bit_matrix.hpp"
#include "quadsel/forms.hpp"
#include "quadsel/ideals.hpp"
#include "quadsel/units.hpp"

namespace quadsel {

/// One class group (narrow or ordinary) with explicit ideal representatives.
struct ClassGroupData {
    bool narrow = false;
    std::uint64_t order = 1;
    std::vector<Ideal> elements;  // one primitive ideal per class, index = class id
    FiniteAbelianGroup group;
    std::vector<std::uint64_t> elementary_divisors;
    std::vector<Ideal> two_torsion_basis;  // odd prime ideals of smallest norm
    std::vector<int> two_torsion_basis_classes;
    int two_rank = 0;
};

/// Narrow and ordinary class groups of a quadratic field, computed from reduced forms.
///
/// Narrow classes are proper equivalence classes of forms of discriminant Disc
/// (positive definite ones for Disc < 0). The ordinary group is the quotient by
/// the narrow class of (sqrt d), which is trivial iff a unit of norm -1 exists.
class ClassGroups {
public:
    static constexpr std::uint64_t kPrimeSearchLimit = 2'000'000;

    explicit ClassGroups(const QuadField& F) : F_(F) {
        if (F.is_rational()) {
            narrow_.narrow = true;
            narrow_.elements = {Ideal{}};
            narrow_.group = FiniteAbelianGroup({{0}}, 0);
            ordinary_ = narrow_;
            ordinary_.narrow = false;
            narrow_of_ordinary_ = {0};
            ordinary_of_narrow_ = {0};
            return;
        }
        build_narrow();
        build_ordinary();
        narrow_.two_torsion_basis = two_torsion_primes(true, narrow_.two_torsion_basis_classes);
        ordinary_.two_torsion_basis = two_torsion_primes(false, ordinary_.two_torsion_basis_classes);
    }

    const QuadField& field() const { return F_; }
    const ClassGroupData& narrow() const { return narrow_; }
    const ClassGroupData& ordinary() const { return ordinary_; }

    int narrow_class_of_form(const Form& f) const {
        const Form g = reduce(f);
        auto it = class_of_reduced_.find(g);
        if (it == class_of_reduced_.end()) throw TheoremViolation("class lookup: unknown reduced form " + g.to_string());
        return it->second;
    }

    int narrow_class(const Ideal& I) const {
        if (F_.is_rational()) return 0;
        return narrow_class_of_form(form_of_ideal(F_, I));
    }
    int ordinary_class(const Ideal& I) const {
        if (F_.is_rational()) return 0;
        return ordinary_of_narrow_[narrow_class(I)];
    }

    /// Narrow class of the principal ideal (sqrt d); generates ker(Cl+ -> Cl).
    int kernel_generator() const { return kernel_gen_; }

private:
    void build_narrow() {
        const Integer D = F_.disc();
        const auto forms = reduced_forms(D);
        std::vector<Form> reps;
        if (D < 0) {
            for (const auto& f : forms) {
                class_of_reduced_[f] = static_cast<int>(reps.size());
                reps.push_back(f);
            }
        } else {
            // one class per rho-cycle of reduced forms
            for (const auto& f : forms) {
                if (class_of_reduced_.count(f)) continue;
                const int id = static_cast<int>(reps.size());
                Form g = f;
                do {
                    class_of_reduced_[g] = id;
                    g = rho(g, D);
                } while (!(g == f));
                reps.push_back(f);  // forms are sorted, so f is the cycle minimum
            }
        }
        const int h = static_cast<int>(reps.size());
        std::vector<std::vector<int>> table(h, std::vector<int>(h));
        for (int i = 0; i < h; ++i)
            for (int j = i; j < h; ++j) table[i][j] = table[j][i] = narrow_class_of_form(compose(reps[i], reps[j]));
        const int id = narrow_class_of_form(principal_form(D));
        narrow_.narrow = true;
        narrow_.order = static_cast<std::uint64_t>(h);
        narrow_.group = FiniteAbelianGroup(std::move(table), id);
        for (const auto& f : reps) narrow_.elements.push_back(ideal_of_form(F_, positive_leading(f)));
        narrow_.elementary_divisors = narrow_.group.elementary_divisors();
        narrow_.two_rank = narrow_.group.two_rank();
        narrow_reps_ = reps;
    }

    void build_ordinary() {
        const auto& G = narrow_.group;
        kernel_gen_ = G.identity();
        if (F_.d() > 0) kernel_gen_ = narrow_class(principal_ideal(F_, F_.sqrt_d()));
        const auto kernel = G.span({kernel_gen_});
        // ordinary class = coset of the kernel; canonical narrow index = min of coset
        std::map<int, int> id_of_min;
        ordinary_of_narrow_.assign(G.order(), -1);
        for (int x = 0; x < G.order(); ++x) {
            int m = x;
            for (int k : kernel) m = std::min(m, G.mul(x, k));
            auto [it, inserted] = id_of_min.emplace(m, static_cast<int>(id_of_min.size()));
            (void)inserted;
            ordinary_of_narrow_[x] = it->second;
        }
        const int h = static_cast<int>(id_of_min.size());
        narrow_of_ordinary_.assign(h, 0);
        for (auto [m, id] : id_of_min) narrow_of_ordinary_[id] = m;
        std::vector<std::vector<int>> table(h, std::vector<int>(h));
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j)
                table[i][j] = ordinary_of_narrow_[G.mul(narrow_of_ordinary_[i], narrow_of_ordinary_[j])];
        ordinary_.narrow = false;
        ordinary_.order = static_cast<std::uint64_t>(h);
        ordinary_.group = FiniteAbelianGroup(std::move(table), ordinary_of_narrow_[G.identity()]);
        for (int i = 0; i < h; ++i) ordinary_.elements.push_back(narrow_.elements[narrow_of_ordinary_[i]]);
        ordinary_.elementary_divisors = ordinary_.group.elementary_divisors();
        ordinary_.two_rank = ordinary_.group.two_rank();
    }

    /// Greedy basis of the 2-torsion from prime ideals above p not dividing 2 Disc, in increasing order.
    std::vector<Ideal> two_torsion_primes(bool narrow, std::vector<int>& classes) const {
        const ClassGroupData& data = narrow ? narrow_ : ordinary_;
        const auto& G = data.group;
        std::vector<Ideal> basis;
        classes.clear();
        std::vector<int> span{G.identity()};
        for (std::uint64_t p = 3; static_cast<int>(basis.size()) < data.two_rank; p = next_prime(p + 1)) {
            if (p > kPrimeSearchLimit) throw InconclusiveError("two-torsion basis search exhausted", kPrimeSearchLimit);
            if (mod_u64(F_.disc(), p) == 0) continue;
            const auto sp = split_prime(F_, p);
            if (sp.type != SplitType::split) continue;
            for (const auto& q : sp.primes) {
                const int c = narrow ? narrow_class(q) : ordinary_class(q);
                if (G.mul(c, c) != G.identity()) continue;
                if (std::binary_search(span.begin(), span.end(), c)) continue;
                basis.push_back(q);
                classes.push_back(c);
                span = G.span(classes);
                if (static_cast<int>(basis.size()) == data.two_rank) break;
            }
        }
        return basis;
    }

    QuadField F_;
    ClassGroupData narrow_;
    ClassGroupData ordinary_;
    std::vector<Form> narrow_reps_;
    std::map<Form, int> class_of_reduced_;
    std::vector<int> ordinary_of_narrow_;
    std::vector<int> narrow_of_ordinary_;
    int kernel_gen_ = 0;
};

inline ClassGroupData narrow_class_group(const QuadField& F) { return ClassGroups(F).narrow(); }
inline ClassGroupData class_group(const QuadField& F) { return ClassGroups(F).ordinary(); }

/// t - 1 for t the number of distinct primes dividing a fundamental discriminant.
inline int genus_rank(const Integer& disc) {
    auto bad = [&] { return DomainError("genus_rank: " + disc.get_str() + " is not a fundamental discriminant"); };
    if (disc == 0 || disc == 1) throw bad();
    const std::int64_t D = to_i64(disc);
    if (mod(D, 4) == 1) {
        if (!is_squarefree(D)) throw bad();
    } else if (mod(D, 4) == 0) {
        const std::int64_t m = D / 4;
        if (mod(m, 4) != 2 && mod(m, 4) != 3) throw bad();
        if (!is_squarefree(m)) throw bad();
    } else {
        throw bad();
    }
    return static_cast<int>(factor(disc).size()) - 1;
}

// ---- units ----------------------------------------------------------------

/// Generators of E/E^2 with their signatures and residues modulo 4.
struct UnitData {
    Element torsion_or_fundamental;
    std::optional<Element> fundamental;  // real fields only
    std::vector<Element> basis_E_mod_E2;
    BitMatrix sign_matrix;  // r x |basis|
    BitMatrix mod4_matrix;  // n x |basis|, coordinates in M4/M4^2
    BitVector mod4_vector;  // basis element is a square mod 4
    int u = 0;              // dim E/E+
    int dim_plus = 0;       // dim E+/E^2
    int dim_four = 0;       // dim E4/E^2
    int dim_four_plus = 0;  // dim E4+/E^2
    std::vector<Element> plus_basis, four_basis, four_plus_basis;
};

namespace detail {

inline Element product_of(const QuadField& F, const std::vector<Element>& gens, const BitVector& v) {
    Element e = F.one();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (v[i]) e = F.mul(e, gens[i]);
    return e;
}

inline BitMatrix sign_columns(const QuadField& F, const std::vector<Element>& gens) {
    std::vector<BitVector> cols;
    for (const auto& g : gens) cols.push_back(F.signature(g));
    return from_columns(cols, static_cast<std::size_t>(F.r()));
}

inline BitMatrix mod4_columns(const QuadField& F, const std::vector<Element>& gens) {
    std::vector<BitVector> cols;
    for (const auto& g : gens) cols.push_back(mod4_coords(F, g));
    return from_columns(cols, static_cast<std::size_t>(F.n()));
}

}  // namespace detail

inline UnitData unit_structure(const QuadField& F) {
    UnitData U;
    if (F.is_rational()) {
        U.torsion_or_fundamental = Element(-1);
        U.basis_E_mod_E2 = {Element(-1)};
    } else if (F.d() > 0) {
        const Element eps = fundamental_unit(F);
        U.torsion_or_fundamental = eps;
        U.fundamental = eps;
        U.basis_E_mod_E2 = {Element(-1), eps};
    } else if (F.d() == -1) {
        U.torsion_or_fundamental = F.omega();
        U.basis_E_mod_E2 = {F.omega()};
    } else if (F.d() == -3) {
        // zeta_6 = omega for d = -3; its square class is that of -1
        U.torsion_or_fundamental = F.omega();
        U.basis_E_mod_E2 = {Element(-1)};
    } else {
        U.torsion_or_fundamental = Element(-1);
        U.basis_E_mod_E2 = {Element(-1)};
    }
    const auto& B = U.basis_E_mod_E2;
    U.sign_matrix = detail::sign_columns(F, B);
    U.mod4_matrix = detail::mod4_columns(F, B);
    for (const auto& e : B) U.mod4_vector.push_back(is_square_mod4(F, e));
    U.u = static_cast<int>(f2_rank(U.sign_matrix));

    auto collect = [&](const BitMatrix& m, std::vector<Element>& out) {
        for (const auto& v : f2_kernel_basis(m)) out.push_back(detail::product_of(F, B, v));
        return static_cast<int>(out.size());
    };
    U.dim_plus = collect(U.sign_matrix, U.plus_basis);
    U.dim_four = collect(U.mod4_matrix, U.four_basis);
    U.dim_four_plus = collect(U.sign_matrix.stacked(U.mod4_matrix), U.four_plus_basis);
    return U;
}

}  // namespace quadsel
