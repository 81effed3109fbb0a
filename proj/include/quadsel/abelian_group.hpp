#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "quadsel/arith.hpp"

namespace quadsel {

/// A finite abelian group given by its Cayley table on indices 0..order-1.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    FiniteAbelianGroup(std::vector<std::vector<int>> table, int identity)
        : table_(std::move(table)), identity_(identity) {}

    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int mul(int x, int y) const { return table_[x][y]; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    int pow(int x, std::uint64_t e) const {
        int r = identity_;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    int element_order(int x) const {
        int k = 1;
        for (int y = x; y != identity_; y = mul(y, x)) ++k;
        return k;
    }

    std::vector<int> two_torsion() const {
        std::vector<int> out;
        for (int x = 0; x < order(); ++x)
            if (mul(x, x) == identity_) out.push_back(x);
        return out;
    }

    /// Subgroup generated by `gens`, as a sorted list.
    std::vector<int> span(const std::vector<int>& gens) const {
        std::vector<int> cur{identity_};
        for (int g : gens) {
            std::vector<int> next = cur;
            for (int x : cur) {
                for (int y = mul(x, g); std::find(next.begin(), next.end(), y) == next.end(); y = mul(y, g))
                    next.push_back(y);
            }
            cur = std::move(next);
        }
        std::sort(cur.begin(), cur.end());
        return cur;
    }

    /// Invariant factors d_1 | d_2 | ... with product = order (trivial factors omitted).
    std::vector<std::uint64_t> elementary_divisors() const {
        const std::uint64_t h = static_cast<std::uint64_t>(order());
        if (h <= 1) return {};
        std::vector<int> orders(order());
        for (int x = 0; x < order(); ++x) orders[x] = element_order(x);

        // p-primary parts: #{x : x^(p^k) = 1} = prod p^min(k, e_i)
        std::vector<std::vector<int>> exponents;  // per prime, descending
        std::vector<std::uint64_t> primes;
        for (auto [p, e] : factor(h)) {
            std::vector<int> counts{1};
            std::uint64_t pk = 1;
            for (int k = 1; k <= e; ++k) {
                pk *= p;
                int cnt = 0;
                for (int o : orders)
                    if (pk % static_cast<std::uint64_t>(o) == 0) ++cnt;
                counts.push_back(cnt);
            }
            // number of cyclic factors of order >= p^k
            std::vector<int> at_least;
            for (int k = 1; k <= e; ++k) {
                int ratio = counts[k] / counts[k - 1], lg = 0;
                while (ratio > 1) {
                    ratio /= static_cast<int>(p);
                    ++lg;
                }
                at_least.push_back(lg);
            }
            std::vector<int> ex;
            const int nfactors = at_least.empty() ? 0 : at_least[0];
            for (int i = 0; i < nfactors; ++i) {
                int k = 0;
                while (k < static_cast<int>(at_least.size()) && at_least[k] > i) ++k;
                ex.push_back(k);
            }
            primes.push_back(p);
            exponents.push_back(ex);
        }
        std::size_t count = 0;
        for (const auto& ex : exponents) count = std::max(count, ex.size());
        std::vector<std::uint64_t> out(count, 1);
        for (std::size_t pi = 0; pi < primes.size(); ++pi) {
            for (std::size_t i = 0; i < exponents[pi].size(); ++i) {
                std::uint64_t pe = 1;
                for (int k = 0; k < exponents[pi][i]; ++k) pe *= primes[pi];
                out[count - 1 - i] *= pe;
            }
        }
        return out;
    }

    int two_rank() const {
        int n = static_cast<int>(two_torsion().size()), r = 0;
        while (n > 1) {
            n /= 2;
            ++r;
        }
        return r;
    }

private:
    std::vector<std::vector<int>> table_;
    int identity_ = 0;
};

}  // namespace quadsel
