#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "quadsel/ideals.hpp"

namespace quadsel {

/// Prime ideals in increasing norm (ties by b), up to `bound` inclusive.
/// Inert primes (norm p^2) are held back until every smaller norm has been produced.
class PrimeIdealStream {
public:
    struct Entry {
        Ideal ideal;
        std::uint64_t p;
        std::uint64_t norm;
        SplitType type;
    };

    PrimeIdealStream(const QuadField& F, std::uint64_t bound, std::uint64_t first_prime = 2)
        : F_(F), bound_(bound), p_(first_prime < 2 ? 2 : first_prime) {
        if (!is_prime(p_)) p_ = next_prime(p_);
    }

    bool next(Entry& out) {
        for (;;) {
            if (!ready_.empty()) {
                out = ready_.front();
                ready_.erase(ready_.begin());
                return true;
            }
            const bool more_rational = p_ <= bound_;
            if (!inert_.empty() && (!more_rational || inert_.top().norm < p_)) {
                out = inert_.top();
                inert_.pop();
                return true;
            }
            if (!more_rational) return false;
            const auto sp = split_prime(F_, p_);
            if (sp.type == SplitType::inert && !F_.is_rational()) {
                if (p_ <= bound_ / p_) inert_.push(Entry{sp.primes[0], p_, p_ * p_, sp.type});
            } else {
                for (const auto& q : sp.primes) ready_.push_back(Entry{q, p_, p_, sp.type});
            }
            p_ = next_prime(p_ + 1);
        }
    }

private:
    struct Later {
        bool operator()(const Entry& l, const Entry& r) const { return l.norm > r.norm; }
    };
    QuadField F_;
    std::uint64_t bound_;
    std::uint64_t p_;
    std::vector<Entry> ready_;
    std::priority_queue<Entry, std::vector<Entry>, Later> inert_;
};

}  // namespace quadsel
