#pragma once

#include <atomic>
#include <cstdio>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "quadsel/symbols.hpp"

namespace quadsel {

struct Config {
    std::uint64_t prime_norm_bound = 0;         // 0: 200 |Disc|
    std::uint64_t membership_search_bound = 0;  // 0: same as prime_norm_bound
    std::uint64_t supplementary_norm_limit = 500;
    std::uint64_t fuzz_trials = 100;
    long fuzz_height = 50;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

using Verdict = Check;  // pass / fail / inconclusive

struct SelmerEntry {
    Element element;
    Modulus conductor;
};

struct PairingSummary {
    PairingVerdict verdict = PairingVerdict::inconclusive;
    int achieved_rank = 0;
    int expected_rank = 0;
    std::vector<Ideal> rows;
    BitMatrix matrix;
};

struct FieldReport {
    std::int64_t d = 0;
    Integer disc;
    int r = 0, s = 0, n = 0;
    std::uint64_t h = 0, h_plus = 0;
    int u = 0;
    int rho = 0, rho_plus = 0, rho4 = 0, rho4_plus = 0;
    int sel = 0, sel_plus = 0, sel4 = 0, sel4_plus = 0;
    int e_plus = 0, e4 = 0, e4_plus = 0;
    int clp_rank = 0;
    int genus = 0;
    int rho_plus_via_selmer = 0;
    std::map<std::string, int> hecke;  // m, e, p, q, q0
    std::optional<Element> fundamental_unit;
    std::vector<std::uint64_t> class_group, narrow_class_group;
    std::vector<Ideal> two_torsion_basis;
    std::vector<std::pair<std::string, std::vector<SelmerEntry>>> selmer_bases;
    std::vector<std::pair<std::string, PairingSummary>> pairings;
    std::uint64_t supp_verified = 0, supp_refuted = 0, supp_inconclusive = 0;
    FuzzStats reciprocity;
    std::vector<bool> lagarias;
    std::vector<std::pair<std::string, Verdict>> checks;
    std::vector<std::string> notes;

    void set(const std::string& name, Verdict v) { checks.emplace_back(name, v); }
    bool all_pass() const {
        for (const auto& [k, v] : checks)
            if (v != Verdict::pass) return false;
        return true;
    }
    bool any_fail() const {
        for (const auto& [k, v] : checks)
            if (v == Verdict::fail) return true;
        return false;
    }
    bool lagarias_uniform() const {
        for (bool b : lagarias)
            if (b != lagarias.front()) return false;
        return true;
    }
};

namespace detail {

inline Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

inline int log2_exact(std::uint64_t x) {
    int k = 0;
    while (x > 1) {
        x >>= 1;
        ++k;
    }
    return k;
}

/// dim of {[a] in Cl : a^2 = (alpha), alpha >> 0}, by running over Cl[2].
inline int clp_rank(const FieldData& fd) {
    const auto& basis = fd.groups.ordinary().two_torsion_basis;
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << basis.size()); ++mask) {
        Ideal a;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if ((mask >> i) & 1u) a = ideal_mul(fd.F, a, basis[i]);
        if (strict_generator(fd.F, ideal_mul(fd.F, a, a), fd.units.fundamental)) ++count;
    }
    if (count & (count - 1)) throw TheoremViolation("clp_rank: Clp is not a 2-group of size 2^k");
    return log2_exact(count);
}

template <class F>
void guarded(FieldReport& rep, const std::string& name, F&& body) {
    try {
        body();
    } catch (const InconclusiveError& e) {
        rep.set(name, Verdict::inconclusive);
        rep.notes.push_back(name + ": " + e.what());
    } catch (const std::exception& e) {
        rep.set(name, Verdict::fail);
        rep.notes.push_back(name + ": " + e.what());
    }
}

}  // namespace detail

/// Every invariant of Q(sqrt d) together with one verdict per theorem.
inline FieldReport verify_field(std::int64_t d, const Config& cfg = {}) {
    const QuadField F = make_field(d);
    FieldReport rep;
    rep.d = d;
    rep.disc = F.disc();
    rep.r = F.r();
    rep.s = F.s();
    rep.n = F.n();

    std::optional<FieldData> fdo;
    std::optional<SelmerSpace> selo;
    detail::guarded(rep, "construction", [&] {
        fdo.emplace(F, cfg.prime_norm_bound);
        selo = selmer_space(*fdo);
        rep.set("construction", Verdict::pass);
    });
    if (!fdo || !selo) return rep;
    const FieldData& fd = *fdo;
    const SelmerSpace& sel = *selo;

    rep.h = fd.groups.ordinary().order;
    rep.h_plus = fd.groups.narrow().order;
    rep.u = fd.units.u;
    rep.rho = fd.rho();
    rep.rho_plus = fd.rho_plus();
    rep.e_plus = fd.units.dim_plus;
    rep.e4 = fd.units.dim_four;
    rep.e4_plus = fd.units.dim_four_plus;
    rep.fundamental_unit = fd.units.fundamental;
    rep.class_group = fd.groups.ordinary().elementary_divisors;
    rep.narrow_class_group = fd.groups.narrow().elementary_divisors;
    rep.two_torsion_basis = fd.groups.ordinary().two_torsion_basis;

    const RayRanks ray = ray_2ranks(fd, sel);
    rep.rho4 = ray.rho4;
    rep.rho4_plus = ray.rho4_plus;
    rep.rho_plus_via_selmer = ray.rho_plus_via_selmer;

    // (a) dimension table
    std::map<SelmerKind, SelmerSpace> sub;
    detail::guarded(rep, "selmer_dims", [&] {
        for (auto k : {SelmerKind::full, SelmerKind::plus, SelmerKind::four, SelmerKind::four_plus})
            sub.emplace(k, selmer_subspace(fd, sel, k, false));
        rep.sel = sub.at(SelmerKind::full).dim;
        rep.sel_plus = sub.at(SelmerKind::plus).dim;
        rep.sel4 = sub.at(SelmerKind::four).dim;
        rep.sel4_plus = sub.at(SelmerKind::four_plus).dim;
        const int rr = rep.r, ss = rep.s;
        const bool ok = rep.sel == rep.rho + rr + ss && rep.sel_plus == rep.rho_plus + ss &&
                        rep.sel4 == rep.rho_plus && rep.sel4_plus == rep.rho && rep.rho4 == rep.rho_plus + ss &&
                        rep.rho4_plus == rep.rho + rr + ss;
        rep.set("selmer_dims", detail::verdict_of(ok));
    });
    // only reported as a check when it throws
    detail::guarded(rep, "conductors", [&] {
        for (const auto& [k, S] : sub) {
            std::vector<SelmerEntry> entries;
            for (const auto& b : S.basis) entries.push_back({b, conductor_class(fd, b)});
            rep.selmer_bases.emplace_back(to_string(k), std::move(entries));
        }
    });

    // (b) rho+ three ways
    detail::guarded(rep, "rho_plus_triple", [&] {
        rep.genus = genus_rank(F.disc());
        rep.set("rho_plus_triple",
                detail::verdict_of(rep.rho_plus == rep.genus && rep.rho_plus == rep.rho_plus_via_selmer));
    });

    // (c) Armitage-Frohlich
    rep.set("armitage_frohlich", detail::verdict_of(rep.rho_plus - rep.rho <= rep.r / 2));
    // (d) unit bound
    rep.set("unit_bound", detail::verdict_of(rep.e4_plus >= (rep.r + 1) / 2 - rep.u));
    // (e) index divisibility
    rep.set("index_divisibility", detail::verdict_of(rep.sel_plus - rep.sel4_plus <= rep.sel - rep.sel4));
    // (f) h+ = 2^(r-u) h
    rep.set("narrow_class_number", detail::verdict_of(rep.h_plus == (rep.h << (rep.r - rep.u))));
    // (g) Clp
    detail::guarded(rep, "clp_rank", [&] {
        rep.clp_rank = detail::clp_rank(fd);
        rep.set("clp_rank", detail::verdict_of(rep.clp_rank == rep.rho_plus - rep.r + rep.u));
    });

    // (h) Lagarias conditions
    {
        const bool real = rep.s == 0;
        const bool c13 = real && kernel_contained(sel.mod4_matrix, sel.sign_matrix);
        const bool c2 = real && rep.rho_plus == rep.rho;
        const bool c4 = real && static_cast<int>(f2_rank(sel.sign_matrix)) == rep.r;
        const bool c57 = kernel_contained(sel.sign_matrix, sel.mod4_matrix);
        const bool c6 = rep.rho4 == rep.rho;
        const bool c8 = static_cast<int>(f2_rank(sel.mod4_matrix)) == rep.n;
        rep.lagarias = {c13, c2, c13, c4, c57, c6, c57, c8};
        rep.set("lagarias", detail::verdict_of(rep.lagarias_uniform()));
    }

    // Hecke's numbering, dimension semantics
    rep.hecke = {{"m", rep.r + rep.s}, {"e", rep.rho}, {"p", rep.sel_plus}, {"q", rep.sel4}, {"q0", rep.sel4_plus}};
    rep.set("hecke_aliases",
            detail::verdict_of(rep.hecke["q"] == rep.rho_plus && rep.hecke["q0"] == rep.rho &&
                               rep.hecke["p"] == rep.rho_plus + rep.s && rep.rho4 == rep.hecke["q"] + rep.s &&
                               rep.rho4_plus == rep.hecke["q0"] + rep.r + rep.s));

    // (i) pairings
    for (auto k : {PairingKind::EP1, PairingKind::EP2, PairingKind::EP3, PairingKind::EP4}) {
        const std::string name = std::string("pairing_") + to_string(k);
        detail::guarded(rep, name, [&] {
            const PairingReport pr = pairing_matrix(fd, sel, k);
            rep.pairings.emplace_back(to_string(k),
                                      PairingSummary{pr.verdict, pr.achieved_rank, pr.expected_rank, pr.row_ideals, pr.matrix});
            rep.set(name, pr.verdict == PairingVerdict::perfect       ? Verdict::pass
                          : pr.verdict == PairingVerdict::rank_deficit ? Verdict::fail
                                                                       : Verdict::inconclusive);
        });
    }

    // (j) supplementary law over odd primes of small norm
    detail::guarded(rep, "supplementary_law", [&] {
        const std::uint64_t mb = cfg.membership_search_bound ? cfg.membership_search_bound : fd.prime_bound;
        if (cfg.supplementary_norm_limit > 3) {
            PrimeIdealStream stream(F, cfg.supplementary_norm_limit - 1, 3);
            PrimeIdealStream::Entry e;
            while (stream.next(e)) {
                switch (supplementary_check(fd, sel, e.ideal, mb).verdict) {
                    case SuppVerdict::verified: ++rep.supp_verified; break;
                    case SuppVerdict::refuted: ++rep.supp_refuted; break;
                    case SuppVerdict::inconclusive: ++rep.supp_inconclusive; break;
                }
            }
        }
        rep.set("supplementary_law", rep.supp_refuted   ? Verdict::fail
                                     : rep.supp_inconclusive ? Verdict::inconclusive
                                                             : Verdict::pass);
    });

    // (k) reciprocity fuzz
    detail::guarded(rep, "reciprocity", [&] {
        const std::uint64_t seed = cfg.seed * 1000003u + static_cast<std::uint64_t>(d);
        rep.reciprocity = reciprocity_fuzz(F, cfg.fuzz_trials, cfg.fuzz_height, seed);
        rep.set("reciprocity", rep.reciprocity.mismatches           ? Verdict::fail
                               : rep.reciprocity.pairs < cfg.fuzz_trials ? Verdict::inconclusive
                                                                        : Verdict::pass);
    });
    return rep;
}

// ---- scans ---------------------------------------------------------------

struct CheckCounts {
    std::uint64_t pass = 0, fail = 0, inconclusive = 0;
};

struct ScanResult {
    std::vector<FieldReport> fields;  // ordered by d
    std::map<std::string, CheckCounts> counts;
    bool any_fail() const {
        for (const auto& [k, c] : counts)
            if (c.fail) return true;
        return false;
    }
    bool any_inconclusive() const {
        for (const auto& [k, c] : counts)
            if (c.inconclusive) return true;
        return false;
    }
};

inline std::vector<std::int64_t> squarefree_range(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = lo; d <= hi; ++d)
        if (d != 0 && d != 1 && is_squarefree(d)) out.push_back(d);
    return out;
}

inline ScanResult scan(std::int64_t d_min, std::int64_t d_max, const Config& cfg = {}) {
    if (d_min > d_max) throw DomainError("scan: empty interval");
    const auto ds = squarefree_range(d_min, d_max);
    ScanResult res;
    res.fields.resize(ds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < ds.size();) res.fields[i] = verify_field(ds[i], cfg);
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(ds.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& f : res.fields) {
        for (const auto& [name, v] : f.checks) {
            auto& c = res.counts[name];
            if (v == Verdict::pass) ++c.pass;
            else if (v == Verdict::fail) ++c.fail;
            else ++c.inconclusive;
        }
    }
    return res;
}

// ---- serialization -------------------------------------------------------

using json = nlohmann::ordered_json;

inline json to_json(const FieldReport& f) {
    json j;
    j["d"] = f.d;
    j["disc"] = to_i64(f.disc);
    j["r"] = f.r;
    j["s"] = f.s;
    j["n"] = f.n;
    j["h"] = f.h;
    j["h_plus"] = f.h_plus;
    j["u"] = f.u;
    j["rho"] = f.rho;
    j["rho_plus"] = f.rho_plus;
    j["rho4"] = f.rho4;
    j["rho4_plus"] = f.rho4_plus;
    j["selmer_dims"] = {{"sel", f.sel}, {"sel_plus", f.sel_plus}, {"sel4", f.sel4}, {"sel4_plus", f.sel4_plus}};
    j["unit_dims"] = {{"e_plus", f.e_plus}, {"e4", f.e4}, {"e4_plus", f.e4_plus}};
    j["clp_rank"] = f.clp_rank;
    j["genus_rank"] = f.genus;
    j["rho_plus_via_selmer"] = f.rho_plus_via_selmer;
    json hk = json::object();
    for (const char* k : {"m", "e", "p", "q", "q0"}) {
        auto it = f.hecke.find(k);
        if (it != f.hecke.end()) hk[k] = it->second;
    }
    j["hecke_aliases"] = hk;
    j["fundamental_unit"] = f.fundamental_unit ? json(f.fundamental_unit->to_string()) : json(nullptr);
    j["class_group"] = f.class_group;
    j["narrow_class_group"] = f.narrow_class_group;
    json tt = json::array();
    for (const auto& q : f.two_torsion_basis) tt.push_back(q.to_string());
    j["two_torsion_basis"] = tt;
    json sb = json::object();
    for (const auto& [name, entries] : f.selmer_bases) {
        json arr = json::array();
        for (const auto& e : entries) arr.push_back({{"element", e.element.to_string()}, {"conductor", to_string(e.conductor)}});
        sb[name] = arr;
    }
    j["selmer_bases"] = sb;
    json pj = json::object();
    for (const auto& [name, p] : f.pairings) {
        json rows = json::array(), mat = json::array();
        for (const auto& q : p.rows) rows.push_back(q.to_string());
        for (std::size_t i = 0; i < p.matrix.rows(); ++i) {
            json row = json::array();
            for (std::size_t c = 0; c < p.matrix.cols(); ++c) row.push_back(p.matrix.get(i, c) ? -1 : 1);
            mat.push_back(row);
        }
        pj[name] = {{"verdict", to_string(p.verdict)},
                    {"achieved_rank", p.achieved_rank},
                    {"expected_rank", p.expected_rank},
                    {"row_ideals", rows},
                    {"symbols", mat}};
    }
    j["pairings"] = pj;
    j["supplementary"] = {{"verified", f.supp_verified}, {"refuted", f.supp_refuted}, {"inconclusive", f.supp_inconclusive}};
    j["reciprocity"] = {{"pairs", f.reciprocity.pairs}, {"mismatches", f.reciprocity.mismatches},
                        {"seed", f.reciprocity.seed}};
    j["lagarias"] = f.lagarias;
    j["lagarias_uniform"] = f.lagarias.empty() ? false : f.lagarias_uniform();
    json ch = json::object();
    for (const auto& [name, v] : f.checks) ch[name] = to_string(v);
    j["checks"] = ch;
    j["all_checks_pass"] = f.all_pass();
    j["notes"] = f.notes;
    return j;
}

inline json to_json(const ScanResult& s) {
    json arr = json::array();
    for (const auto& f : s.fields) arr.push_back(to_json(f));
    return arr;
}

inline json summary_json(const ScanResult& s) {
    json j = json::object();
    j["fields"] = s.fields.size();
    json c = json::object();
    for (const auto& [name, k] : s.counts) c[name] = {{"pass", k.pass}, {"fail", k.fail}, {"inconclusive", k.inconclusive}};
    j["checks"] = c;
    return j;
}

inline std::string csv_header() { return "d,disc,r,s,h,h_plus,rho,rho_plus,rho4,rho4_plus,sel,sel_plus,sel4,sel4_plus,lagarias_uniform,all_checks_pass"; }

inline std::string csv_row(const FieldReport& f) {
    std::ostringstream o;
    o << f.d << ',' << f.disc.get_str() << ',' << f.r << ',' << f.s << ',' << f.h << ',' << f.h_plus << ',' << f.rho << ','
      << f.rho_plus << ',' << f.rho4 << ',' << f.rho4_plus << ',' << f.sel << ',' << f.sel_plus << ',' << f.sel4 << ','
      << f.sel4_plus << ',' << (f.lagarias_uniform() ? 1 : 0) << ',' << (f.all_pass() ? 1 : 0);
    return o.str();
}

/// Plain-text rendering: the two dimension tables, then the verdicts.
inline std::string to_text(const FieldReport& f) {
    std::ostringstream o;
    o << "Q(sqrt(" << f.d << "))  disc " << f.disc.get_str() << "  r=" << f.r << " s=" << f.s << "  h=" << f.h
      << " h+=" << f.h_plus << " u=" << f.u << "\n";
    if (f.fundamental_unit) o << "  eps = " << f.fundamental_unit->to_string() << "\n";
    auto row = [&](const char* name, int got, const std::string& formula, int want) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %-8s %3d   %-10s = %d\n", name, got, formula.c_str(), want);
        o << buf;
    };
    o << "  group   dim   formula\n";
    row("Sel", f.sel, "rho+r+s", f.rho + f.r + f.s);
    row("Sel+", f.sel_plus, "rho++s", f.rho_plus + f.s);
    row("Sel4", f.sel4, "rho+", f.rho_plus);
    row("Sel4+", f.sel4_plus, "rho", f.rho);
    o << "  ray     rank  formula\n";
    row("Cl{4}", f.rho4, "rho++s", f.rho_plus + f.s);
    row("Cl+{4}", f.rho4_plus, "rho+r+s", f.rho + f.r + f.s);
    for (const auto& [name, entries] : f.selmer_bases) {
        o << "  " << name << " = <";
        for (std::size_t i = 0; i < entries.size(); ++i)
            o << (i ? ", " : "") << entries[i].element.to_string() << ":" << to_string(entries[i].conductor);
        o << ">\n";
    }
    for (const auto& [name, v] : f.checks) o << "  " << name << ": " << to_string(v) << "\n";
    for (const auto& n : f.notes) o << "  note: " << n << "\n";
    return o.str();
}

}  // namespace quadsel
