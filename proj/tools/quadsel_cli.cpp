// quadsel: Selmer groups and class field invariants of quadratic fields.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "quadsel.hpp"

using namespace quadsel;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, inconclusive = 3 };

int exit_for(bool any_fail, bool any_inconclusive) {
    if (any_fail) return failed;
    if (any_inconclusive) return inconclusive;
    return ok;
}

int exit_for(const FieldReport& f) {
    bool inc = false;
    for (const auto& [k, v] : f.checks)
        if (v == Verdict::inconclusive) inc = true;
    return exit_for(f.any_fail(), inc);
}

void check_d(std::int64_t d) { make_field(d); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact 2-Selmer groups, class groups and reciprocity checks for Q(sqrt d)"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    bool as_json = false, as_csv = false;
    app.add_flag("--json", as_json, "JSON output");
    app.add_flag("--csv", as_csv, "CSV output");
    app.add_option("--bound", cfg.prime_norm_bound, "prime norm bound (default 200|disc|)")->check(CLI::PositiveNumber);
    app.add_option("--membership-bound", cfg.membership_search_bound, "search bound for ideal group membership")
        ->check(CLI::PositiveNumber);
    app.add_option("--supp-limit", cfg.supplementary_norm_limit, "supplementary law: prime ideals of norm below this");
    app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--height", cfg.fuzz_height, "coefficient height for random elements")->check(CLI::PositiveNumber);

    std::int64_t d = 0, dmin = 0, dmax = 0;
    std::string kind = "EP1";

    auto* report = app.add_subcommand("report", "full report for one field");
    report->add_option("--d", d, "squarefree d")->required();
    report->add_option("--trials", cfg.fuzz_trials, "reciprocity fuzz pairs");

    auto* scan_cmd = app.add_subcommand("scan", "verify every squarefree d in [min, max]");
    scan_cmd->add_option("--min", dmin)->required();
    scan_cmd->add_option("--max", dmax)->required();
    scan_cmd->add_option("--trials", cfg.fuzz_trials, "reciprocity fuzz pairs per field");

    auto* verify = app.add_subcommand("verify", "exit 0 iff every check passes");
    verify->add_option("--d", d, "squarefree d")->required();
    verify->add_option("--trials", cfg.fuzz_trials, "reciprocity fuzz pairs");

    auto* pairing = app.add_subcommand("pairing", "symbol matrix of one pairing");
    pairing->add_option("--d", d, "squarefree d")->required();
    pairing->add_option("--kind", kind)->check(CLI::IsMember({"EP1", "EP2", "EP3", "EP4"}));

    auto* fuzz = app.add_subcommand("fuzz-reciprocity", "random checks of quadratic reciprocity");
    fuzz->add_option("--d", d, "squarefree d")->required();
    fuzz->add_option("--trials", cfg.fuzz_trials)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        std::cerr << app.help();
        return usage;
    }
    if (as_json && as_csv) {
        std::cerr << "--json and --csv are exclusive\n" << app.help();
        return usage;
    }

    try {
        if (*report || *verify) {
            check_d(d);
            const FieldReport f = verify_field(d, cfg);
            if (as_json) std::cout << to_json(f).dump(2) << "\n";
            else if (as_csv) std::cout << csv_header() << "\n" << csv_row(f) << "\n";
            else std::cout << to_text(f);
            if (*verify) std::cout << (f.all_pass() ? "all checks pass" : "checks did not all pass") << "\n";
            return exit_for(f);
        }
        if (*scan_cmd) {
            if (dmin > dmax) throw DomainError("--min must not exceed --max");
            const ScanResult res = scan(dmin, dmax, cfg);
            if (as_json) {
                std::cout << to_json(res).dump(2) << "\n";
            } else if (as_csv) {
                std::cout << csv_header() << "\n";
                for (const auto& f : res.fields) std::cout << csv_row(f) << "\n";
            } else {
                for (const auto& f : res.fields) std::cout << csv_row(f) << "\n";
                std::cout << summary_json(res).dump(2) << "\n";
            }
            for (const auto& f : res.fields)
                if (f.any_fail()) std::cerr << "FAILED d = " << f.d << "\n" << to_json(f).dump(2) << "\n";
            return exit_for(res.any_fail(), res.any_inconclusive());
        }
        if (*pairing) {
            const FieldData fd(make_field(d), cfg.prime_norm_bound);
            PairingKind k = PairingKind::EP1;
            if (kind == "EP2") k = PairingKind::EP2;
            if (kind == "EP3") k = PairingKind::EP3;
            if (kind == "EP4") k = PairingKind::EP4;
            const PairingReport pr = pairing_matrix(fd, k);
            json j;
            j["d"] = d;
            j["kind"] = to_string(k);
            json basis = json::array();
            for (const auto& b : pr.selmer_side.basis) basis.push_back(b.to_string());
            j["selmer_side"] = {{"group", to_string(selmer_side(k))}, {"basis", basis}};
            json rows = json::array(), mat = json::array();
            for (std::size_t i = 0; i < pr.row_ideals.size(); ++i) {
                rows.push_back(pr.row_ideals[i].to_string());
                json row = json::array();
                for (std::size_t c = 0; c < pr.matrix.cols(); ++c) row.push_back(pr.matrix.get(i, c) ? -1 : 1);
                mat.push_back(row);
            }
            j["row_ideals"] = rows;
            j["symbols"] = mat;
            j["achieved_rank"] = pr.achieved_rank;
            j["expected_rank"] = pr.expected_rank;
            j["primes_tried"] = pr.primes_tried;
            j["verdict"] = to_string(pr.verdict);
            std::cout << j.dump(as_json ? 2 : -1) << "\n";
            return exit_for(pr.verdict == PairingVerdict::rank_deficit, pr.verdict == PairingVerdict::inconclusive);
        }
        if (*fuzz) {
            const QuadField F = make_field(d);
            const FuzzStats st = reciprocity_fuzz(F, cfg.fuzz_trials, cfg.fuzz_height, cfg.seed);
            json j{{"d", d}, {"pairs", st.pairs}, {"mismatches", st.mismatches}, {"draws", st.draws}, {"seed", st.seed}};
            std::cout << j.dump(as_json ? 2 : -1) << "\n";
            return exit_for(st.mismatches > 0, st.pairs < cfg.fuzz_trials);
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const InconclusiveError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return inconclusive;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return failed;
    }
    return usage;
}
