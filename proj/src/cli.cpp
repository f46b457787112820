#include "rcf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;

namespace rcf {

namespace {

std::string field_name(const MultiquadField& K) {
    std::string s = "Q(";
    for (std::size_t i = 0; i < K.radicals.size(); ++i) {
        if (i) s += ", ";
        s += "sqrt " + std::to_string(K.radicals[i]);
    }
    return s + ")";
}

std::string quad_unit_str(const MultiquadField& K, const FundamentalUnit& u) {
    return K.describe(K.lift_quadratic(u.d, u.a, u.b, u.q));
}

std::string norm_reason(const MultiquadField& K, const UnitSystem& U) {
    if (K.m == 1) {
        i64 d = K.radicals[0];
        if (U.norm_minus_one == Tri::yes) return "fundamental unit has norm -1";
        if (d % 4 == 3) return "d = 3 mod 4 forces norm +1";
        for (auto [q, e] : factorize((u64)d).factors)
            if (q % 4 == 3)
                return "prime factor " + std::to_string(q) + " = 3 mod 4 forces norm +1";
        return "continued fraction period is even";
    }
    if (U.norm_minus_one == Tri::yes) {
        for (int n : U.generator_norms)
            if (n == -1) return "unit system contains a generator of norm -1";
        return "square class descent certifies a norm -1 unit";
    }
    if (U.norm_minus_one == Tri::no) {
        for (i64 r : K.subfield_radicals)
            if (fundamental_unit(RealQuadraticField(r)).norm == 1)
                return "subfield Q(sqrt " + std::to_string(r) + ") has a norm +1 fundamental unit";
        if (K.m == 2) return "no signed product of the subfield units is a square";
        return "all candidate units have norm +1 and the class number is odd";
    }
    return "candidate search found no norm -1 unit and cannot rule one out";
}

const char* tri_str(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        default: return "unknown";
    }
}

void require_format(const std::string& fmt, std::initializer_list<const char*> allowed) {
    if (fmt.empty()) return;
    for (const char* a : allowed)
        if (fmt == a) return;
    throw input_error("unknown format '" + fmt + "'");
}

} // namespace

MultiquadField parse_field(const std::string& spec) {
    if (spec.empty()) throw input_error("field spec is empty; expected comma-separated radicals");
    std::vector<i64> gens;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t a = tok.find_first_not_of(" \t");
        std::size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos)
            throw input_error("field spec has an empty entry: '" + spec + "'");
        tok = tok.substr(a, b - a + 1);
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(tok, &used);
        } catch (const std::exception&) {
            throw input_error("field spec entry '" + tok + "' is not an integer");
        }
        if (used != tok.size())
            throw input_error("field spec entry '" + tok + "' is not an integer");
        if (v < 2) throw input_error("field spec entry '" + tok + "' must exceed 1");
        gens.push_back(squarefree_part(v));
    }
    return MultiquadField(gens);
}

void cmd_field_report(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg.format, {"text", "json"});
    MultiquadField K = parse_field(cfg.field);
    UnitSystem U = unit_system(K);
    KurodaClassNumber h = kuroda_class_number(K, U);
    std::string reason = norm_reason(K, U);

    struct Sub {
        i64 d;
        FundamentalUnit u;
        long h;
    };
    std::vector<Sub> subs;
    for (i64 r : K.subfield_radicals) {
        RealQuadraticField F(r);
        subs.push_back({r, fundamental_unit(F), class_number(F)});
    }

    if (cfg.format == "json") {
        json doc;
        doc["field"] = K.radicals;
        doc["degree"] = K.n;
        doc["subfields"] = json::array();
        for (const Sub& s : subs)
            doc["subfields"].push_back({{"d", s.d},
                                        {"unit", quad_unit_str(K, s.u)},
                                        {"norm", s.u.norm},
                                        {"h", s.h}});
        json gens = json::array();
        for (std::size_t i = 0; i < U.generators.size(); ++i)
            gens.push_back({{"value", K.describe(U.generators[i])}, {"norm", U.generator_norms[i]}});
        doc["unit_system"] = {{"generators", gens},
                              {"index_over_subfield_units", U.index_over_subfield_units.get_str()},
                              {"candidate_based", U.candidate_based}};
        doc["totally_negative_unit"] = tri_str(U.norm_minus_one);
        doc["reason"] = reason;
        doc["class_number"] = h.value;
        doc["class_number_candidate_based"] = h.candidate_based;
        doc["criterion_supported"] = U.norm_minus_one == Tri::yes;
        out << doc.dump(2) << "\n";
        return;
    }

    out << "field: " << field_name(K) << "\n";
    out << "degree: " << K.n << "\n";
    out << "quadratic subfields:\n";
    for (const Sub& s : subs)
        out << "  d = " << s.d << ": fundamental unit " << quad_unit_str(K, s.u) << ", norm "
            << (s.u.norm > 0 ? "+1" : "-1") << ", h = " << s.h << "\n";
    out << "unit system:\n";
    for (std::size_t i = 0; i < U.generators.size(); ++i)
        out << "  g" << i + 1 << " = " << K.describe(U.generators[i]) << ", norm "
            << (U.generator_norms[i] > 0 ? "+1" : "-1") << "\n";
    out << "index over subfield units: " << U.index_over_subfield_units.get_str() << "\n";
    if (U.candidate_based) out << "  note: generator search is candidate based\n";
    out << "totally negative unit: " << tri_str(U.norm_minus_one) << " (" << reason << ")\n";
    out << "class number: " << h.value << (h.candidate_based ? " (candidate based)" : "") << "\n";
    out << "criterion support: " << (U.norm_minus_one == Tri::yes ? "yes" : "no") << "\n";
}

void cmd_check(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg.format, {"text", "json"});
    MultiquadField K = parse_field(cfg.field);
    UnitSystem U = unit_system(K);
    u64 p = cfg.prime;
    if (!is_prime(p)) throw input_error("check: " + std::to_string(p) + " is not prime");
    if (p == 2) throw input_error("check: the criterion is about odd primes");
    if (U.norm_minus_one == Tri::unknown)
        throw undecided_error("check: totally negative unit status undecided");

    bool ramified = false;
    for (i64 r : K.radicals)
        if (r % (i64)p == 0) ramified = true;
    bool split = !ramified && K.splits_completely(p);

    std::string status = ramified ? "ramified"
                         : split  ? "completely split"
                                  : "not completely split";
    std::string reason;
    bool verdict = false;
    std::vector<OddPartReport> parts;
    if (U.norm_minus_one == Tri::no) {
        reason = "no totally negative unit";
    } else if (ramified) {
        reason = "ramified";
    } else if (p % 4 == 1) {
        reason = "p = 1 mod 4";
    } else if (!split) {
        reason = "not completely split";
    } else {
        CriterionReport rep = ray_class_equals(K, U, p, cfg.seed);
        verdict = rep.verdict;
        parts = rep.odd_parts;
    }

    if (cfg.format == "json") {
        json doc;
        doc["field"] = K.radicals;
        doc["p"] = p;
        doc["p_mod_4"] = p % 4;
        doc["status"] = status;
        doc["verdict"] = verdict;
        if (!reason.empty()) doc["reason"] = reason;
        json jp = json::array();
        for (const auto& pt : parts)
            jp.push_back(
                {{"l", pt.l}, {"rank", pt.rank}, {"required", pt.required}, {"pass", pt.pass}});
        doc["odd_parts"] = jp;
        out << doc.dump(2) << "\n";
        return;
    }

    out << "p: " << p << "\n";
    out << "field: " << field_name(K) << "\n";
    out << "status: " << status << "\n";
    out << "p mod 4: " << p % 4 << "\n";
    for (const auto& pt : parts)
        out << "odd part l = " << pt.l << ": rank " << pt.rank << " of " << pt.required << " -> "
            << (pt.pass ? "pass" : "fail") << "\n";
    out << "verdict: " << (verdict ? "true" : "false") << "\n";
    if (!reason.empty()) out << "reason: " << reason << "\n";
}

void cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    require_format(cfg.format, {"csv", "json"});
    MultiquadField K = parse_field(cfg.field);
    UnitSystem U = unit_system(K);

    auto join_u = [](const std::vector<u64>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ';';
            s += std::to_string(v[i]);
        }
        return s;
    };
    auto join_i = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ';';
            s += std::to_string(v[i]);
        }
        return s;
    };

    if (cfg.format == "json") {
        json rows = json::array();
        EmpiricalDensity e =
            scan_primes(K, U, cfg.num_primes, cfg.workers, cfg.seed,
                        [&](const ScanRow& r) {
                            rows.push_back({{"p", r.p},
                                            {"split", r.split},
                                            {"p_mod_4", r.p_mod_4},
                                            {"odd_ls", r.odd_ls},
                                            {"ranks", r.ranks},
                                            {"verdict", r.verdict}});
                        },
                        &diag);
        json doc;
        doc["field"] = K.radicals;
        doc["rows"] = std::move(rows);
        doc["summary"] = {{"hits", e.hits},
                          {"total", e.total},
                          {"ratio", e.ratio.get_str()},
                          {"ratio_decimal", decimal_string(e.ratio, 8)}};
        out << doc.dump(2) << "\n";
        return;
    }

    out << "p,split,p_mod4,odd_ls,ranks,verdict\n";
    EmpiricalDensity e = scan_primes(K, U, cfg.num_primes, cfg.workers, cfg.seed,
                                     [&](const ScanRow& r) {
                                         out << r.p << ',' << (r.split ? 1 : 0) << ','
                                             << r.p_mod_4 << ',' << join_u(r.odd_ls) << ','
                                             << join_i(r.ranks) << ',' << (r.verdict ? 1 : 0)
                                             << '\n';
                                     },
                                     &diag);
    out << "# summary hits=" << e.hits << " total=" << e.total
        << " ratio=" << decimal_string(e.ratio, 8) << "\n";
}

void cmd_density(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg.format, {"text", "json"});
    MultiquadField K = parse_field(cfg.field);
    UnitSystem U = unit_system(K);
    DensityEstimate est = conjectural_density(K, U, cfg.cutoff);
    bool zero = est.truncated == 0;

    if (cfg.format == "json") {
        json doc;
        doc["field"] = K.radicals;
        doc["cutoff"] = est.cutoff;
        doc["truncated"] = zero ? "0" : decimal_string(est.truncated, 30);
        doc["tail_lower_factor"] = est.tail_lower_factor;
        doc["lower"] = est.lower;
        doc["upper"] = est.upper;
        out << doc.dump(2) << "\n";
        return;
    }

    out << "field: " << field_name(K) << "\n";
    out << "cutoff: " << est.cutoff << "\n";
    if (zero) {
        out << "density: 0 (no totally negative unit)\n";
        return;
    }
    out << std::setprecision(17);
    out << "truncated product: " << decimal_string(est.truncated, 18) << "\n";
    out << "tail lower factor: " << est.tail_lower_factor << "\n";
    out << "interval: [" << est.lower << ", " << est.upper << "]\n";
}

void cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    MultiquadField K = parse_field(cfg.field);
    UnitSystem U = unit_system(K);
    if (cfg.bound > 200000)
        throw resource_error("verify: bound " + std::to_string(cfg.bound) +
                             " exceeds the enumeration budget (200000)");
    if (U.norm_minus_one != Tri::yes)
        throw unsupported_error("verify: the criterion needs a totally negative unit");

    PrimeTable table = sieve_primes(std::max<u64>(cfg.bound, 3));
    u64 checked = 0, mismatches = 0;
    mpz_class budget = 100'000'000;
    for (u64 p : table.primes) {
        if (p == 2 || p > cfg.bound || !K.splits_completely(p)) continue;
        mpz_class order = psi_image_order(K, U, p);
        mpz_class cells = 1;
        for (int j = 0; j < K.n; ++j) cells *= (unsigned long)(p - 1);
        if (cells <= budget)
            check_invariant(brute_force_psi_order(K, U, p) == order,
                            "verify: closure and lattice orders disagree");
        CriterionReport rep = ray_class_equals(K, U, p, cfg.seed, &table);
        mpz_class full = 2;
        for (int j = 0; j < K.n - 1; ++j) full *= (unsigned long)(p - 1);
        bool maximal = order == full;
        bool agree = maximal == rep.verdict;
        out << "p = " << p << ": image order " << order.get_str() << ", maximal "
            << (maximal ? "yes" : "no") << ", verdict " << (rep.verdict ? "true" : "false")
            << (agree ? "" : "  MISMATCH") << "\n";
        ++checked;
        if (!agree) ++mismatches;
        if (checked % 200 == 0)
            diag << "verified " << checked << " split primes so far\n";
    }
    out << "checked " << checked << " completely split primes up to " << cfg.bound << ": "
        << (mismatches == 0 ? "all agree" : std::to_string(mismatches) + " mismatches") << "\n";
    check_invariant(mismatches == 0, "verify: criterion disagrees with the unit image order");
}

int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"ray class field equality tools for totally real multiquadratic fields"};
    app.set_config("--config", "", "key=value file mirroring the flags; flags win");
    app.require_subcommand(1);

    auto* rep = app.add_subcommand("field-report",
                                   "units, class number, and criterion support for a field");
    auto* chk = app.add_subcommand("check", "criterion verdict for a single prime");
    auto* scn = app.add_subcommand("scan", "criterion verdicts over the first N primes");
    auto* den = app.add_subcommand("density", "truncated density product with a certified tail");
    auto* ver = app.add_subcommand("verify", "cross-check the criterion against unit image orders");

    for (auto* sub : {rep, chk, scn, den, ver}) {
        sub->configurable();
        sub->fallthrough();
        sub->add_option("--field", cfg.field, "comma-separated radicals, e.g. 5,13")->required();
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--seed", cfg.seed, "seed for the order-l element search");
    }
    for (auto* sub : {rep, chk, den})
        sub->add_option("--format", cfg.format, "text or json");
    scn->add_option("--format", cfg.format, "csv or json");
    chk->add_option("--prime", cfg.prime, "the prime to check")->required();
    scn->add_option("--num-primes", cfg.num_primes, "how many primes to scan")->required();
    scn->add_option("--workers", cfg.workers, "worker thread count");
    den->add_option("--cutoff", cfg.cutoff, "largest prime kept in the product")->required();
    ver->add_option("--bound", cfg.bound, "check every completely split prime up to this")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!cfg.out.empty()) {
            file.open(cfg.out, std::ios::binary);
            if (!file) throw input_error("cannot open output file: " + cfg.out);
            out = &file;
        }
        if (rep->parsed()) cmd_field_report(cfg, *out);
        else if (chk->parsed()) cmd_check(cfg, *out);
        else if (scn->parsed()) cmd_scan(cfg, *out, std::cerr);
        else if (den->parsed()) cmd_density(cfg, *out);
        else if (ver->parsed()) cmd_verify(cfg, *out, std::cerr);
        if (!cfg.out.empty() && !file.good())
            throw input_error("write failed for output file: " + cfg.out);
        return 0;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    }
}

} // namespace rcf
