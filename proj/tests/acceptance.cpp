// End-to-end acceptance run.  Each numbered criterion prints exactly one
// PASS/FAIL line; the process exits nonzero iff a hard criterion failed.
// Soft criteria (the candidate-based triquadratic class numbers) print a
// diagnostic breakdown on failure instead of failing the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "rcf/arith.hpp"
#include "rcf/cli.hpp"
#include "rcf/criterion.hpp"
#include "rcf/density.hpp"
#include "rcf/multiquad.hpp"
#include "rcf/quadratic.hpp"

using namespace rcf;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

void report(int idx, const char* name, bool ok, double secs, const std::string& detail,
            bool hard = true) {
    const char* tag = ok ? "PASS" : (hard ? "FAIL" : "SOFT FAIL");
    std::printf("criterion %d (%s): %s [%.1fs] %s\n", idx, name, tag, secs, detail.c_str());
    std::fflush(stdout);
    if (!ok && hard) ++failures;
}

struct SplitMix {
    u64 s;
    explicit SplitMix(u64 seed) : s(seed) {}
    u64 next() {
        s += 0x9e3779b97f4a7c15ull;
        u64 z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    u64 below(u64 n) { return next() % n; }
};

std::vector<i64> squarefree_below(i64 bound) {
    std::vector<i64> out;
    for (i64 d = 2; d < bound; ++d)
        if (is_squarefree(d)) out.push_back(d);
    return out;
}

// ---------------------------------------------------------------- criterion 1

void criterion_field_report() {
    auto t0 = clk::now();
    bool ok = true;
    std::ostringstream why;

    FundamentalUnit e5 = fundamental_unit(RealQuadraticField(5));
    FundamentalUnit e13 = fundamental_unit(RealQuadraticField(13));
    ok &= e5.a == 1 && e5.b == 1 && e5.q == 2 && e5.norm == -1;
    ok &= e13.a == 3 && e13.b == 1 && e13.q == 2 && e13.norm == -1;

    long h65 = class_number(RealQuadraticField(65));
    ok &= h65 == 2;

    MultiquadField K({5, 13});
    UnitSystem U = unit_system(K);
    KurodaClassNumber h = kuroda_class_number(K, U);
    ok &= h.value == 1;
    ok &= U.index_over_subfield_units == 2;
    ok &= U.norm_minus_one == Tri::yes;

    double secs = seconds_since(t0);
    ok &= secs < 1.0;
    why << "eps5=(1+sqrt5)/2 N=" << e5.norm << ", eps13=(3+sqrt13)/2 N=" << e13.norm
        << ", h(65)=" << h65 << ", h(K)=" << h.value << ", index=" << U.index_over_subfield_units
        << ", norm -1 unit present=" << (U.norm_minus_one == Tri::yes ? "yes" : "no");
    report(1, "field report Q(sqrt5,sqrt13)", ok, secs, why.str());
}

// ---------------------------------------------------------------- criterion 2

void criterion_empirical_density() {
    auto t_all = clk::now();
    MultiquadField K({5, 13});
    UnitSystem U = unit_system(K);

    auto t1 = clk::now();
    EmpiricalDensity one = scan_primes(K, U, 200000, 1);
    double secs1 = seconds_since(t1);

    auto t8 = clk::now();
    EmpiricalDensity eight = scan_primes(K, U, 200000, 8);
    double secs8 = seconds_since(t8);

    double ratio = eight.ratio.get_d();
    double delta = std::fabs(ratio - 0.05176);
    bool ok = delta <= 0.002;
    ok &= one.hits == eight.hits && one.total == eight.total && eight.total == 200000;
    ok &= secs1 <= 300.0 && secs8 <= 60.0;

    std::ostringstream why;
    why.precision(7);
    why << "hits=" << eight.hits << "/200000, ratio=" << std::fixed << ratio
        << ", |ratio-0.05176|=" << delta << " (gate 0.002)"
        << ", exact-reproduction target 5e-5: " << (delta <= 5e-5 ? "met" : "not met")
        << " (reported, not gated)"
        << ", 1 worker " << std::setprecision(1) << secs1 << "s, 8 workers " << secs8 << "s";
    report(2, "empirical density, first 200000 primes", ok, seconds_since(t_all), why.str());
}

// ---------------------------------------------------------------- criterion 3

void criterion_conjectural_density() {
    auto t0 = clk::now();
    MultiquadField K({5, 13});
    UnitSystem U = unit_system(K);

    DensityEstimate est = conjectural_density(K, U, 100000);
    double width = est.upper - est.lower;
    bool ok = width < 1e-3;
    ok &= est.lower >= 0.050 && est.upper <= 0.052;

    DensityEstimate part = conjectural_density(K, U, 17);
    std::string frozen = "3540811992804481/66201426390528000";
    ok &= part.truncated.get_str() == frozen;

    ok &= local_factor(K, 3).P == mpq_class(35, 54);
    ok &= local_factor(K, 5).P == mpq_class(189, 250);
    ok &= local_factor(K, 7).P == mpq_class(1931, 2058);

    std::ostringstream why;
    why.precision(10);
    why << std::fixed << "interval [" << est.lower << ", " << est.upper << "], width "
        << std::scientific << std::setprecision(2) << width
        << "; partial product through 17 = " << part.truncated.get_str()
        << (part.truncated.get_str() == frozen ? " (matches oracle)" : " (ORACLE MISMATCH)")
        << "; P3,P5,P7 exact; reference values 0.0514218 and 0.0510458 reported for comparison only";
    report(3, "conjectural density, cutoff 1e5", ok, seconds_since(t0), why.str());
}

// ---------------------------------------------------------------- criterion 4

void criterion_oracle_equivalence() {
    auto t0 = clk::now();
    PrimeTable table = sieve_primes(2100);
    bool ok = true;
    int checked = 0, bfs = 0, mismatches = 0;

    std::vector<std::vector<i64>> fields = {{5}, {5, 13}};
    for (const auto& rad : fields) {
        MultiquadField K(rad);
        UnitSystem U = unit_system(K);
        mpz_class target_base = 2;
        for (u64 p : table.primes) {
            if (p > 2000) break;
            if (p == 2 || !K.splits_completely(p)) continue;
            CriterionReport rep = ray_class_equals(K, U, p, 0, &table);
            mpz_class order = psi_image_order(K, U, p);
            mpz_class target = 2;
            for (int i = 0; i + 1 < K.n; ++i) target *= mpz_class(p - 1);
            bool maximal = order == target;
            if (maximal != rep.verdict) ++mismatches;
            try {
                mpz_class closure = brute_force_psi_order(K, U, p);
                if (closure != order) ++mismatches;
                ++bfs;
            } catch (const resource_error&) {
                // closure budget exceeded; the lattice path alone covers this p
            }
            ++checked;
        }
    }
    double secs = seconds_since(t0);
    ok &= mismatches == 0 && checked > 160 && secs < 120.0;

    std::ostringstream why;
    why << checked << " split primes <= 2000 over Q(sqrt5) and Q(sqrt5,sqrt13), "
        << mismatches << " mismatches (verdict vs image order 2(p-1)^(n-1)), "
        << bfs << " closure cross-checks";
    report(4, "rank criterion vs psi-image order", ok, secs, why.str());
}

// ---------------------------------------------------------------- criterion 5

void criterion_invariants() {
    auto t0 = clk::now();
    bool ok = true;
    std::ostringstream why;

    // Pool of fields with a totally negative unit, fixed up front.
    std::vector<std::vector<i64>> pool_specs = {{2},  {5},     {13},    {17},
                                                {29}, {5, 13}, {5, 17}, {2, 5}};
    struct PoolEntry {
        MultiquadField K;
        UnitSystem U;
    };
    std::vector<PoolEntry> pool;
    for (const auto& spec : pool_specs) {
        MultiquadField K(spec);
        UnitSystem U = unit_system(K);
        if (U.norm_minus_one != Tri::yes) {
            ok = false;
            why << "pool field lost its norm -1 unit; ";
            continue;
        }
        pool.push_back({std::move(K), std::move(U)});
    }

    PrimeTable table = sieve_primes(60000);
    SplitMix rng(0x5eedu);

    long triples = 0, rowsum_bad = 0;
    long rank_triples = 0, rank_bad = 0;
    while (triples < 10000) {
        const PoolEntry& f = pool[rng.below(pool.size())];
        u64 p = table.primes[rng.below(table.primes.size())];
        if (p < 5 || !f.K.splits_completely(p)) continue;
        SplitPrimeContext ctx = build_context(f.K, f.U, p, &table);
        for (u64 l : ctx.odd_ls) {
            if (triples >= 10000) break;
            u64 seed = rng.next();
            PhiMatrix m = phi_l_matrix(ctx, l, seed);
            for (const auto& row : m.rows) {
                u64 s = 0;
                for (u64 e : row) s = (s + e) % l;
                if (s != 0) ++rowsum_bad;
            }
            ++triples;

            // Every 50th matrix also gets the invariance checks: the rank must
            // not move under a different zeta or a shuffled embedding order.
            if (rank_triples < 200 && triples % 50 == 0) {
                int base = rank_mod(m.rows, l);
                for (u64 s2 : {seed + 1, seed ^ 0x9e37u, u64(17)}) {
                    PhiMatrix m2 = phi_l_matrix(ctx, l, s2);
                    if (rank_mod(m2.rows, l) != base) ++rank_bad;
                }
                auto shuffled = m.rows;
                for (std::size_t j = shuffled[0].size(); j > 1; --j) {
                    std::size_t k = rng.below(j);
                    for (auto& row : shuffled) std::swap(row[j - 1], row[k]);
                }
                if (rank_mod(shuffled, l) != base) ++rank_bad;
                ++rank_triples;
            }
        }
    }
    ok &= rowsum_bad == 0 && rank_bad == 0 && rank_triples == 200;

    // Kuroda integrality sweeps.  The class number formula divides by
    // 2^(m(2^(m-1)-1)); every supported field must come out a positive
    // integer (the library checks integrality internally, this exercises it).
    std::vector<i64> sf200 = squarefree_below(200);
    std::vector<i64> sf50 = squarefree_below(50);
    long kuroda_ok = 0, kuroda_skipped = 0, kuroda_bad = 0;
    auto sweep_one = [&](const std::vector<i64>& rad) {
        try {
            MultiquadField K(rad);
            UnitSystem U = unit_system(K);
            KurodaClassNumber h = kuroda_class_number(K, U);
            if (h.value >= 1)
                ++kuroda_ok;
            else
                ++kuroda_bad;
        } catch (const invariant_error&) {
            // dependent or divisible radical set, not a field of the family
            ++kuroda_skipped;
        }
    };
    for (i64 d : sf200) sweep_one({d});
    for (std::size_t i = 0; i < sf200.size(); ++i)
        for (std::size_t j = i + 1; j < sf200.size(); ++j) sweep_one({sf200[i], sf200[j]});
    for (std::size_t i = 0; i < sf50.size(); ++i)
        for (std::size_t j = i + 1; j < sf50.size(); ++j)
            for (std::size_t k = j + 1; k < sf50.size(); ++k)
                sweep_one({sf50[i], sf50[j], sf50[k]});
    ok &= kuroda_bad == 0 && kuroda_ok > 7000;

    why << triples << " random (field,p,l) matrices, " << rowsum_bad << " bad row sums; "
        << rank_triples << " rank-invariance probes (3 reseeds + column shuffle each), "
        << rank_bad << " moved; kuroda integral on " << kuroda_ok
        << " fields (m<=2 radicals<200 complete, m=3 radicals<50), " << kuroda_bad
        << " non-integral, " << kuroda_skipped << " invalid radical sets skipped";
    report(5, "invariant suite", ok, seconds_since(t0), why.str());
}

// ---------------------------------------------------------------- criterion 6

void criterion_norm_batteries() {
    auto t0 = clk::now();
    bool ok = true;

    long d3 = 0, d3_bad = 0;
    for (i64 d = 3; d < 200; ++d) {
        if (!is_squarefree(d) || d % 4 != 3) continue;
        ++d3;
        if (fundamental_unit(RealQuadraticField(d)).norm != 1) ++d3_bad;
    }

    long p1 = 0, p1_bad = 0;
    for (u64 p = 5; p < 200; p += 4) {
        if (!is_prime(p)) continue;
        ++p1;
        if (fundamental_unit(RealQuadraticField((i64)p)).norm != -1) ++p1_bad;
    }

    long pairs = 0, pairs_bad = 0;
    std::vector<u64> p1mod4;
    for (u64 p = 5; p < 100; p += 4)
        if (is_prime(p)) p1mod4.push_back(p);
    for (std::size_t i = 0; i < p1mod4.size(); ++i)
        for (std::size_t j = i + 1; j < p1mod4.size(); ++j) {
            if (legendre_symbol((i64)p1mod4[i], p1mod4[j]) != -1) continue;
            ++pairs;
            MultiquadField K({(i64)p1mod4[i], (i64)p1mod4[j]});
            UnitSystem U = unit_system(K);
            if (U.norm_minus_one != Tri::yes) ++pairs_bad;
        }

    ok &= d3_bad == 0 && p1_bad == 0 && pairs_bad == 0 && d3 > 0 && p1 > 0 && pairs > 0;

    std::ostringstream why;
    why << d3 << " fields d=3 mod 4 all norm +1 (" << d3_bad << " bad); " << p1
        << " primes p=1 mod 4 all norm -1 (" << p1_bad << " bad); " << pairs
        << " nonresidue prime pairs all have a totally negative unit (" << pairs_bad << " bad)";
    report(6, "norm sign batteries", ok, seconds_since(t0), why.str());

    // Soft companion: candidate-based triquadratic class numbers.
    auto t1 = clk::now();
    bool soft_ok = true;
    std::ostringstream soft;
    struct Expect {
        std::vector<i64> rad;
        long h;
    };
    for (const Expect& e : {Expect{{5, 13, 37}, 2}, Expect{{5, 13, 97}, 1}}) {
        MultiquadField K(e.rad);
        UnitSystem U = unit_system(K);
        KurodaClassNumber h = kuroda_class_number(K, U);
        bool good = h.value == e.h && h.candidate_based;
        soft_ok &= good;
        soft << "h(" << e.rad[0] << "," << e.rad[1] << "," << e.rad[2] << ")=" << h.value
             << " expected " << e.h << (h.candidate_based ? " (candidate based)" : " (NOT FLAGGED)")
             << (good ? "; " : " MISMATCH; ");
        if (!good) {
            soft << "analysis: index=" << U.index_over_subfield_units << ", subfield h:";
            for (i64 r : K.subfield_radicals) soft << " " << class_number(RealQuadraticField(r));
            soft << "; the unit index rests on a bounded candidate search, so a miss "
                    "here means the search bound, not the formula; ";
        }
    }
    report(6, "triquadratic class numbers (soft)", soft_ok, seconds_since(t1), soft.str(),
           /*hard=*/false);
}

// ---------------------------------------------------------------- criterion 7

void criterion_determinism() {
    auto t0 = clk::now();
    RunConfig cfg;
    cfg.field = "5,13";
    cfg.num_primes = 10000;
    cfg.format = "csv";

    cfg.workers = 1;
    std::ostringstream one, diag1;
    cmd_scan(cfg, one, diag1);

    cfg.workers = 8;
    std::ostringstream eight, diag8;
    cmd_scan(cfg, eight, diag8);

    bool ok = !one.str().empty() && one.str() == eight.str();
    std::ostringstream why;
    why << "scan N=10000, 1 vs 8 workers: " << one.str().size() << " bytes, "
        << (ok ? "byte-identical" : "DIFFER");
    report(7, "scan determinism", ok, seconds_since(t0), why.str());
}

} // namespace

int main() {
    auto t0 = clk::now();
    std::printf("acceptance run: ray class field criterion library\n");
    criterion_field_report();
    criterion_empirical_density();
    criterion_conjectural_density();
    criterion_oracle_equivalence();
    criterion_invariants();
    criterion_norm_batteries();
    criterion_determinism();
    std::printf("acceptance: %s (%d hard failure%s) in %.1fs\n", failures == 0 ? "PASS" : "FAIL",
                failures, failures == 1 ? "" : "s", seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
