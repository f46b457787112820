#include "rcf/density.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace rcf {

LocalFactor local_factor(const MultiquadField& K, u64 l) {
    if (l == 2) throw input_error("local_factor: l = 2 has its own rule");
    if (!is_prime(l)) throw input_error("local_factor: l must be an odd prime");
    LocalFactor f;
    f.l = l;
    bool halved = l % 4 == 1 &&
                  std::find(K.subfield_radicals.begin(), K.subfield_radicals.end(), (i64)l) !=
                      K.subfield_radicals.end();
    f.degree = halved ? (int)((l - 1) / 2) : (int)(l - 1);
    f.D = 1;
    mpq_class ratio(l - 1, l);
    ratio.canonicalize();
    for (int i = 0; i + 1 < K.n; ++i) f.D *= ratio;
    f.P = 1 - (1 - f.D) / f.degree;
    check_invariant(f.P > 0 && f.P <= 1, "local_factor: P_l outside (0,1]");
    return f;
}

mpq_class p2_factor(const MultiquadField& K, const UnitSystem& units) {
    if (units.field_radicals != K.radicals)
        throw input_error("p2_factor: unit system belongs to a different field");
    switch (units.norm_minus_one) {
        case Tri::yes: return mpq_class(1, 2);
        case Tri::no: return 0;
        default: throw undecided_error("p2_factor: totally negative unit status undecided");
    }
}

DensityEstimate conjectural_density(const MultiquadField& K, const UnitSystem& units,
                                    u64 cutoff, mpfr_prec_t prec) {
    if (cutoff < 3) throw input_error("conjectural_density: cutoff must be at least 3");
    if (prec < 128) prec = 128;
    mpq_class p2 = p2_factor(K, units);

    DensityEstimate est;
    est.field_radicals = K.radicals;
    est.cutoff = cutoff;
    if (p2 == 0) {
        est.truncated = 0;
        return est;
    }

    u64 c0 = u64(1) << (K.n - 1);
    if (cutoff <= c0)
        throw input_error("conjectural_density: tail bound degenerates; raise the cutoff above " +
                          std::to_string(c0));

    PrimeTable table = sieve_primes(cutoff);
    mpq_class acc = p2 / K.n;
    for (u64 l : table.primes) {
        if (l < 3) continue;
        acc *= local_factor(K, l).P;
    }
    est.truncated = acc;

    // tail: each omitted unramified factor 1-b_l has b_l <= c0/(l(l-1)),
    // which telescopes to c0/cutoff; halved-degree primes past the cutoff
    // get their exact b_l added on top
    mpfr_t S, t, bm, om, q, tail;
    mpfr_inits2(prec, S, t, bm, om, q, tail, (mpfr_ptr) nullptr);
    mpfr_set_ui(S, c0, MPFR_RNDU);
    mpfr_div_ui(S, S, cutoff, MPFR_RNDU);
    for (i64 r : K.subfield_radicals) {
        if (r <= (i64)cutoff || r % 4 != 1 || !is_prime((u64)r)) continue;
        LocalFactor f = local_factor(K, (u64)r);
        mpq_class b = 1 - f.P;
        mpfr_set_q(t, b.get_mpq_t(), MPFR_RNDU);
        mpfr_add(S, S, t, MPFR_RNDU);
    }
    mpfr_set_ui(bm, 2 * c0, MPFR_RNDU);
    mpfr_div_ui(bm, bm, cutoff, MPFR_RNDU);
    mpfr_div_ui(bm, bm, cutoff + 1, MPFR_RNDU);
    mpfr_ui_sub(om, 1, bm, MPFR_RNDD);
    if (mpfr_sgn(om) <= 0)
        throw input_error("conjectural_density: tail bound degenerates; raise the cutoff");
    mpfr_div(q, S, om, MPFR_RNDU);
    mpfr_neg(q, q, MPFR_RNDD);
    mpfr_exp(tail, q, MPFR_RNDD);
    est.tail_lower_factor = mpfr_get_d(tail, MPFR_RNDD);

    mpfr_set_q(t, acc.get_mpq_t(), MPFR_RNDD);
    mpfr_mul(t, t, tail, MPFR_RNDD);
    est.lower = mpfr_get_d(t, MPFR_RNDD);
    mpfr_set_q(t, acc.get_mpq_t(), MPFR_RNDU);
    est.upper = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clears(S, t, bm, om, q, tail, (mpfr_ptr) nullptr);

    check_invariant(est.tail_lower_factor > 0 && est.tail_lower_factor <= 1,
                    "conjectural_density: tail factor outside (0,1]");
    check_invariant(est.lower > 0 && est.lower <= est.upper && est.upper < 1,
                    "conjectural_density: interval endpoints out of order");
    return est;
}

EmpiricalDensity scan_primes(const MultiquadField& K, const UnitSystem& units, u64 num_primes,
                             int workers, u64 seed,
                             const std::function<void(const ScanRow&)>& sink,
                             std::ostream* progress) {
    if (num_primes == 0) throw input_error("scan_primes: need at least one prime");
    if (workers < 1) throw input_error("scan_primes: worker count must be positive");
    if (units.field_radicals != K.radicals)
        throw input_error("scan_primes: unit system belongs to a different field");
    if (units.norm_minus_one == Tri::unknown)
        throw undecided_error("scan_primes: totally negative unit status undecided");
    bool shortcut = units.norm_minus_one == Tri::no;

    u64 limit = 100;
    if (num_primes > 20) {
        double n = (double)num_primes;
        limit = (u64)(n * (std::log(n) + std::log(std::log(n)))) + 100;
    }
    PrimeTable table = sieve_primes(limit);
    while (table.primes.size() < num_primes) {
        limit += limit / 4 + 100;
        table = sieve_primes(limit);
    }

    const u64 block = 1024;
    const u64 nblocks = (num_primes + block - 1) / block;
    std::vector<std::vector<ScanRow>> results(nblocks);
    std::atomic<u64> next{0};
    std::atomic<u64> done{0};
    std::mutex note;

    auto work = [&]() {
        for (;;) {
            u64 b = next.fetch_add(1);
            if (b >= nblocks) return;
            u64 lo = b * block, hi = std::min(num_primes, lo + block);
            auto& out = results[b];
            out.reserve(hi - lo);
            for (u64 i = lo; i < hi; ++i) {
                u64 p = table.primes[i];
                ScanRow row;
                row.p = p;
                row.p_mod_4 = (int)(p % 4);
                row.split = p != 2 && K.splits_completely(p);
                if (!shortcut && row.split && row.p_mod_4 == 3) {
                    CriterionReport rep = ray_class_equals(K, units, p, seed, &table);
                    for (const auto& pt : rep.odd_parts) {
                        row.odd_ls.push_back(pt.l);
                        row.ranks.push_back(pt.rank);
                    }
                    row.verdict = rep.verdict;
                }
                out.push_back(std::move(row));
            }
            u64 d = done.fetch_add(hi - lo) + (hi - lo);
            if (progress && (d / 20000 != (d - (hi - lo)) / 20000 || d == num_primes)) {
                std::lock_guard<std::mutex> g(note);
                *progress << "scanned " << d << "/" << num_primes << " primes\n";
            }
        }
    };

    int nw = (int)std::min<u64>((u64)workers, nblocks);
    if (nw <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nw; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    EmpiricalDensity e;
    e.total = num_primes;
    for (const auto& blk : results)
        for (const ScanRow& row : blk) {
            if (row.verdict) ++e.hits;
            if (sink) sink(row);
        }
    e.ratio = mpq_class((unsigned long)e.hits, (unsigned long)e.total);
    e.ratio.canonicalize();
    return e;
}

DensityEstimate empirical_density(const MultiquadField& K, const UnitSystem& units,
                                  u64 num_primes, int workers, u64 seed) {
    DensityEstimate est;
    est.field_radicals = K.radicals;
    est.empirical = scan_primes(K, units, num_primes, workers, seed);
    return est;
}

std::string decimal_string(const mpq_class& x, int digits) {
    if (digits < 1) throw input_error("decimal_string: need at least one digit");
    mpfr_t t;
    mpfr_init2(t, (mpfr_prec_t)(digits * 4 + 64));
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rf", digits, t);
    std::string out(s);
    mpfr_free_str(s);
    mpfr_clear(t);
    return out;
}

} // namespace rcf
