#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "rcf/density.hpp"

using namespace rcf;

namespace {

struct Fixture {
    MultiquadField K5{{5}};
    UnitSystem U5 = unit_system(K5);
    MultiquadField K513{{5, 13}};
    UnitSystem U513 = unit_system(K513);
};

Fixture& fx() {
    static Fixture f;
    return f;
}

mpq_class q(long num, long den) {
    mpq_class x(num, den);
    x.canonicalize();
    return x;
}

} // namespace

TEST_CASE("local factors for Q(sqrt 5, sqrt 13)") {
    auto& f = fx();
    struct Want {
        u64 l;
        int degree;
        long pn, pd;
    };
    for (const Want& w : std::vector<Want>{{3, 2, 35, 54},
                                           {5, 2, 189, 250},
                                           {7, 6, 1931, 2058},
                                           {11, 10, 12979, 13310},
                                           {13, 6, 12713, 13182},
                                           {17, 16, 77791, 78608}}) {
        auto lf = local_factor(f.K513, w.l);
        CAPTURE(w.l);
        CHECK(lf.degree == w.degree);
        CHECK(lf.P == q(w.pn, w.pd));
        CHECK(lf.P == 1 - (1 - lf.D) / lf.degree);
        CHECK(lf.P > 0);
        CHECK(lf.P <= 1);
    }
}

TEST_CASE("cyclotomic degree halves only when sqrt(l) lies in the field") {
    auto& f = fx();
    // 5 ramifies in Q(sqrt 65) but sqrt 5 is not in it, so the degree stays 4
    MultiquadField K65({65});
    auto lf = local_factor(K65, 5);
    CHECK(lf.degree == 4);
    CHECK(lf.P == q(19, 20));

    CHECK(local_factor(f.K5, 5).degree == 2);
    CHECK(local_factor(f.K5, 5).P == q(9, 10));
    CHECK(local_factor(f.K5, 3).P == q(5, 6));

    // 13 = 1 mod 4 and sqrt 13 is a subfield radical of Q(sqrt 5, sqrt 13)
    CHECK(local_factor(f.K513, 13).degree == 6);
    // 3 = 3 mod 4: never halves even as a radical
    MultiquadField K3({3});
    CHECK(local_factor(K3, 3).degree == 2);
}

TEST_CASE("local factor argument validation errors") {
    auto& f = fx();
    CHECK_THROWS_AS(local_factor(f.K513, 2), input_error);
    CHECK_THROWS_AS(local_factor(f.K513, 9), input_error);
    CHECK_THROWS_AS(local_factor(f.K513, 1), input_error);
}

TEST_CASE("factor at two follows the totally negative unit") {
    auto& f = fx();
    CHECK(p2_factor(f.K513, f.U513) == q(1, 2));
    CHECK(p2_factor(f.K5, f.U5) == q(1, 2));

    MultiquadField K35({3, 5});
    auto U35 = unit_system(K35);
    REQUIRE(U35.norm_minus_one == Tri::no);
    CHECK(p2_factor(K35, U35) == 0);

    UnitSystem undecided = f.U513;
    undecided.norm_minus_one = Tri::unknown;
    CHECK_THROWS_AS(p2_factor(f.K513, undecided), undecided_error);
    CHECK_THROWS_AS(p2_factor(f.K5, f.U513), input_error);
}

TEST_CASE("exact truncated product through 17") {
    auto& f = fx();
    auto est = conjectural_density(f.K513, f.U513, 17);
    mpq_class expected(mpz_class("3540811992804481"), mpz_class("66201426390528000"));
    expected.canonicalize();
    CHECK(est.truncated == expected);
    CHECK(decimal_string(est.truncated, 20) == "0.05348543356025173238");

    // swapping the thirteen factor's denominator 13182 for 13812 reproduces
    // the other circulating decimal
    mpq_class variant = est.truncated * q(13182, 13812);
    CHECK(variant.get_d() == doctest::Approx(0.0510458286411264).epsilon(1e-12));
}

TEST_CASE("certified interval at cutoff 1e5") {
    auto& f = fx();
    auto est = conjectural_density(f.K513, f.U513, 100000);
    CHECK(est.cutoff == 100000);
    CHECK(est.tail_lower_factor == doctest::Approx(0.9999200031998506).epsilon(1e-11));
    CHECK(est.lower == doctest::Approx(0.05141785353779474).epsilon(1e-9));
    CHECK(est.upper == doctest::Approx(0.051421967130622574).epsilon(1e-9));
    CHECK(est.upper - est.lower < 1e-3);
    CHECK(est.lower > 0.050);
    CHECK(est.upper < 0.052);
    CHECK(est.lower <= est.upper);
    CHECK(est.tail_lower_factor <= 1.0);
}

TEST_CASE("exact product agrees with an independent float pass") {
    auto& f = fx();
    auto est = conjectural_density(f.K513, f.U513, 1000);
    PrimeTable table = sieve_primes(1000);
    Real acc = Real::of(1L, 256);
    for (u64 l : table.primes) {
        if (l < 3) continue;
        acc = acc * Real::of(local_factor(f.K513, l).P, 256);
    }
    acc = acc * Real::of(p2_factor(f.K513, f.U513), 256) / Real::of((long)f.K513.n, 256);
    Real exact = Real::of(est.truncated, 256);
    Real diff = abs(acc - exact);
    CHECK(diff.to_double() < 1e-30);
}

TEST_CASE("interval shrinks monotonically in the cutoff") {
    auto& f = fx();
    auto a = conjectural_density(f.K513, f.U513, 100);
    auto b = conjectural_density(f.K513, f.U513, 1000);
    auto c = conjectural_density(f.K513, f.U513, 10000);
    CHECK(b.truncated <= a.truncated);
    CHECK(c.truncated <= b.truncated);
    CHECK(a.lower <= b.lower);
    CHECK(b.lower <= c.lower);
    CHECK(b.upper <= a.upper);
    CHECK(c.upper <= b.upper);
    CHECK(a.lower > 0);
}

TEST_CASE("degenerate cutoffs are rejected") {
    auto& f = fx();
    CHECK_THROWS_AS(conjectural_density(f.K513, f.U513, 2), input_error);
    CHECK_THROWS_AS(conjectural_density(f.K513, f.U513, 7), input_error); // 2^(n-1) = 8
    CHECK_NOTHROW(conjectural_density(f.K513, f.U513, 11));
    CHECK_THROWS_AS(conjectural_density(f.K5, f.U5, 2), input_error);

    MultiquadField K35({3, 5});
    auto U35 = unit_system(K35);
    auto est = conjectural_density(K35, U35, 100);
    CHECK(est.truncated == 0);
    CHECK(est.lower == 0.0);
    CHECK(est.upper == 0.0);
}

TEST_CASE("scan counts for the first primes") {
    auto& f = fx();
    auto e100 = scan_primes(f.K513, f.U513, 100);
    CHECK(e100.hits == 5);
    CHECK(e100.total == 100);
    CHECK(e100.ratio == q(1, 20));

    auto e2000 = scan_primes(f.K513, f.U513, 2000);
    CHECK(e2000.hits == 94);

    auto e1000 = scan_primes(f.K5, f.U5, 1000);
    CHECK(e1000.hits == 177);
}

TEST_CASE("scan rows carry the per-prime diagnostics") {
    auto& f = fx();
    std::vector<ScanRow> rows;
    scan_primes(f.K513, f.U513, 50, 1, 0, [&](const ScanRow& r) { rows.push_back(r); });
    REQUIRE(rows.size() == 50);
    CHECK(rows[0].p == 2);
    CHECK_FALSE(rows[0].split);
    CHECK_FALSE(rows[0].verdict);
    CHECK(rows[1].p == 3);
    CHECK(rows[1].p_mod_4 == 3);
    CHECK_FALSE(rows[1].split);

    for (const auto& r : rows) {
        if (r.p == 29) {
            CHECK(r.split);
            CHECK(r.p_mod_4 == 1);
            CHECK(r.odd_ls.empty());
            CHECK_FALSE(r.verdict);
        }
        if (r.p == 179) {
            CHECK(r.split);
            CHECK(r.p_mod_4 == 3);
            CHECK(r.odd_ls == std::vector<u64>{89});
            CHECK(r.ranks == std::vector<int>{3});
            CHECK(r.verdict);
        }
        if (r.p == 79) {
            CHECK(r.odd_ls == std::vector<u64>{3, 13});
            CHECK(r.ranks == std::vector<int>{2, 3});
            CHECK_FALSE(r.verdict);
        }
    }
}

TEST_CASE("fields without a totally negative unit scan to zero") {
    MultiquadField K3({3});
    auto U3 = unit_system(K3);
    std::vector<ScanRow> rows;
    auto e = scan_primes(K3, U3, 1000, 1, 0, [&](const ScanRow& r) { rows.push_back(r); });
    CHECK(e.hits == 0);
    CHECK(e.ratio == 0);
    bool saw_split = false;
    for (const auto& r : rows) {
        CHECK_FALSE(r.verdict);
        CHECK(r.odd_ls.empty());
        if (r.p == 11) {
            CHECK(r.split);
            saw_split = true;
        }
    }
    CHECK(saw_split);
}

TEST_CASE("scan rejects bad arguments") {
    auto& f = fx();
    CHECK_THROWS_AS(scan_primes(f.K513, f.U513, 0), input_error);
    CHECK_THROWS_AS(scan_primes(f.K513, f.U513, 10, 0), input_error);
    CHECK_THROWS_AS(scan_primes(f.K5, f.U513, 10), input_error);
    UnitSystem undecided = f.U513;
    undecided.norm_minus_one = Tri::unknown;
    CHECK_THROWS_AS(scan_primes(f.K513, undecided, 10), undecided_error);
}

TEST_CASE("worker count never changes the rows") {
    auto& f = fx();
    std::vector<ScanRow> one, eight;
    auto e1 = scan_primes(f.K513, f.U513, 10000, 1, 0, [&](const ScanRow& r) { one.push_back(r); });
    auto e8 = scan_primes(f.K513, f.U513, 10000, 8, 0, [&](const ScanRow& r) { eight.push_back(r); });
    CHECK(e1.hits == 503);
    CHECK(e8.hits == 503);
    REQUIRE(one.size() == eight.size());
    CHECK(one == eight);
}

TEST_CASE("empirical density wraps the scan") {
    auto& f = fx();
    auto est = empirical_density(f.K513, f.U513, 100);
    REQUIRE(est.empirical.has_value());
    CHECK(est.empirical->hits == 5);
    CHECK(est.empirical->total == 100);
    CHECK(est.empirical->ratio == q(1, 20));
    CHECK(est.field_radicals == std::vector<i64>{5, 13});
}

TEST_CASE("decimal rendering") {
    CHECK(decimal_string(q(1, 4), 3) == "0.250");
    CHECK(decimal_string(q(1, 3), 6) == "0.333333");
    CHECK(decimal_string(q(2, 3), 4) == "0.6667");
    CHECK(decimal_string(q(-1, 8), 4) == "-0.1250");
    CHECK_THROWS_AS(decimal_string(q(1, 3), 0), input_error);
}
