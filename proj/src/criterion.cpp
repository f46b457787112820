#include "rcf/criterion.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace rcf {

namespace {

int gray(int j) { return j ^ (j >> 1); }

u64 mpq_residue(const mpq_class& q, u64 p) {
    u64 num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
    u64 den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
    if (den == 0) throw input_error("residue denominator vanishes mod p");
    return mul_mod(num, inv_mod(den, p), p);
}

} // namespace

SplitPrimeContext build_context(const MultiquadField& K, const UnitSystem& units, u64 p,
                                const PrimeTable* table) {
    if (units.field_radicals != K.radicals)
        throw input_error("build_context: unit system belongs to a different field");
    if (p < 3 || !is_prime(p)) throw input_error("build_context: p must be an odd prime");
    if (!K.splits_completely(p))
        throw input_error("build_context: " + std::to_string(p) + " does not split completely");
    if (units.norm_minus_one != Tri::yes)
        throw unsupported_error("build_context: criterion needs a unit of norm -1");

    SplitPrimeContext ctx;
    ctx.p = p;
    ctx.p_mod_4 = (int)(p % 4);
    ctx.n = K.n;
    ctx.field_radicals = K.radicals;

    for (i64 d : K.radicals)
        ctx.radical_roots.push_back(sqrt_mod((u64)(d % (i64)p), p));

    // residues of sqrt(r_S): divide the product of the generator roots by the
    // square part g_S of the subset product
    std::vector<u64> gres(K.n);
    for (int S = 0; S < K.n; ++S) {
        mpz_class prod = 1;
        for (int i = 0; i < K.m; ++i)
            if ((S >> i) & 1) prod *= K.radicals[i];
        mpz_class g2 = prod / K.basis_rad[S];
        mpz_class g = sqrt(g2);
        check_invariant(g * g == g2, "build_context: square part of subset product broken");
        gres[S] = mpz_fdiv_ui(g.get_mpz_t(), p);
        check_invariant(gres[S] != 0, "build_context: square part divisible by a split prime");
    }

    ctx.basis_res.assign(K.n, std::vector<u64>(K.n));
    for (int j = 0; j < K.n; ++j) {
        int smask = gray(j);
        for (int S = 0; S < K.n; ++S) {
            u64 v = 1;
            for (int i = 0; i < K.m; ++i) {
                if (!((S >> i) & 1)) continue;
                u64 r = ctx.radical_roots[i];
                if ((smask >> i) & 1) r = p - r;
                v = mul_mod(v, r, p);
            }
            v = mul_mod(v, inv_mod(gres[S], p), p);
            ctx.basis_res[j][S] = v;
            check_invariant(mul_mod(v, v, p) == (u64)(K.basis_rad[S] % (i64)p),
                            "build_context: embedded basis element fails its minimal polynomial");
        }
    }

    ctx.gen_res.assign(units.generators.size(), std::vector<u64>(K.n));
    ctx.gen_norms = units.generator_norms;
    for (std::size_t i = 0; i < units.generators.size(); ++i) {
        u64 nprod = 1;
        for (int j = 0; j < K.n; ++j) {
            u64 acc = 0;
            for (int S = 0; S < K.n; ++S) {
                const mpq_class& c = units.generators[i].c[S];
                if (c == 0) continue;
                acc = (acc + mul_mod(mpq_residue(c, p), ctx.basis_res[j][S], p)) % p;
            }
            check_invariant(acc != 0, "build_context: unit residue vanished at a split prime");
            ctx.gen_res[i][j] = acc;
            nprod = mul_mod(nprod, acc, p);
        }
        u64 want = units.generator_norms[i] == 1 ? 1 : p - 1;
        check_invariant(nprod == want, "build_context: embedding product disagrees with the norm");
    }

    ctx.pm1 = factorize(p - 1, table);
    for (auto [q, e] : ctx.pm1.factors)
        if (q & 1) ctx.odd_ls.push_back(q);
    return ctx;
}

PhiMatrix phi_l_matrix(const SplitPrimeContext& ctx, u64 l, u64 seed) {
    if (l < 3 || !is_prime(l) || (ctx.p - 1) % l != 0)
        throw input_error("phi_l_matrix: l must be an odd prime dividing p-1");
    PhiMatrix M;
    M.l = l;
    M.zeta = element_of_order(l, ctx.p, seed);
    DlogTable table(M.zeta, l, ctx.p);
    u64 e = (ctx.p - 1) / l;
    M.rows.assign(ctx.gen_res.size(), std::vector<u64>(ctx.n));
    for (std::size_t i = 0; i < ctx.gen_res.size(); ++i) {
        u64 rowsum = 0;
        for (int j = 0; j < ctx.n; ++j) {
            u64 t = pow_mod(ctx.gen_res[i][j], e, ctx.p);
            M.rows[i][j] = table(t);
            rowsum = (rowsum + M.rows[i][j]) % l;
        }
        check_invariant(rowsum == 0, "phi_l_matrix: row sum must vanish mod l");
    }
    return M;
}

int rank_mod(const std::vector<std::vector<u64>>& rows, u64 l) {
    std::vector<std::vector<u64>> a = rows;
    for (auto& row : a)
        for (auto& x : row) x %= l;
    int rank = 0;
    std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && rank < (int)a.size(); ++c) {
        std::size_t piv = a.size();
        for (std::size_t i = rank; i < a.size(); ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        u64 inv = inv_mod(a[rank][c], l);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if ((int)i == rank) continue;
            u64 f = mul_mod(a[i][c], inv, l);
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] = (a[i][j] + l - mul_mod(f, a[rank][j], l)) % l;
        }
        ++rank;
    }
    return rank;
}

CriterionReport ray_class_equals(const MultiquadField& K, const UnitSystem& units, u64 p,
                                 u64 seed, const PrimeTable* table) {
    SplitPrimeContext ctx = build_context(K, units, p, table);
    CriterionReport rep;
    rep.p = p;
    rep.p_mod_4 = ctx.p_mod_4;
    if (ctx.p_mod_4 == 1) {
        rep.verdict = false; // the order-2 part already fails; no dlog work needed
        return rep;
    }
    bool all = true;
    for (u64 l : ctx.odd_ls) {
        PhiMatrix M = phi_l_matrix(ctx, l, seed);
        int r = rank_mod(M.rows, l);
        check_invariant(r <= ctx.n - 1, "ray_class_equals: rank above n-1 is impossible");
        OddPartReport part{l, r, ctx.n - 1, r == ctx.n - 1};
        if (!part.pass) all = false;
        rep.odd_parts.push_back(part);
    }
    rep.verdict = all;
    return rep;
}

mpz_class brute_force_psi_order(const MultiquadField& K, const UnitSystem& units, u64 p,
                                u64 budget) {
    SplitPrimeContext ctx = build_context(K, units, p);
    mpz_class cells = 1;
    for (int j = 0; j < ctx.n; ++j) cells *= (long)(p - 1);
    if (cells > budget)
        throw resource_error("brute_force_psi_order: (p-1)^n exceeds the closure budget");

    std::vector<std::vector<u64>> gens = ctx.gen_res;
    gens.emplace_back(ctx.n, p - 1); // the unit -1

    auto encode = [&](const std::vector<u64>& v) {
        u64 code = 0;
        for (int j = 0; j < ctx.n; ++j) code = code * (p - 1) + (v[j] - 1);
        return code;
    };

    std::vector<u64> id(ctx.n, 1);
    std::unordered_set<u64> seen;
    seen.reserve(1 << 20);
    std::vector<std::vector<u64>> queue{id};
    seen.insert(encode(id));
    while (!queue.empty()) {
        std::vector<u64> v = std::move(queue.back());
        queue.pop_back();
        for (const auto& g : gens) {
            std::vector<u64> w(ctx.n);
            for (int j = 0; j < ctx.n; ++j) w[j] = mul_mod(v[j], g[j], p);
            if (seen.insert(encode(w)).second) queue.push_back(w);
        }
    }
    return mpz_class((unsigned long)seen.size());
}

namespace {

u64 primitive_root(u64 p, const PrimeFactorization& pm1) {
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : pm1.factors)
            if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw invariant_error("primitive_root: none found below p");
}

// discrete log base g in the full group F_p^x
struct FullDlog {
    u64 p, m, giant;
    std::vector<std::pair<u64, u32>> slots;
    u64 mask;

    FullDlog(u64 g, u64 p_) : p(p_) {
        m = 1;
        while (m * m < p - 1) ++m;
        u64 cap = 16;
        while (cap < 2 * (m + 1)) cap <<= 1;
        mask = cap - 1;
        slots.assign(cap, {0, 0});
        u64 cur = 1;
        for (u64 j = 0; j < m; ++j) {
            u64 h = (cur * 0x9ddfea08eb382d69ull) & mask;
            while (slots[h].first != 0 && slots[h].first != cur + 1) h = (h + 1) & mask;
            if (slots[h].first == 0) slots[h] = {cur + 1, (u32)j};
            cur = mul_mod(cur, g, p);
        }
        giant = inv_mod(cur, p); // g^(-m)... cur = g^m after the loop
    }

    u64 operator()(u64 target) const {
        u64 cur = target % p;
        for (u64 gstep = 0; gstep * m <= p - 1; ++gstep) {
            u64 h = (cur * 0x9ddfea08eb382d69ull) & mask;
            while (slots[h].first != 0) {
                if (slots[h].first == cur + 1) return (gstep * m + slots[h].second) % (p - 1);
                h = (h + 1) & mask;
            }
            cur = mul_mod(cur, giant, p);
        }
        throw invariant_error("full dlog: target not reached");
    }
};

// determinant of the row-span lattice via integer HNF
mpz_class hnf_index(std::vector<std::vector<mpz_class>> rows, int n) {
    int r = 0;
    for (int c = 0; c < n; ++c) {
        for (;;) {
            int piv = -1;
            for (int i = r; i < (int)rows.size(); ++i)
                if (rows[i][c] != 0 && (piv < 0 || abs(rows[i][c]) < abs(rows[piv][c]))) piv = i;
            if (piv < 0) break;
            std::swap(rows[piv], rows[r]);
            if (rows[r][c] < 0)
                for (int j = 0; j < n; ++j) rows[r][j] = -rows[r][j];
            bool clean = true;
            for (int i = r + 1; i < (int)rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                mpz_class q = rows[i][c] / rows[r][c]; // truncated division is fine here
                for (int j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < (int)rows.size() && rows[r][c] != 0) ++r;
    }
    if (r < n) return 0;
    mpz_class det = 1;
    for (int i = 0; i < n; ++i) det *= rows[i][i];
    return det;
}

} // namespace

mpz_class psi_image_order(const MultiquadField& K, const UnitSystem& units, u64 p) {
    SplitPrimeContext ctx = build_context(K, units, p);
    u64 g = primitive_root(p, ctx.pm1);
    FullDlog dl(g, p);
    std::vector<std::vector<mpz_class>> rows;
    for (const auto& gen : ctx.gen_res) {
        std::vector<mpz_class> row;
        for (int j = 0; j < ctx.n; ++j) row.emplace_back((unsigned long)dl(gen[j]));
        rows.push_back(row);
    }
    rows.emplace_back(ctx.n, mpz_class((unsigned long)((p - 1) / 2))); // dlog of -1 everywhere
    for (int j = 0; j < ctx.n; ++j) {
        std::vector<mpz_class> row(ctx.n, 0);
        row[j] = (unsigned long)(p - 1);
        rows.push_back(row);
    }
    mpz_class det = hnf_index(rows, ctx.n);
    check_invariant(det > 0, "psi_image_order: lattice index degenerate");
    mpz_class total = 1;
    for (int j = 0; j < ctx.n; ++j) total *= (unsigned long)(p - 1);
    check_invariant(total % det == 0, "psi_image_order: index fails to divide the full order");
    return total / det;
}

} // namespace rcf
