#include "poly_mod_p.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>

namespace hms::detail {

namespace {

// Recorded once here: the equal-degree splitting seed. Splitting results are
// re-sorted afterwards, so this only affects internal work order, but a
// fixed value keeps every run bit-for-bit reproducible.
constexpr std::uint64_t kSplitSeed = 0x5eed0f2c7a11d00dULL;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const std::uint64_t s = a + b;  // a, b < p < 2^62: no overflow
    return s >= p ? s - p : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod_u64(a, p - 2, p); }

void trim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

bool is_one(const PPoly& a) { return a.size() == 1 && a[0] == 1; }

}  // namespace

PPoly ppoly_from_int(const IntVec& poly, std::uint64_t p) {
    PPoly out(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i)
        out[i] = mpz_fdiv_ui(poly[i].get_mpz_t(), p);
    trim(out);
    return out;
}

PPoly ppoly_mul(const PPoly& a, const PPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = addmod(out[i + j], mulmod(a[i], b[j], p), p);
    }
    trim(out);
    return out;
}

PPoly ppoly_rem(PPoly a, const PPoly& b, std::uint64_t p) {
    if (b.empty()) throw std::invalid_argument("ppoly_rem: zero divisor");
    trim(a);
    const std::uint64_t lead_inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t factor = mulmod(a.back(), lead_inv, p);
        if (factor != 0) {
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = submod(a[shift + i], mulmod(factor, b[i], p), p);
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

PPoly ppoly_gcd(PPoly a, PPoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        PPoly r = ppoly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    ppoly_make_monic(a, p);
    return a;
}

PPoly ppoly_derivative(const PPoly& a, std::uint64_t p) {
    if (a.size() <= 1) return {};
    PPoly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mulmod(a[i], i % p, p);
    trim(d);
    return d;
}

void ppoly_make_monic(PPoly& a, std::uint64_t p) {
    trim(a);
    if (a.empty() || a.back() == 1) return;
    const std::uint64_t inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
}

PPoly ppoly_powmod(const PPoly& a, const Int& e, const PPoly& m, std::uint64_t p) {
    PPoly result{1};
    PPoly base = ppoly_rem(a, m, p);
    const mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (mp_bitcnt_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) result = ppoly_rem(ppoly_mul(result, base, p), m, p);
        base = ppoly_rem(ppoly_mul(base, base, p), m, p);
    }
    return result;
}

namespace {

PPoly ppoly_div_exact(const PPoly& a, const PPoly& b, std::uint64_t p) {
    // Long division known to be exact (b | a).
    PPoly rem = a;
    trim(rem);
    PPoly quot(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, 0);
    const std::uint64_t lead_inv = invmod(b.back(), p);
    while (rem.size() >= b.size()) {
        const std::uint64_t factor = mulmod(rem.back(), lead_inv, p);
        quot[rem.size() - b.size()] = factor;
        const std::size_t shift = rem.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            rem[shift + i] = submod(rem[shift + i], mulmod(factor, b[i], p), p);
        trim(rem);
    }
    if (!rem.empty()) throw std::logic_error("ppoly_div_exact: division was not exact");
    return quot;
}

/// Splits a monic squarefree product of irreducibles all of degree d.
void equal_degree_split(const PPoly& f, unsigned d, std::uint64_t p,
                        std::mt19937_64& rng, std::vector<PPoly>& out) {
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    if (deg == d) {
        out.push_back(f);
        return;
    }

    if (d == 1 && p <= 100000) {
        // Small prime, linear factors: deterministic exhaustive root scan.
        PPoly rest = f;
        for (std::uint64_t r = 0; r < p && rest.size() > 1; ++r) {
            // Evaluate at r by Horner.
            std::uint64_t v = 0;
            for (std::size_t i = rest.size(); i-- > 0;) v = addmod(mulmod(v, r, p), rest[i], p);
            if (v == 0) {
                out.push_back(PPoly{submod(0, r, p), 1});  // x - r
                rest = ppoly_div_exact(rest, out.back(), p);
            }
        }
        if (rest.size() > 1) throw std::logic_error("equal_degree_split: leftover after root scan");
        return;
    }

    // Cantor-Zassenhaus: random a, then gcd with a^((p^d - 1) / 2) - 1
    // (odd p) or with the trace map sum a^(2^i) (p = 2).
    PPoly splitter;
    while (true) {
        PPoly a(deg, 0);
        for (auto& c : a) c = rng() % p;
        trim(a);
        if (a.empty()) continue;

        PPoly b;
        if (p == 2) {
            PPoly t = ppoly_rem(a, f, p);
            PPoly acc = t;
            for (unsigned i = 1; i < d; ++i) {
                t = ppoly_rem(ppoly_mul(t, t, p), f, p);
                for (std::size_t j = 0; j < t.size(); ++j) {
                    if (acc.size() <= j) acc.resize(j + 1, 0);
                    acc[j] = addmod(acc[j], t[j], p);
                }
                trim(acc);
            }
            b = acc;
        } else {
            Int e = pow_int(Int(static_cast<unsigned long>(p)), d);
            e = (e - 1) / 2;
            b = ppoly_powmod(a, e, f, p);
            if (b.empty())
                b = PPoly{p - 1};
            else
                b[0] = submod(b[0], 1, p);
            trim(b);
        }
        if (b.empty()) continue;
        PPoly g = ppoly_gcd(b, f, p);
        if (g.size() > 1 && g.size() < f.size()) {
            splitter = std::move(g);
            break;
        }
    }
    equal_degree_split(splitter, d, p, rng, out);
    equal_degree_split(ppoly_div_exact(f, splitter, p), d, p, rng, out);
}

/// Distinct-degree decomposition of monic squarefree g, appending all
/// irreducible factors to out.
void distinct_degree_factor(PPoly g, std::uint64_t p, std::mt19937_64& rng,
                            std::vector<PPoly>& out) {
    PPoly x{0, 1};
    PPoly h = ppoly_rem(x, g, p);  // x^(p^d) mod g, incrementally
    for (unsigned d = 1; g.size() > 1 && 2 * d <= g.size() - 1; ++d) {
        h = ppoly_powmod(h, Int(static_cast<unsigned long>(p)), g, p);
        PPoly h_minus_x = h;
        // subtract x
        if (h_minus_x.size() < 2) h_minus_x.resize(2, 0);
        h_minus_x[1] = submod(h_minus_x[1], 1, p);
        trim(h_minus_x);
        PPoly factor_d = h_minus_x.empty() ? g : ppoly_gcd(h_minus_x, g, p);
        if (factor_d.size() > 1) {
            equal_degree_split(factor_d, d, p, rng, out);
            g = ppoly_div_exact(g, factor_d, p);
            h = ppoly_rem(h, g, p);
        }
    }
    if (g.size() > 1) out.push_back(g);  // remaining irreducible block
}

/// Squarefree decomposition in characteristic p; calls sink(factor, mult)
/// for the squarefree parts.
void squarefree_decompose(const PPoly& f, std::uint64_t p, unsigned outer_mult,
                          const std::function<void(const PPoly&, unsigned)>& sink) {
    PPoly d = ppoly_derivative(f, p);
    if (d.empty()) {
        // f = g(x^p); in F_p[x], g has the same coefficients at indices i*p
        // (Frobenius fixes F_p), so recurse on g with multiplicity * p.
        PPoly g((f.size() - 1) / p + 1, 0);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = f[i * p];
        squarefree_decompose(g, p, outer_mult * static_cast<unsigned>(p), sink);
        return;
    }
    PPoly c = ppoly_gcd(f, d, p);  // product of repeated parts
    PPoly w = ppoly_div_exact(f, c, p);  // squarefree, holds each factor once

    // Peel multiplicity layers: standard characteristic-aware Yun loop.
    unsigned m = 1;
    while (!is_one(w)) {
        PPoly y = ppoly_gcd(w, c, p);
        PPoly part = ppoly_div_exact(w, y, p);  // factors of multiplicity exactly m
        if (part.size() > 1) sink(part, outer_mult * m);
        w = std::move(y);
        if (!is_one(w)) c = ppoly_div_exact(c, w, p);
        ++m;
    }
    if (!is_one(c)) {
        // Whatever remains is a p-th power: its derivative vanished.
        squarefree_decompose(c, p, outer_mult, sink);
    }
}

}  // namespace

std::vector<PFactor> factor_mod_p(const PPoly& f_in, std::uint64_t p) {
    PPoly f = f_in;
    trim(f);
    if (f.size() <= 1) throw std::invalid_argument("factor_mod_p: polynomial is constant");
    ppoly_make_monic(f, p);

    std::mt19937_64 rng(kSplitSeed);
    std::vector<PFactor> factors;
    squarefree_decompose(f, p, 1, [&](const PPoly& part, unsigned mult) {
        std::vector<PPoly> irreducibles;
        distinct_degree_factor(part, p, rng, irreducibles);
        for (auto& g : irreducibles) factors.push_back({std::move(g), mult});
    });

    std::sort(factors.begin(), factors.end(), [](const PFactor& a, const PFactor& b) {
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        return std::lexicographical_compare(a.poly.begin(), a.poly.end(), b.poly.begin(),
                                            b.poly.end());
    });
    return factors;
}

}  // namespace hms::detail
