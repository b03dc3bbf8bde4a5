#include "poly_roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace hms::detail {

void q_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly q_from_int(const IntVec& p) {
    QPoly q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = Rat(p[i]);
    q_trim(q);
    return q;
}

QPoly q_derivative(const QPoly& p) {
    if (p.size() <= 1) return {};
    QPoly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = Rat(static_cast<long>(i)) * p[i];
    q_trim(d);
    return d;
}

QPoly q_rem(QPoly a, const QPoly& b) {
    if (b.empty()) throw std::invalid_argument("q_rem: division by zero polynomial");
    q_trim(a);
    while (a.size() >= b.size()) {
        const Rat factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
        a.pop_back();  // leading term cancels exactly
        q_trim(a);
    }
    return a;
}

QPoly q_gcd(QPoly a, QPoly b) {
    q_trim(a);
    q_trim(b);
    while (!b.empty()) {
        QPoly r = q_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        const Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

int sign_at(const QPoly& p, const Rat& x) {
    Rat acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return sgn(acc);
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain;
    chain.push_back(p);
    QPoly d = q_derivative(p);
    if (!d.empty()) chain.push_back(std::move(d));
    while (chain.back().size() > 1) {
        QPoly r = q_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;  // gcd reached (non-squarefree input)
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

namespace {

int sign_changes(const std::vector<QPoly>& chain, const Rat& x) {
    int changes = 0;
    int prev = 0;
    for (const auto& p : chain) {
        const int s = sign_at(p, x);
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

}  // namespace

int count_roots_between(const std::vector<QPoly>& chain, const Rat& a, const Rat& b) {
    return sign_changes(chain, a) - sign_changes(chain, b);
}

Rat root_bound(const IntVec& p) {
    std::size_t deg = p.size();
    while (deg > 0 && p[deg - 1] == 0) --deg;
    if (deg <= 1) return Rat(1);
    Rat max_ratio = 0;
    const Int& lead = p[deg - 1];
    for (std::size_t i = 0; i + 1 < deg; ++i) {
        Rat r = Rat(abs(p[i]), abs(lead));
        if (r > max_ratio) max_ratio = r;
    }
    return 1 + max_ratio;
}

bool is_squarefree(const IntVec& p) {
    const QPoly q = q_from_int(p);
    if (q.size() <= 1) return true;
    return q_gcd(q, q_derivative(q)).size() == 1;
}

namespace {

struct Bracket {
    Rat lo, hi;  // sign change across (lo, hi), or an exact root marker lo==hi
};

/// Shrinks a sign-change bracket to the requested width by bisection; all
/// arithmetic exact, so the bracket always contains the root.
Bracket bisect_to_width(const QPoly& p, Bracket b, const Rat& width) {
    int sign_lo = sign_at(p, b.lo);
    while (b.hi - b.lo > width) {
        const Rat mid = (b.lo + b.hi) / 2;
        const int sign_mid = sign_at(p, mid);
        if (sign_mid == 0) return {mid, mid};
        if (sign_mid == sign_lo) {
            b.lo = mid;
        } else {
            b.hi = mid;
        }
    }
    return b;
}

}  // namespace

RealRoots isolate_real_roots(const IntVec& p, double width_target) {
    const QPoly q = q_from_int(p);
    if (q.size() <= 1)
        throw std::invalid_argument("isolate_real_roots: polynomial is constant");
    const auto chain = sturm_chain(q);
    const Rat bound = root_bound(p);

    // Split (-B, B] into intervals holding exactly one root each. The left
    // endpoint -B is safely below every root (Cauchy bound is strict).
    std::vector<Bracket> isolated;
    std::vector<Bracket> work{{-bound, bound}};
    while (!work.empty()) {
        Bracket cur = work.back();
        work.pop_back();
        const int k = count_roots_between(chain, cur.lo, cur.hi);
        if (k == 0) continue;
        if (k == 1) {
            isolated.push_back(cur);
            continue;
        }
        const Rat mid = (cur.lo + cur.hi) / 2;
        work.push_back({cur.lo, mid});
        work.push_back({mid, cur.hi});
    }

    // Refine each isolating interval. A (lo, hi] interval with one root
    // either has a sign change, or the root sits exactly at hi.
    Rat width(1);
    while (width > Rat(width_target) && width > Rat(1, Int(1) << 60)) width /= 2;

    std::vector<double> roots;
    roots.reserve(isolated.size());
    for (Bracket b : isolated) {
        if (sign_at(q, b.hi) == 0) {
            roots.push_back(Rat(b.hi).get_d());
            continue;
        }
        if (sign_at(q, b.lo) == 0) {
            // lo is a root of q, but not the one this half-open bracket
            // holds; move lo right without crossing the bracket's root.
            Rat step = (b.hi - b.lo) / 4;
            while (sign_at(q, b.lo + step) == 0 ||
                   count_roots_between(chain, b.lo + step, b.hi) != 1)
                step /= 2;
            b.lo += step;
        }
        const Bracket fine = bisect_to_width(q, b, width);
        const Rat mid = (fine.lo + fine.hi) / 2;
        roots.push_back(mid.get_d());
    }
    std::sort(roots.begin(), roots.end());

    // Bracket width, plus slack for the rational -> double rounding.
    const double max_abs = roots.empty() ? 1.0 : std::max(std::abs(roots.front()), std::abs(roots.back()));
    const double error = width.get_d() + max_abs * 4e-16 + 1e-18;
    return {std::move(roots), error};
}

std::optional<IntVec> divide_exact_monic(const IntVec& dividend, const IntVec& divisor) {
    if (divisor.empty() || divisor.back() != 1)
        throw std::invalid_argument("divide_exact_monic: divisor must be monic");
    if (dividend.size() < divisor.size()) return std::nullopt;

    IntVec rem = dividend;
    IntVec quot(dividend.size() - divisor.size() + 1, Int(0));
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Int coeff = rem[k + divisor.size() - 1];
        quot[k] = coeff;
        if (coeff == 0) continue;
        for (std::size_t i = 0; i < divisor.size(); ++i) rem[k + i] -= coeff * divisor[i];
    }
    for (const auto& c : rem)
        if (c != 0) return std::nullopt;
    return quot;
}

namespace {

/// Advances a k-subset of {0, ..., n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

bool is_irreducible(const IntVec& p, const std::vector<double>& roots) {
    const std::size_t n = roots.size();
    if (p.size() != n + 1 || p.back() != 1)
        throw std::invalid_argument("is_irreducible: expected monic with all roots supplied");
    if (n <= 1) return true;

    // Candidate factors correspond to root subsets; it suffices to try sizes
    // up to n/2 (every factorization has a factor that small). Exact division
    // confirms or refutes each rounded candidate, so precision only matters
    // for not MISSING a factor, which the e-14 root error rules out at this
    // coefficient scale.
    for (std::size_t size = 1; size <= n / 2; ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        do {
            // Expand prod_i (x - roots[idx[i]]), ascending coefficients.
            std::vector<long double> cand{1.0L};
            for (std::size_t i = 0; i < size; ++i) {
                const long double r = roots[idx[i]];
                cand.push_back(0.0L);
                for (std::size_t j = cand.size(); j-- > 0;)
                    cand[j] = (j > 0 ? cand[j - 1] : 0.0L) - r * cand[j];
            }
            bool integral = true;
            IntVec g(size + 1);
            for (std::size_t i = 0; i <= size; ++i) {
                const long double rounded = std::round(cand[i]);
                if (std::fabs(cand[i] - rounded) > 0.25L) {
                    integral = false;
                    break;
                }
                g[i] = Int(static_cast<long>(rounded));
            }
            if (integral && divide_exact_monic(p, g)) return false;
        } while (next_combination(idx, n));
    }
    return true;
}

}  // namespace hms::detail
