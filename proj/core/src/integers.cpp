#include "hms/integers.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace hms {

double log_int(const Int& value) {
    if (value <= 0) throw std::invalid_argument("log_int: value must be positive");
    // mpz_get_d_2exp splits value as d * 2^e with 0.5 <= d < 1, which stays
    // finite for operands far beyond the double range.
    signed long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

std::string to_string(const Int& value) { return value.get_str(); }

Int det_bareiss(IntMat m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("det_bareiss: matrix not square");
    if (n == 0) return 1;

    // Fraction-free Gaussian elimination: every division below is exact.
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

/// Combines rows u and v so that afterwards u has gcd(u[col], v[col]) > 0 at
/// `col` and v has 0 there. Entries right of `col` are untouched (both rows
/// are zero there by construction of the sweep).
void pivot_combine(IntVec& u, IntVec& v, std::size_t col) {
    if (v[col] == 0) return;
    if (u[col] == 0) {
        std::swap(u, v);
        return;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), u[col].get_mpz_t(),
               v[col].get_mpz_t());
    const Int qu = u[col] / g;
    const Int qv = v[col] / g;
    for (std::size_t j = 0; j <= col; ++j) {
        const Int nu = s * u[j] + t * v[j];
        const Int nv = u[j] * qv - v[j] * qu;  // kills column col in v
        u[j] = nu;
        v[j] = nv;
    }
}

}  // namespace

IntMat hnf_triangular(std::vector<IntVec> rows, std::size_t n) {
    for (const auto& row : rows)
        if (row.size() != n) throw std::invalid_argument("hnf_triangular: row length mismatch");

    IntMat basis(n);
    // Sweep pivot columns from the highest theta-degree down; rows still in
    // play have zero entries in every column already swept.
    for (std::size_t col = n; col-- > 0;) {
        std::size_t pivot = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][col] != 0) {
                if (pivot == rows.size()) {
                    pivot = i;
                } else {
                    pivot_combine(rows[pivot], rows[i], col);
                }
            }
        }
        if (pivot == rows.size()) return {};  // rank deficient
        if (rows[pivot][col] < 0)
            for (auto& e : rows[pivot]) e = -e;
        basis[col] = std::move(rows[pivot]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pivot));
    }

    // Reduce below-pivot entries into [0, pivot).
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = k; i-- > 0;) {
            const Int q = floor_div(basis[k][i], basis[i][i]);
            if (q == 0) continue;
            for (std::size_t j = 0; j <= i; ++j) basis[k][j] -= q * basis[i][j];
        }
    }
    return basis;
}

std::optional<IntVec> solve_left_integer(const IntMat& m, const IntVec& v) {
    const std::size_t n = m.size();
    if (v.size() != n) throw std::invalid_argument("solve_left_integer: size mismatch");
    const Int det = det_bareiss(m);
    if (det == 0) return std::nullopt;

    // Cramer on the transposed system m^T x^T = v^T: x_i replaces column i
    // of m^T, i.e. row i of m, by v.
    IntVec x(n);
    for (std::size_t i = 0; i < n; ++i) {
        IntMat mi = m;
        mi[i] = v;
        const Int di = det_bareiss(mi);
        if (!divides(det, di)) return std::nullopt;
        x[i] = di / det;
    }
    return x;
}

}  // namespace hms
