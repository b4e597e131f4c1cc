#pragma once

#include <cstddef>
#include <vector>

#include "aabeta/bigint.hpp"
#include "aabeta/errors.hpp"

namespace aabeta {

/// Row-major integer basis. Everything here is exact; the dimensions in
/// play are tiny (3x3 message lattices), so rationals cost nothing.
struct LatticeBasis {
    std::vector<std::vector<BigInt>> rows;

    std::size_t dim() const { return rows.size(); }
};

inline BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline BigInt norm_sq(const std::vector<BigInt>& a) { return dot(a, a); }

namespace detail {

inline void check_square(const LatticeBasis& b) {
    if (b.rows.empty())
        throw size_error("lattice: empty basis");
    for (const auto& row : b.rows)
        if (row.size() != b.rows.size())
            throw size_error("lattice: basis must be square");
}

inline Rational rational_dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

} // namespace detail

/// Nearest integer, ties away from halfway chosen as +1/2 rounds up.
inline BigInt round_nearest(const Rational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x); // > 0
    return floor_div(2 * num + den, 2 * den);
}

/// Exact Gram-Schmidt data: mu is lower-triangular, bstar_sq the squared
/// lengths of the orthogonalized rows.
struct Gso {
    std::vector<std::vector<Rational>> mu;
    std::vector<Rational> bstar_sq;
};

inline Gso compute_gso(const std::vector<std::vector<BigInt>>& rows) {
    const std::size_t d = rows.size();
    std::vector<std::vector<Rational>> bstar(d, std::vector<Rational>(d));
    Gso g;
    g.mu.assign(d, std::vector<Rational>(d, Rational(0)));
    g.bstar_sq.assign(d, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t c = 0; c < d; ++c)
            bstar[i][c] = Rational(rows[i][c]);
        for (std::size_t j = 0; j < i; ++j) {
            Rational proj = 0;
            for (std::size_t c = 0; c < d; ++c)
                proj += Rational(rows[i][c]) * bstar[j][c];
            g.mu[i][j] = proj / g.bstar_sq[j];
            for (std::size_t c = 0; c < d; ++c)
                bstar[i][c] -= g.mu[i][j] * bstar[j][c];
        }
        g.bstar_sq[i] = detail::rational_dot(bstar[i], bstar[i]);
        if (g.bstar_sq[i] == 0)
            throw size_error("lattice: dependent rows");
    }
    return g;
}

inline bool is_size_reduced(const Gso& g) {
    for (std::size_t i = 0; i < g.mu.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (2 * boost::multiprecision::abs(g.mu[i][j]) > 1)
                return false;
    return true;
}

inline bool lovasz_holds(const Gso& g, const Rational& delta) {
    for (std::size_t k = 1; k < g.bstar_sq.size(); ++k) {
        Rational lhs = delta * g.bstar_sq[k - 1];
        Rational rhs = g.bstar_sq[k] + g.mu[k][k - 1] * g.mu[k][k - 1] * g.bstar_sq[k - 1];
        if (lhs > rhs)
            return false;
    }
    return true;
}

/// Fraction-free (Bareiss) determinant with partial pivoting.
inline BigInt basis_determinant(const LatticeBasis& basis) {
    detail::check_square(basis);
    auto m = basis.rows;
    const std::size_t d = m.size();
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < d && m[piv][k] == 0)
                ++piv;
            if (piv == d)
                return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < d; ++i)
            for (std::size_t j = k + 1; j < d; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[d - 1][d - 1];
}

/// Textbook LLL over exact rationals. Termination holds for any
/// 0.25 < delta <= 1 on integer input: every swap strictly shrinks the
/// integral Gram-determinant potential.
inline LatticeBasis lll_reduce(const LatticeBasis& in, const Rational& delta) {
    if (4 * delta <= 1 || delta > 1)
        throw size_error("lll_reduce: delta must be in (0.25, 1]");
    detail::check_square(in);
    auto rows = in.rows;
    const std::size_t d = rows.size();
    Gso g = compute_gso(rows); // rejects dependent rows up front
    std::size_t k = 1;
    while (k < d) {
        for (std::size_t j = k; j-- > 0;) {
            BigInt r = round_nearest(g.mu[k][j]);
            if (r != 0) {
                for (std::size_t c = 0; c < d; ++c)
                    rows[k][c] -= r * rows[j][c];
                for (std::size_t t = 0; t < j; ++t)
                    g.mu[k][t] -= Rational(r) * g.mu[j][t];
                g.mu[k][j] -= r;
            }
        }
        const Rational mu2 = g.mu[k][k - 1] * g.mu[k][k - 1];
        if (g.bstar_sq[k] >= (delta - mu2) * g.bstar_sq[k - 1]) {
            ++k;
        } else {
            std::swap(rows[k], rows[k - 1]);
            g = compute_gso(rows);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return {rows};
}

inline LatticeBasis lll_reduce(const LatticeBasis& in, double delta = 0.99) {
    return lll_reduce(in, Rational(delta));
}

/// ||b1||^(2d) <= 2^(d(d-1)/2) * det^2 — the LLL first-vector guarantee at
/// delta = 3/4, checked without leaving the integers.
inline bool first_vector_bound_holds(const LatticeBasis& basis) {
    detail::check_square(basis);
    const std::size_t d = basis.dim();
    const BigInt det = basis_determinant(basis);
    if (det == 0)
        throw size_error("lattice: dependent rows");
    BigInt lhs = 1;
    const BigInt n1 = norm_sq(basis.rows[0]);
    for (std::size_t i = 0; i < d; ++i)
        lhs *= n1;
    return lhs <= pow2(static_cast<unsigned>(d * (d - 1) / 2)) * det * det;
}

} // namespace aabeta
