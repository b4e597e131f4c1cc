#pragma once

#include <sstream>
#include <string>
#include <utility>

#include "aabeta/bigint.hpp"
#include "aabeta/errors.hpp"

namespace aabeta {

/// 2x2 matrix with exact rational entries, enough for the broken
/// key-exchange design and its forgery.
struct Matrix2 {
    Rational a, b; // row 1
    Rational c, d; // row 2

    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

inline Matrix2 mat_mul(const Matrix2& x, const Matrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline Rational mat_det(const Matrix2& m) {
    return m.a * m.d - m.b * m.c;
}

inline std::string mat_str(const Matrix2& m) {
    std::ostringstream os;
    os << "(" << m.a << ", " << m.b << "; " << m.c << ", " << m.d << ")";
    return os.str();
}

struct KeyExchangeTranscript {
    Matrix2 E_A, E_B, key_A, key_B;
};

/// The commuting-products exchange over a singular generator: each party
/// publishes its one-sided product and the shared key is the triple
/// product, equal on both ends by associativity.
inline KeyExchangeTranscript keyexchange_simulate(const Matrix2& G, const Matrix2& A,
                                                  const Matrix2& B) {
    if (mat_det(G) != 0)
        throw error("keyexchange: generator must be singular");
    if (mat_det(A) == 0 || mat_det(B) == 0)
        throw error("keyexchange: party secrets must be nonsingular");
    KeyExchangeTranscript t;
    t.E_A = mat_mul(A, G);
    t.E_B = mat_mul(G, B);
    t.key_A = mat_mul(A, t.E_B);
    t.key_B = mat_mul(t.E_A, B);
    return t;
}

/// Passive-adversary break of the singular-generator exchange: since G has
/// rank 1, the public E_A pins A only up to the kernel of G. Write G's
/// columns as multiples of one primitive column g, solve X*g = (matching
/// E_A column), zero the free column. Then X*G = E_A and X stands in for A.
inline Matrix2 forge_equivalent_secret(const Matrix2& E_A, const Matrix2& G) {
    if (G == Matrix2{0, 0, 0, 0})
        throw error("forgery: generator has rank 0");
    if (mat_det(G) != 0)
        throw error("forgery: generator must be singular");

    Matrix2 forged{0, 0, 0, 0};
    const bool col1_nonzero = G.a != 0 || G.c != 0;
    if (col1_nonzero) {
        // col2 = lambda * col1; E_A must satisfy the same relation
        const Rational lambda = G.a != 0 ? G.b / G.a : G.d / G.c;
        if (G.b != lambda * G.a || G.d != lambda * G.c ||
            E_A.b != lambda * E_A.a || E_A.d != lambda * E_A.c)
            throw error("forgery: E_A is not consistent with this generator");
        if (G.a != 0) {
            forged.a = E_A.a / G.a;
            forged.c = E_A.c / G.a;
        } else {
            forged.b = E_A.a / G.c;
            forged.d = E_A.c / G.c;
        }
    } else {
        // col1 of G is zero, so col1 of any X*G is zero too
        if (E_A.a != 0 || E_A.c != 0)
            throw error("forgery: E_A is not consistent with this generator");
        if (G.b != 0) {
            forged.a = E_A.b / G.b;
            forged.c = E_A.d / G.b;
        } else {
            forged.b = E_A.b / G.d;
            forged.d = E_A.d / G.d;
        }
    }
    if (mat_mul(forged, G) != E_A)
        throw error("forgery: construction failed to reproduce E_A");
    return forged;
}

/// When the public value is a1 + a2*g1 with a1 < g1, plain floor division
/// reads both addends straight off. Returns (a2, a1).
inline std::pair<BigInt, BigInt> improper_size_attack(const BigInt& e_A, const BigInt& g1) {
    if (g1 <= 0)
        throw size_error("improper_size_attack: g1 must be positive");
    return {floor_div(e_A, g1), mod_floor(e_A, g1)};
}

} // namespace aabeta
