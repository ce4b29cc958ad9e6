#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "radford/errors.hpp"

namespace rad {

using Rat = mpq_class;

struct ScalarContext;

/// Element of Q(zeta_{2p}) represented as a reduced residue mod Phi_{2p}(x).
/// An empty coefficient vector is the zero of any context.
struct Cyclotomic {
    const ScalarContext* ctx = nullptr;
    std::vector<Rat> c;  // size ctx->deg when nonzero, empty when zero

    Cyclotomic() = default;
    Cyclotomic(const ScalarContext* cx, std::vector<Rat> coeffs);

    bool is_zero() const { return c.empty(); }
    bool is_one() const;
    bool is_rational() const;  // lies in Q
    Rat rational_part() const; // constant coefficient (0 if zero)

    void normalize();  // clear to empty if all coefficients vanish

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
};

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic operator-(const Cyclotomic& a);
Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic cyc_inv(const Cyclotomic& a);
Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic cyc_pow(const Cyclotomic& a, long e);

/// Element re + th*theta of Q(zeta_{2p})[theta]/(theta^2 - c), c = (1-xi^-2)*lambda.
struct ThetaScalar {
    Cyclotomic re, th;

    ThetaScalar() = default;
    ThetaScalar(Cyclotomic r, Cyclotomic t) : re(std::move(r)), th(std::move(t)) {}
    explicit ThetaScalar(Cyclotomic r) : re(std::move(r)) {}

    bool is_zero() const { return re.is_zero() && th.is_zero(); }
    bool is_one() const { return re.is_one() && th.is_zero(); }
    const ScalarContext* context() const { return re.ctx ? re.ctx : th.ctx; }

    friend bool operator==(const ThetaScalar& a, const ThetaScalar& b) {
        return a.re == b.re && a.th == b.th;
    }
    friend bool operator!=(const ThetaScalar& a, const ThetaScalar& b) { return !(a == b); }
};

ThetaScalar operator+(const ThetaScalar& a, const ThetaScalar& b);
ThetaScalar operator-(const ThetaScalar& a, const ThetaScalar& b);
ThetaScalar operator-(const ThetaScalar& a);
ThetaScalar operator*(const ThetaScalar& a, const ThetaScalar& b);
bool theta_invertible(const ThetaScalar& a);
ThetaScalar theta_inv(const ThetaScalar& a);  // throws DivisionByZero / DivisionByZeroDivisor
ThetaScalar operator/(const ThetaScalar& a, const ThetaScalar& b);
ThetaScalar theta_pow(const ThetaScalar& a, long e);
/// The ring automorphism theta -> -theta.
ThetaScalar theta_conj(const ThetaScalar& a);

/// Immutable arithmetic context for a fixed p >= 2. Values refer to it by
/// pointer, so keep the owning shared_ptr alive while scalars exist.
struct ScalarContext {
    int p = 0;    // xi is a primitive 2p-th root of unity
    int n = 0;    // n = 2p
    int deg = 0;  // deg Phi_{2p} = phi(2p)

    std::vector<Rat> phi;                 // monic, length deg+1
    std::vector<std::vector<Rat>> xpow;   // x^(deg+k) mod phi, k = 0..deg-2

    // cached elements
    std::vector<Cyclotomic> xi_powers;    // xi^0 .. xi^{2p-1}
    Cyclotomic lambda, lambda_inv;        // (xi-1)/(xi+1) and its inverse
    Cyclotomic theta_sq, theta_sq_inv;    // c = (1-xi^-2)*lambda and 1/c

    // ---- constructors for elements ----
    Cyclotomic zero_c() const { return Cyclotomic(); }
    Cyclotomic one_c() const;
    Cyclotomic from_rat(const Rat& r) const;
    Cyclotomic from_int(long v) const { return from_rat(Rat(v)); }
    /// xi^k for any integer k (reduced mod 2p)
    Cyclotomic xi_pow(long k) const;
    /// (-1)^k as a field element
    Cyclotomic sign_pow(long k) const { return k % 2 == 0 ? one_c() : from_int(-1); }

    ThetaScalar zero() const { return ThetaScalar(); }
    ThetaScalar one() const { return ThetaScalar(one_c()); }
    ThetaScalar scalar(const Rat& r) const { return ThetaScalar(from_rat(r)); }
    ThetaScalar scalar(long v) const { return ThetaScalar(from_int(v)); }
    ThetaScalar xi(long k = 1) const { return ThetaScalar(xi_pow(k)); }
    /// theta^k for any integer k (theta^2 = c, theta^{-1} = theta/c)
    ThetaScalar theta(long k = 1) const;
    ThetaScalar lift(const Cyclotomic& a) const { return ThetaScalar(a); }
};

/// Builds the context: Phi_{2p} by iterated exact division, lambda, theta^2.
/// Rejects p < 2 (xi = -1 makes lambda's denominator vanish).
std::shared_ptr<const ScalarContext> context_init(int p);

/// Smallest k >= 1 with s^k = 1, searched up to 4p; nullopt otherwise.
std::optional<int> order_of_unity(const ThetaScalar& s);
std::optional<int> order_of_unity(const Cyclotomic& s);

// ---- canonical text rendering (JSON reports), exact round-trip ----
std::string to_string(const Rat& r);
std::string to_string(const Cyclotomic& a);   // polynomial in x
std::string to_string(const ThetaScalar& a);  // polynomial in x and t (theta)
ThetaScalar parse_scalar(const ScalarContext& ctx, const std::string& text);

} // namespace rad
