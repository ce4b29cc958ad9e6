#include <doctest.h>

#include <numeric>

#include "radford/scalar.hpp"

using namespace rad;

TEST_CASE("context p=2: Phi_4 = x^2+1, lambda = xi, theta^2 = 2 xi") {
    auto ctx = context_init(2);
    CHECK(ctx->deg == 2);
    CHECK(ctx->phi.size() == 3);
    CHECK(ctx->phi[0] == 1);
    CHECK(ctx->phi[1] == 0);
    CHECK(ctx->phi[2] == 1);
    // lambda = (i-1)/(i+1) = i
    CHECK(ctx->lambda == ctx->xi_pow(1));
    // theta^2 = (1 - xi^-2) lambda = 2 xi  (xi^2 = -1)
    Cyclotomic two_xi = ctx->from_int(2) * ctx->xi_pow(1);
    CHECK(ctx->theta_sq == two_xi);
}

TEST_CASE("context rejects p < 2") {
    CHECK_THROWS_AS(context_init(1), UsageError);
    CHECK_THROWS_AS(context_init(0), UsageError);
}

TEST_CASE("xi is a primitive 2p-th root") {
    for (int p : {2, 3, 4, 5, 7}) {
        auto ctx = context_init(p);
        CHECK(cyc_pow(ctx->xi_pow(1), 2 * p).is_one());
        for (int k = 1; k < 2 * p; ++k) CHECK_FALSE(cyc_pow(ctx->xi_pow(1), k).is_one());
    }
}

TEST_CASE("inverses: xi^-1 = xi^(2p-1), theta^-1 = theta/c") {
    auto ctx = context_init(3);
    CHECK(theta_inv(ctx->xi(1)) == ctx->xi(2 * 3 - 1));
    ThetaScalar th = ctx->theta(1);
    ThetaScalar th_inv = theta_inv(th);
    CHECK((th * th_inv).is_one());
    // theta^-1 = theta / c
    CHECK(th_inv == ThetaScalar(ctx->zero_c(), ctx->theta_sq_inv));
}

TEST_CASE("p=2: (1+theta)(1-theta) = 1 - 2 xi") {
    auto ctx = context_init(2);
    ThetaScalar a(ctx->one_c(), ctx->one_c());
    ThetaScalar b(ctx->one_c(), ctx->from_int(-1));
    ThetaScalar expect(ctx->one_c() - ctx->from_int(2) * ctx->xi_pow(1), Cyclotomic());
    CHECK(a * b == expect);
}

TEST_CASE("division errors") {
    auto ctx = context_init(2);
    CHECK_THROWS_AS((void)theta_inv(ctx->zero()), DivisionByZero);
    // zero divisor: if theta^2 = c is a square s^2 in Q(zeta), then s + theta
    // is a zero divisor. At p=2 c = 2xi = (1+xi)^2, so this exists.
    Cyclotomic s = ctx->one_c() + ctx->xi_pow(1);
    REQUIRE(s * s == ctx->theta_sq);
    ThetaScalar zd(s, ctx->one_c());
    CHECK_FALSE(theta_invertible(zd));
    CHECK_THROWS_AS((void)theta_inv(zd), DivisionByZeroDivisor);
    // and it really is a zero divisor: (s + t)(s - t) = s^2 - c = 0
    CHECK((zd * ThetaScalar(s, ctx->from_int(-1))).is_zero());
}

TEST_CASE("order_of_unity") {
    for (int p : {2, 3, 5}) {
        auto ctx = context_init(p);
        CHECK(order_of_unity(ctx->xi(1)) == 2 * p);
        CHECK(order_of_unity(ctx->scalar(-1)) == 2);
        CHECK(order_of_unity(ctx->scalar(1)) == 1);
        CHECK_FALSE(order_of_unity(ctx->scalar(2)).has_value());
        for (int k = 0; k < 2 * p; ++k) {
            int expected = 2 * p / std::gcd(k, 2 * p);
            if (k == 0) expected = 1;
            CHECK(order_of_unity(ctx->xi(k)) == expected);
        }
    }
    // p=2: ord((-1) xi^-1) = 4; theta^2 = 2 xi has modulus 2, not a root of unity
    auto ctx = context_init(2);
    CHECK(order_of_unity(ctx->scalar(-1) * ctx->xi(-1)) == 4);
    CHECK_FALSE(order_of_unity(ctx->theta(1)).has_value());
    // p=3: theta^2 = xi^2 exactly, so the formal theta has order 12 there
    auto ctx3 = context_init(3);
    CHECK(ctx3->theta_sq == ctx3->xi_pow(2));
    CHECK(order_of_unity(ctx3->theta(1)) == 6);
}

TEST_CASE("rendering round-trips") {
    for (int p : {2, 3, 7}) {
        auto ctx = context_init(p);
        std::vector<ThetaScalar> samples = {
            ctx->zero(),
            ctx->one(),
            ctx->scalar(Rat("-7/3")),
            ctx->xi(1),
            ctx->xi(p + 1) * ctx->scalar(Rat("2/5")) - ctx->one(),
            ctx->theta(1),
            ctx->theta(-1),
            ctx->theta(3) * ctx->xi(2) + ctx->scalar(4),
            ThetaScalar(ctx->lambda, ctx->lambda_inv),
        };
        for (const auto& s : samples) {
            std::string txt = to_string(s);
            CHECK(parse_scalar(*ctx, txt) == s);
        }
    }
}

TEST_CASE("theta -> -theta is a ring map on samples") {
    auto ctx = context_init(3);
    ThetaScalar a(ctx->xi_pow(2), ctx->lambda);
    ThetaScalar b(ctx->lambda_inv, ctx->xi_pow(4) - ctx->one_c());
    CHECK(theta_conj(a * b) == theta_conj(a) * theta_conj(b));
    CHECK(theta_conj(a + b) == theta_conj(a) + theta_conj(b));
}
