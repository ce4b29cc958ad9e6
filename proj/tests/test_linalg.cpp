#include <doctest.h>

#include "radford/linalg.hpp"

using namespace rad;

TEST_CASE("rank and kernel: identity and zero") {
    auto ctx = context_init(2);
    SparseMatrix id = SparseMatrix::identity(5, *ctx);
    CHECK(rank(id) == 5);
    CHECK(kernel_basis(id, *ctx).dim() == 0);
    SparseMatrix z(4, 6);
    CHECK(rank(z) == 0);
    CHECK(kernel_basis(z, *ctx).dim() == 6);
}

TEST_CASE("rank-1 outer product of size 3 has kernel dim 2") {
    auto ctx = context_init(3);
    std::vector<ThetaScalar> u = {ctx->xi(1), ctx->scalar(2), ctx->theta(1)};
    std::vector<ThetaScalar> v = {ctx->one(), ctx->xi(4), ctx->scalar(Rat("1/2"))};
    SparseMatrix m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.add(i, j, u[i] * v[j]);
    CHECK(rank(m) == 1);
    auto kb = kernel_basis(m, *ctx);
    CHECK(kb.dim() == 2);
    for (const auto& k : kb.vectors) CHECK(m.apply(k).empty());
}

TEST_CASE("kernel vectors annihilate and rank+nullity = cols") {
    auto ctx = context_init(2);
    SparseMatrix m(3, 4);
    m.add(0, 0, ctx->xi(1));
    m.add(0, 1, ctx->one());
    m.add(1, 1, ctx->theta(1));
    m.add(1, 3, ctx->scalar(3));
    m.add(2, 0, ctx->xi(3));
    m.add(2, 1, ctx->xi(2));
    auto kb = kernel_basis(m, *ctx);
    CHECK(rank(m) + kb.dim() == 4);
    for (const auto& k : kb.vectors) CHECK(m.apply(k).empty());
}

TEST_CASE("solve and inverse") {
    auto ctx = context_init(2);
    SparseMatrix a(2, 2);
    a.add(0, 0, ctx->one());
    a.add(0, 1, ctx->xi(1));
    a.add(1, 1, ctx->theta(1));
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK((a * *inv) == SparseMatrix::identity(2, *ctx));
    CHECK((*inv * a) == SparseMatrix::identity(2, *ctx));

    SparseVec b{{0, ctx->scalar(5)}, {1, ctx->xi(2)}};
    auto x = solve(a, b);
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == b);

    // inconsistent system
    SparseMatrix s(2, 1);
    s.add(0, 0, ctx->one());
    s.add(1, 0, ctx->one());
    SparseVec rhs{{0, ctx->one()}, {1, ctx->scalar(2)}};
    CHECK_FALSE(solve(s, rhs).has_value());
}

TEST_CASE("compose_on_tensor_slot basics") {
    auto ctx = context_init(2);
    // d = 2, c = the flip on V (x) V
    SparseMatrix flip(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) flip.add(j * 2 + i, i * 2 + j, ctx->one());
    SparseMatrix c1 = compose_on_tensor_slot(flip, 2, 2, 1);
    CHECK(c1 == flip);
    SparseMatrix id8 = compose_on_tensor_slot(SparseMatrix::identity(4, *ctx), 2, 3, 1);
    CHECK(id8 == SparseMatrix::identity(8, *ctx));
    // flips at distance >= 2 commute
    SparseMatrix f1 = compose_on_tensor_slot(flip, 2, 4, 1);
    SparseMatrix f3 = compose_on_tensor_slot(flip, 2, 4, 3);
    CHECK(f1 * f3 == f3 * f1);
    CHECK_THROWS_AS(compose_on_tensor_slot(flip, 2, 2, 2), UsageError);
    CHECK_THROWS_AS(compose_on_tensor_slot(flip, 2, 30, 1), CapExceeded);
}
