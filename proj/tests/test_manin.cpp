#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekq/manin.hpp"

using namespace ekq;

TEST_CASE("abelian double") {
    auto d = build_double(LieBialgebra::abelian(1));
    CHECK(d.dim() == 2);
    CHECK(d.g.c.is_zero());
    CHECK(d.pairing[0][1] == Rational(1));
    CHECK(d.pairing[1][0] == Rational(1));
    CHECK(d.pairing[0][0].is_zero());
}

TEST_CASE("ax+b double mixed brackets") {
    auto d = build_double(catalog().get("axb"));
    auto br = [&](int i, int j) { return d.g.bracket(i, j); };
    // indices: a1=0 a2=1 b1=2 b2=3
    CHECK(br(0, 2).is_zero());
    CHECK(br(0, 3) == Lin<int>(3, -1));
    CHECK(br(1, 2) == Lin<int>(1, 1));
    CHECK(br(1, 3) == Lin<int>(0, -1) + Lin<int>(2, 1));
    CHECK(br(2, 3) == Lin<int>(3, 1));
    CHECK(jacobi_violations(d.g.c).empty());
}

TEST_CASE("double invariants on the catalog") {
    for (const auto& [name, g] : catalog().bialgebras) {
        INFO(name);
        auto d = build_double(g);
        for (const auto& c : verify_double(d)) {
            INFO(c.name);
            CHECK(c.ok);
        }
        // delta_g(x) = [x (x) 1 + 1 (x) x, r], expanded independently
        for (int x = 0; x < d.dim(); ++x) {
            Tensor2 dr;
            for (int i = 0; i < d.n; ++i)
                for (int k = 0; k < d.dim(); ++k) {
                    dr.add({k, d.b(i)}, d.g.c(x, d.a(i), k));
                    dr.add({d.a(i), k}, d.g.c(x, d.b(i), k));
                }
            CHECK(dr == d.cobracket(x));
        }
        Pbw U(d.g);
        CHECK(check_cybe(d.r, U).is_zero());
    }
}

TEST_CASE("canonical r") {
    auto d = build_double(LieBialgebra::abelian(2));
    Tensor2 r;
    r.add({0, 2}, 1);
    r.add({1, 3}, 1);
    CHECK(canonical_r(d) == r);
    // (1 (x) <., x>) r = x for x in a
    auto dd = build_double(catalog().get("axb"));
    for (int x = 0; x < 2; ++x) {
        Lin<int> img;
        for (const auto& [ij, c] : dd.r) img.add(ij.first, c * dd.pairing[ij.second][x]);
        CHECK(img == Lin<int>(x, 1));
    }
}

TEST_CASE("CYBE residuals") {
    auto d = build_double(LieBialgebra::abelian(2));
    Pbw U(d.g);
    Tensor2 r;
    r.add({0, 3}, 5);
    r.add({2, 1}, 1);
    CHECK(check_cybe(r, U).is_zero());

    LieAlgebra sl2 = catalog().get("sl2_std").lie();  // H=0 E=1 F=2
    Pbw V(sl2);
    Tensor2 eh;
    eh.add({1, 0}, 1);
    EnvTensor expect;
    expect.add({Word{1}, Word{1}, Word{0}}, 2);
    // only [r12,r23] = E (x) [H,E] (x) H survives
    CHECK(check_cybe(eh, V) == expect);
}

TEST_CASE("double of the dual is the swapped double") {
    for (const auto& [name, g] : catalog().bialgebras) {
        INFO(name);
        auto d = build_double(g);
        auto dd = build_double(dualize(g));
        int n = d.n;
        auto swap = [n](int x) { return x < n ? x + n : x - n; };
        for (int i = 0; i < 2 * n; ++i)
            for (int j = 0; j < 2 * n; ++j) {
                for (int k = 0; k < 2 * n; ++k) CHECK(dd.g.c(swap(i), swap(j), swap(k)) == d.g.c(i, j, k));
                CHECK(dd.pairing[swap(i)][swap(j)] == d.pairing[i][j]);
            }
    }
}
