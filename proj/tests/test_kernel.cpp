#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ekq/rational.hpp"
#include "ekq/series.hpp"
#include "ekq/tensor.hpp"

using namespace ekq;

TEST_CASE("rational normal form and parsing") {
    CHECK(Rational(6, 4).str() == "3/2");
    CHECK(Rational(-6, -4).str() == "3/2");
    CHECK(Rational(4, -2).str() == "-2");
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("x"));
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("rational arithmetic is exact") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-50, 50);
    for (int it = 0; it < 200; ++it) {
        long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
        if (b == 0 || e == 0) continue;
        Rational x(a, b), y(c, e);
        CHECK(((x + y) * Rational(b) * Rational(e) - Rational(a * e + c * b)).is_zero());
    }
}

using Poly = std::vector<Rational>;  // a tiny commutative coefficient ring: Q[c]/(c^4)

static Poly pmul(const Poly& x, const Poly& y) {
    Poly out(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; i + j < 4; ++j) out[i + j] += x[i] * y[j];
    return out;
}
static Poly padd(Poly x, const Poly& y) {
    for (int i = 0; i < 4; ++i) x[i] += y[i];
    return x;
}

struct P {
    Poly v = Poly(4);
    P& operator+=(const P& o) { v = padd(v, o.v); return *this; }
    P& operator-=(const P& o) {
        for (int i = 0; i < 4; ++i) v[i] -= o.v[i];
        return *this;
    }
    friend bool operator==(const P& a, const P& b) { return a.v == b.v; }
};
static P mulP(const P& a, const P& b) { return {pmul(a.v, b.v)}; }
static P cst(long k, int deg = 0) {
    P p;
    p.v[deg] = k;
    return p;
}

TEST_CASE("series multiplication truncates") {
    HSeries<P> x({cst(1), cst(1, 1), P{}}), y({cst(1), cst(-1, 1), P{}});
    auto z = series_mul(x, y, mulP);
    CHECK(z[0] == cst(1));
    CHECK(z[1] == P{});
    CHECK(z[2] == cst(-1, 2));
    HSeries<P> one = HSeries<P>::constant(cst(1));
    CHECK(series_mul(x, one, mulP) == x);
    CHECK_THROWS(series_mul(x, HSeries<P>(4), mulP));
}

TEST_CASE("series inverse") {
    HSeries<P> x({cst(1), cst(1, 1), P{}});
    auto y = series_inverse(x, cst(1), mulP);
    CHECK(y[1] == cst(-1, 1));
    CHECK(y[2] == cst(1, 2));
    HSeries<P> k({cst(1), P{}, P{cst(0).v}});
    k[2].v[1] = Rational(1, 24);
    auto ki = series_inverse(k, cst(1), mulP);
    CHECK(ki[2].v[1] == Rational(-1, 24));
    CHECK(series_mul(k, ki, mulP) == HSeries<P>::constant(cst(1)));
    CHECK_THROWS(series_inverse(HSeries<P>({cst(2), P{}, P{}}), cst(1), mulP));
}

TEST_CASE("series ring axioms on random triples") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> d(-5, 5);
    auto rnd = [&] {
        HSeries<P> s;
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 4; ++i) s[k].v[i] = Rational(d(rng), 1 + (d(rng) + 5) % 3);
        return s;
    };
    for (int it = 0; it < 20; ++it) {
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK(series_mul(series_mul(a, b, mulP), c, mulP) == series_mul(a, series_mul(b, c, mulP), mulP));
        CHECK(series_mul(a, b + c, mulP) == series_mul(a, b, mulP) + series_mul(a, c, mulP));
    }
}

TEST_CASE("exp(h omega / 2) truncation") {
    // with omega a scalar-like element c
    HSeries<P> e({cst(1), P{}, P{}});
    e[1].v[1] = Rational(1, 2);
    e[2].v[2] = Rational(1, 8);
    HSeries<P> half({P{}, P{}, P{}});
    half[1].v[1] = Rational(1, 2);
    // 1 + X + X^2/2 for X = h c/2
    auto x2 = series_mul(half, half, mulP);
    HSeries<P> direct = HSeries<P>::constant(cst(1)) + half;
    for (int i = 0; i < 4; ++i) direct[2].v[i] += x2[2].v[i] * Rational(1, 2);
    CHECK(direct == e);
}

TEST_CASE("permutations act on tensors") {
    SparseTensor r(0, 2, 4);
    r.add({0, 2}, 1);
    r.add({1, 3}, 1);
    SparseTensor rop(0, 2, 4);
    rop.add({2, 0}, 1);
    rop.add({3, 1}, 1);
    CHECK(permute(r, {}, {1, 0}) == rop);
    CHECK(permute(r, {}, {0, 1}) == r);
    CHECK(permute(permute(r, {}, {1, 0}), {}, {1, 0}) == r);
    CHECK_THROWS(permute(r, {}, {0}));
}

TEST_CASE("permute composition law on random tensors") {
    std::mt19937 rng(3);
    for (int it = 0; it < 30; ++it) {
        SparseTensor t(1, 3, 3);
        std::uniform_int_distribution<int> d(0, 2);
        for (int e = 0; e < 6; ++e) t.add({d(rng), d(rng), d(rng), d(rng)}, Rational(d(rng) + 1));
        Perm s = perm_identity(3), u = perm_identity(3);
        std::shuffle(s.begin(), s.end(), rng);
        std::shuffle(u.begin(), u.end(), rng);
        CHECK(permute(permute(t, {0}, s), {0}, u) == permute(t, {0}, perm_compose(u, s)));
        // the permutation operator realizes the same action
        CHECK(compose(SparseTensor::permutation(s, 3), t) == permute(t, {0}, s));
    }
}

TEST_CASE("compose and tensor") {
    SparseTensor id = SparseTensor::identity(2, 2);
    SparseTensor m(2, 1, 2);
    m.add({0, 1, 1}, 1);
    m.add({1, 0, 1}, -1);
    CHECK(compose(m, id) == m);
    auto mm = compose(m, SparseTensor::permutation({1, 0}, 2));
    CHECK(mm == m.scaled(-1));
    auto t = tensor(SparseTensor::identity(1, 2), m);
    CHECK(t.in() == 3);
    CHECK(t.out() == 2);
    CHECK(t.at({0, 0, 1, 0, 1}) == Rational(1));
    CHECK_THROWS(compose(m, m));
}
