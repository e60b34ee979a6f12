#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekq/manin.hpp"
#include "ekq/pbw.hpp"

using namespace ekq;

namespace {

Word W(std::initializer_list<int> xs) {
    Word w;
    for (int x : xs) w.push_back(std::uint8_t(x));
    return w;
}

// matrices of the adjoint representation as an independent check of rewriting
using Mat = std::vector<std::vector<Rational>>;
Mat ad(const LieAlgebra& g, int x) {
    Mat m(g.dim, std::vector<Rational>(g.dim));
    for (int j = 0; j < g.dim; ++j)
        for (int k = 0; k < g.dim; ++k) m[k][j] = g.c(x, j, k);
    return m;
}
Mat matmul(const Mat& a, const Mat& b) {
    int n = int(a.size());
    Mat m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (!a[i][k].is_zero())
                for (int j = 0; j < n; ++j) m[i][j] += a[i][k] * b[k][j];
    return m;
}
Mat word_mat(const LieAlgebra& g, const Word& w) {
    Mat m(g.dim, std::vector<Rational>(g.dim));
    for (int i = 0; i < g.dim; ++i) m[i][i] = 1;
    for (auto x : w) m = matmul(m, ad(g, x));
    return m;
}
Mat elem_mat(const LieAlgebra& g, const EnvElement& e) {
    Mat m(g.dim, std::vector<Rational>(g.dim));
    for (const auto& [w, c] : e) {
        Mat t = word_mat(g, w);
        for (int i = 0; i < g.dim; ++i)
            for (int j = 0; j < g.dim; ++j) m[i][j] += c * t[i][j];
    }
    return m;
}

std::vector<Word> all_words(int dim, int len) {
    std::vector<Word> out{Word{}};
    for (int l = 0; l < len; ++l) {
        std::vector<Word> next;
        for (auto& w : out)
            for (int x = 0; x < dim; ++x) {
                auto v = w;
                v.push_back(std::uint8_t(x));
                next.push_back(v);
            }
        out = next;
    }
    return out;
}

}  // namespace

TEST_CASE("normal ordering in the ax+b double") {
    auto d = build_double(catalog().get("axb"));
    Pbw U(d.g);
    CHECK(U.normal_order(W({0, 1})) == EnvElement(W({0, 1}), 1));
    EnvElement e1 = EnvElement(W({0, 1}), 1) - EnvElement(W({1}), 1);
    CHECK(U.normal_order(W({1, 0})) == e1);
    // b^2 a_2 = a_2 b^2 + a_1 - b^1
    EnvElement e2 = EnvElement(W({1, 3}), 1) + EnvElement(W({0}), 1) - EnvElement(W({2}), 1);
    CHECK(U.normal_order(W({3, 1})) == e2);
    CHECK_THROWS(U.normal_order(W({7})));
    CHECK(U.multiply(Pbw::gen(1), Pbw::gen(0)) == e1);
    CHECK(U.multiply(Pbw::unit(), e2) == e2);
}

TEST_CASE("rewriting agrees with the adjoint representation") {
    for (const auto& [name, g] : catalog().bialgebras) {
        if (g.dim > 2) continue;
        INFO(name);
        auto d = build_double(g);
        Pbw U(d.g);
        for (int len = 2; len <= 3; ++len)
            for (const auto& w : all_words(d.dim(), len)) {
                auto nf = U.normal_order(w);
                for (const auto& [v, c] : nf) CHECK(U.is_normal(v));
                CHECK(elem_mat(d.g, nf) == word_mat(d.g, w));
                CHECK(U.normal_form(nf) == nf);
                CHECK(degree(nf) <= len);
            }
    }
}

TEST_CASE("associativity and Hopf axioms at degree <= 3") {
    for (const auto& [name, g] : catalog().bialgebras) {
        INFO(name);
        auto d = build_double(g);
        Pbw U(d.g);
        auto words = sorted_words_upto(0, d.dim(), 3);
        for (const auto& x : words)
            for (const auto& y : words) {
                if (x.size() + y.size() > 3) continue;
                EnvElement ex(x, 1), ey(y, 1);
                auto xy = U.multiply(ex, ey);
                CHECK(U.delta0(xy) == U.multiply(U.delta0(ex), U.delta0(ey)));
                for (const auto& z : words) {
                    if (x.size() + y.size() + z.size() > 3) continue;
                    EnvElement ez(z, 1);
                    CHECK(U.multiply(xy, ez) == U.multiply(ex, U.multiply(ey, ez)));
                }
            }
        for (const auto& x : words) {
            EnvElement ex(x, 1);
            auto D = U.delta0(ex);
            auto D3 = U.delta0(ex, 3);
            // (delta (x) 1) delta = (1 (x) delta) delta = delta^3
            EnvTensor left, right;
            for (const auto& [ws, c] : D) {
                left.add_scaled(tensor_product(U.delta0(EnvElement(ws[0], 1)), as_tensor(EnvElement(ws[1], 1))), c);
                right.add_scaled(tensor_product(as_tensor(EnvElement(ws[0], 1)), U.delta0(EnvElement(ws[1], 1))), c);
            }
            CHECK(left == D3);
            CHECK(right == D3);
            EnvElement anti;
            for (const auto& [ws, c] : D)
                anti.add_scaled(U.multiply(U.antipode0(EnvElement(ws[0], 1)), EnvElement(ws[1], 1)), c);
            CHECK(anti == Pbw::unit().scaled(counit0(ex)));
        }
    }
}

TEST_CASE("delta0 and antipode examples") {
    auto d = build_double(catalog().get("axb"));
    Pbw U(d.g);
    EnvTensor t;
    t.add({W({0}), W({})}, 1);
    t.add({W({}), W({0})}, 1);
    CHECK(U.delta0(Pbw::gen(0)) == t);
    EnvTensor t2;
    t2.add({W({0, 1}), W({})}, 1);
    t2.add({W({0}), W({1})}, 1);
    t2.add({W({1}), W({0})}, 1);
    t2.add({W({}), W({0, 1})}, 1);
    CHECK(U.delta0(EnvElement(W({0, 1}), 1)) == t2);
    CHECK_THROWS(U.delta0(Pbw::gen(0), 1));
    CHECK(U.antipode0(Pbw::gen(0)) == Pbw::gen(0).scaled(-1));
    CHECK(U.antipode0(EnvElement(W({0, 1}), 1)) == EnvElement(W({0, 1}), 1) - EnvElement(W({1}), 1));
    CHECK(counit0(Pbw::unit() + EnvElement(W({0, 1}), 1)) == Rational(1));
}
