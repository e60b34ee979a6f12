#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekq/verma.hpp"

using namespace ekq;

namespace {
Word W(std::initializer_list<int> xs) {
    Word w;
    for (int x : xs) w.push_back(std::uint8_t(x));
    return w;
}
Lin<Word> L(const Word& w, Rational c = 1) { return Lin<Word>(w, c); }

MultiVector single(Slot k, int bound, const Word& w) {
    MultiVector v({k}, {bound});
    v.add({w}, 1);
    return v;
}
}  // namespace

TEST_CASE("highest weight relations") {
    VermaModules M(build_double(catalog().get("axb")));
    CHECK(M.act_plus(0, Word{}).is_zero());
    CHECK(M.act_plus(1, Word{}).is_zero());
    CHECK(M.act_minus(2, Word{}).is_zero());
    CHECK(M.act_minus(3, Word{}).is_zero());
    // a2 . b2 1+ = (-a1 + b1) 1+ = b1 1+
    CHECK(M.act_plus(1, W({3})) == L(W({2})));
}

TEST_CASE("module axioms on all catalog doubles") {
    for (const auto& [name, g] : catalog().bialgebras) {
        INFO(name);
        VermaModules M(build_double(g));
        const auto& d = M.dbl();
        int N = d.dim();
        auto plus = sorted_words_upto(d.n, N, 3);
        auto minus = sorted_words_upto(0, d.n, 3);
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y) {
                EnvElement br;
                for (const auto& [k, c] : d.g.bracket(x, y)) br.add(W({k}), c);
                EnvElement xy = EnvElement(W({x, y}), 1) - EnvElement(W({y, x}), 1);
                for (const auto& v : plus) CHECK(M.act_plus(br, L(v)) == M.act_plus(xy, L(v)));
                for (const auto& v : minus) CHECK(M.act_minus(br, L(v)) == M.act_minus(xy, L(v)));
                // dual module, values on words of length <= 1 from bound 3
                for (const auto& v : sorted_words_upto(d.n, N, 3)) {
                    auto f = single(Slot::Dual, 3, v);
                    auto lhs = M.act_diag(br, f);
                    auto rhs = M.act_word_diag(W({x, y}), f) - M.act_word_diag(W({y, x}), f);
                    lhs.bounds = rhs.bounds;
                    lhs.prune();
                    CHECK(lhs == rhs);
                }
            }
    }
}

TEST_CASE("dual action anchors") {
    const auto& g = catalog().get("axb");
    VermaModules M(build_double(g));
    int n = 2;
    for (int j = 0; j < n; ++j) {
        CHECK(M.dual_act(n + j, Word{}, 2).is_zero());
        for (int i = 0; i < n; ++i) {
            auto v = M.dual_act(n + j, W({n + i}), 0);
            CHECK(v.coeff(Word{}) == Rational(i == j ? -1 : 0));
        }
    }
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < n; ++i) {
            auto v = M.dual_act(r, W({n + i}), 1);
            for (int j = 0; j < n; ++j) CHECK(v.coeff(W({n + j})) == g.c(r, i, j));
        }
    // 1+* is invariant
    for (int x = 0; x < 2 * n; ++x) CHECK(M.dual_act(x, Word{}, 2).is_zero());
}

TEST_CASE("i_minus and i_plus_star") {
    VermaModules M(build_double(catalog().get("book3")));
    EnvTensor one;
    one.add({Word{}, Word{}}, 1);
    CHECK(M.i_minus(L(Word{})) == one);
    EnvTensor prim;
    prim.add({W({1}), Word{}}, 1);
    prim.add({Word{}, W({1})}, 1);
    CHECK(M.i_minus(L(W({1}))) == prim);
    // coassociativity at degree <= 3
    const Pbw& U = M.U();
    for (const auto& w : sorted_words_upto(0, 3, 3)) {
        auto D = M.i_minus(L(w));
        EnvTensor left, right;
        for (const auto& [ws, c] : D) {
            left.add_scaled(tensor_product(M.i_minus(L(ws[0])), as_tensor(L(ws[1]))), c);
            right.add_scaled(tensor_product(as_tensor(L(ws[0])), M.i_minus(L(ws[1]))), c);
        }
        CHECK(left == right);
        CHECK(left == U.delta0(L(w), 3));
    }
    MultiVector ones({Slot::Dual, Slot::Dual}, {2, 2});
    ones.add({Word{}, Word{}}, 1);
    CHECK(M.i_plus_star(ones) == single(Slot::Dual, 2, Word{}));
    MultiVector mixed({Slot::Dual, Slot::Dual}, {2, 2});
    mixed.add({Word{}, W({4})}, 1);
    CHECK(M.i_plus_star(mixed) == single(Slot::Dual, 2, W({4})));
    // rho_b (x) rho_b pairs with b^2 1+ twice
    MultiVector sq({Slot::Dual, Slot::Dual}, {2, 2});
    sq.add({W({4}), W({4})}, 1);
    CHECK(M.i_plus_star(sq).terms.coeff({W({4, 4})}) == Rational(2));
}

TEST_CASE("i_plus_star is coassociative in the dual sense") {
    VermaModules M(build_double(catalog().get("sl2_std")));
    auto words = sorted_words_upto(3, 6, 2);
    for (const auto& u : words)
        for (const auto& v : words)
            for (const auto& w : words) {
                if (u.size() + v.size() + w.size() > 3) continue;
                MultiVector uv({Slot::Dual, Slot::Dual}, {3, 3});
                uv.add({u, v}, 1);
                auto left = M.i_plus_star(tensor(M.i_plus_star(uv), single(Slot::Dual, 3, w)));
                MultiVector vw({Slot::Dual, Slot::Dual}, {3, 3});
                vw.add({v, w}, 1);
                auto right = M.i_plus_star(tensor(single(Slot::Dual, 3, u), M.i_plus_star(vw)));
                CHECK(left == right);
            }
}

TEST_CASE("psi at degree one") {
    for (const auto& [name, g] : catalog().bialgebras) {
        INFO(name);
        VermaModules M(build_double(g));
        int n = g.dim;
        for (int p = 0; p < n; ++p) {
            auto psi = M.solve_psi(Pbw::gen(p), 1);
            CHECK(psi.terms.coeff({Word{}, W({p})}) == Rational(1));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) CHECK(psi.terms.coeff({W({n + i}), W({k})}) == -g.f(p, i, k));
        }
    }
}

TEST_CASE("psi for ax+b a2") {
    VermaModules M(build_double(catalog().get("axb")));
    auto psi = M.solve_psi(Pbw::gen(1), 1);
    PairedVector expect({Slot::Dual, Slot::Minus}, {1, 0});
    expect.add({Word{}, W({1})}, 1);
    expect.add({W({2}), W({1})}, -1);
    expect.add({W({3}), W({0})}, 1);
    CHECK(psi == expect);
}

TEST_CASE("psi is invariant, unique and matches the closed form") {
    for (const auto& [name, g] : catalog().bialgebras) {
        INFO(name);
        VermaModules M(build_double(g));
        int n = g.dim;
        const Pbw& U = M.U();
        for (const auto& x : sorted_words_upto(0, n, 2)) {
            auto psi = M.solve_psi(L(x), 3);
            for (const auto& res : M.invariance_residuals(psi)) CHECK(res.is_zero());
            CHECK(psi == M.solve_psi(L(x), 3, VermaModules::Elimination::Last));
            // sum over beta of rho_beta (x) b^beta x 1-, normal ordered in U(g)
            PairedVector closed({Slot::Dual, Slot::Minus}, {3, 0});
            for (const auto& beta : sorted_words_upto(n, 2 * n, 3)) {
                Word bx = beta;
                bx.insert(bx.end(), x.begin(), x.end());
                for (const auto& [w, c] : U.normal_order(bx)) {
                    bool has_b = false;
                    for (auto l : w) has_b |= l >= n;
                    if (!has_b) closed.add({beta, w}, c);
                }
            }
            CHECK(psi == closed);
        }
    }
}

TEST_CASE("abelian psi has no corrections") {
    VermaModules M(build_double(LieBialgebra::abelian(2)));
    auto psi = M.solve_psi(L(W({0, 1})), 3);
    CHECK(psi.terms.size() == 1);
    CHECK(psi.terms.coeff({Word{}, W({0, 1})}) == Rational(1));
    auto ext = M.psi_on(psi, L(W({1})));
    CHECK(ext.terms.size() == 1);
    CHECK(ext.terms.coeff({Word{}, W({0, 1, 1})}) == Rational(1));
}

TEST_CASE("psi extended to a_r 1- to first order") {
    for (const auto& name : {"axb", "sl2_std", "book3"}) {
        INFO(name);
        const auto& g = catalog().get(name);
        VermaModules M(build_double(g));
        int n = g.dim;
        const Pbw& U = M.U();
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r) {
                auto psi = M.solve_psi(Pbw::gen(q), 2);
                auto v = M.psi_on(psi, L(W({r})));
                PairedVector low({Slot::Dual, Slot::Minus}, {1, 0});
                for (const auto& [ws, c] : v.terms)
                    if (ws[0].size() <= 1) low.add(ws, c);
                PairedVector expect({Slot::Dual, Slot::Minus}, {1, 0});
                for (const auto& [w, c] : U.normal_order(W({r, q}))) expect.add({Word{}, w}, c);
                for (int i = 0; i < n; ++i)
                    for (int k = 0; k < n; ++k) {
                        for (int j = 0; j < n; ++j) expect.add({W({n + j}), W({k})}, -g.f(q, i, k) * g.c(r, i, j));
                        for (const auto& [w, c] : U.normal_order(W({r, k}))) expect.add({W({n + i}), w}, -g.f(q, i, k) * c);
                    }
                CHECK(low == expect);
            }
    }
}

TEST_CASE("phi") {
    VermaModules A(build_double(LieBialgebra::abelian(2)));
    MultiVector one({Slot::Plus, Slot::Minus});
    one.add({Word{}, Word{}}, 1);
    CHECK(A.phi_forward(Pbw::unit()) == one);
    MultiVector pa({Slot::Plus, Slot::Minus});
    pa.add({Word{}, W({1})}, 1);
    CHECK(A.phi_forward(Pbw::gen(1)) == pa);
    MultiVector pb({Slot::Plus, Slot::Minus});
    pb.add({W({3}), Word{}}, 1);
    CHECK(A.phi_forward(Pbw::gen(3)) == pb);

    for (const auto& name : {"axb", "sl2_std"}) {
        VermaModules M(build_double(catalog().get(name)));
        for (const auto& w : sorted_words_upto(0, M.dbl().dim(), 3)) {
            INFO(name);
            CHECK(M.phi_inverse(M.phi_forward(L(w))) == L(w));
        }
    }
}
