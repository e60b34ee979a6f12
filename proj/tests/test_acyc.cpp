#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ekq/acyc.hpp"

using namespace ekq;

namespace {

void require_all(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs) {
        INFO(r.name << ": " << r.witness);
        CHECK(r.pass);
    }
}

// plain oracle: U(f) on a word is the product of images of its letters
EnvElement uf_oracle(const BialgebraHom& f, const Pbw& Ut, const Word& w) {
    EnvElement acc = Pbw::unit();
    for (auto x : w) {
        EnvElement img;
        for (int y = 0; y < f.target.dim; ++y) img.add(Word{std::uint8_t(y)}, f.matrix[y][x]);
        acc = Ut.multiply(acc, img);
    }
    return acc;
}

Matrix sl2_r() {
    Matrix r(3, std::vector<Rational>(3));
    r[0][0] = Rational(1, 2);
    r[1][2] = 2;
    return r;
}

}  // namespace

TEST_CASE("parse and arity") {
    auto e = parse_expr("comp(mu, tensor(id1, mu))");
    CHECK(e.in == 3);
    CHECK(e.out == 1);
    CHECK(parse_expr("r").in == 0);
    CHECK(parse_expr("unit").out == 1);
    CHECK(parse_expr("perm[3 1 2]").perm == Perm{2, 0, 1});
    CHECK(parse_expr("id<2>").in == 2);
    auto s = parse_expr("sum(1/2*mu, -3*comp(mu, perm[2 1]), mu)");
    CHECK(s.weights == std::vector<Rational>{Rational(1, 2), Rational(-3), Rational(1)});
}

TEST_CASE("print round trip") {
    for (const std::string t : {"mu", "comp(delta, mu)", "sum(1/2*mu, -3*comp(mu, perm[2 1]))",
                                "tensor(r, unit)", "comp(perm[1 3 2], tensor(r, unit))"}) {
        auto e = parse_expr(t);
        CHECK(print(parse_expr(print(e))) == print(e));
    }
    for (const auto& b : universal_bank())
        for (const auto& p : b.parts) CHECK(print(parse_expr(p)) == p);
}

TEST_CASE("syntax errors carry positions") {
    auto pos = [](const std::string& t) -> long {
        try {
            parse_expr(t);
        } catch (const ParseError& e) {
            return long(e.pos);
        }
        return -1;
    };
    CHECK(pos("comp(mu,, delta)") == 8);
    CHECK(pos("foo") == 0);
    CHECK(pos("comp(mu delta)") == 8);
    CHECK(pos("perm[1 1]") == 0);
    CHECK(pos("perm[0 1]") == 5);
    CHECK(pos("mu)") == 2);
    CHECK(pos("sum(1/2 mu)") == 8);
}

TEST_CASE("arity mismatches are rejected with a path") {
    CHECK_THROWS_AS(parse_expr("comp(mu, mu)"), AcycError);
    CHECK_THROWS_AS(parse_expr("sum(1*mu, 1*delta)"), AcycError);
    try {
        parse_expr("tensor(id1, comp(delta, delta))");
        FAIL("expected rejection");
    } catch (const AcycError& e) {
        CHECK(std::string(e.what()).find("tensor[2]/comp") != std::string::npos);
    }
}

TEST_CASE("antisymmetry of mu by evaluation") {
    for (const auto& nb : catalog().bialgebras) {
        Structure s = structure_lba(nb.g);
        CHECK(evaluate(parse_expr("comp(mu, perm[2 1])"), s) == evaluate(parse_expr("mu"), s).scaled(-1));
    }
    // the wrong signature
    CHECK_THROWS_AS(evaluate(parse_expr("r"), structure_lba(catalog().get("axb"))), AcycError);
}

TEST_CASE("identities vanish on valid structures") {
    for (const auto& nb : catalog().bialgebras) {
        Structure s = structure_lba(nb.g);
        for (const auto& b : universal_bank()) {
            if (b.kind != "identity" || b.signature != "lba") continue;
            INFO(nb.name << " " << b.name);
            CHECK(evaluate(parse_expr(b.parts[0]), s).is_zero());
        }
    }
    // a broken bracket is caught
    LieBialgebra bad(2, {"x", "y"});
    bad.c(0, 1, 1) = 1;
    CHECK(!evaluate(parse_expr(bank_entry("antisymmetry").parts[0]), structure_lba(bad)).is_zero());
    // cybe on the associative catalog
    for (const auto& ex : yb_catalog()) {
        INFO(ex.name);
        CHECK(evaluate(parse_expr(bank_entry("cybe").parts[0]), structure_cyba(ex.A, ex.r)).is_zero());
    }
    auto A = matrix_algebra(2);
    Matrix r(4, std::vector<Rational>(4));
    r[1][0] = 1;  // E12 (x) H is not a solution
    r[1][3] = -1;
    CHECK(!evaluate(parse_expr(bank_entry("cybe").parts[0]), structure_cyba(A, r)).is_zero());
}

TEST_CASE("qtlba structure") {
    Structure s = structure_qtlba(catalog().get("sl2_std"), sl2_r());
    CHECK(evaluate(parse_expr("r"), s).at({0, 0}) == Rational(1, 2));
    CHECK(evaluate(parse_expr("comp(mu, r)"), s).is_zero() == false);
}

TEST_CASE("symmetric coordinates") {
    const auto& g = catalog().get("sl2_std");
    Pbw U(g.lie());
    for (const auto& w : sorted_words_upto(0, 3, 3)) {
        EnvElement x = U.normal_order(w);
        CHECK(from_symmetric(U, to_symmetric(U, x)) == x);
    }
    // E F = S(E,F) + H/2
    auto s = to_symmetric(U, U.normal_order(Word{1, 2}));
    CHECK(s[1].coeff({0}) == Rational(1, 2));
    CHECK(s[2].coeff({1, 2}) == Rational(1, 2));
}

TEST_CASE("mu2_11 reproduces the h^2 product term") {
    const auto& e = bank_entry("mu2_11");
    for (const auto& nb : catalog().bialgebras) {
        Pbw U(nb.g.lie());
        Structure s = structure_lba(nb.g);
        for (int p = 0; p < nb.g.dim; ++p)
            for (int q = 0; q < nb.g.dim; ++q) {
                INFO(nb.name << " " << p << " " << q);
                CHECK(evaluate_symmetric(e, s, {p, q}, U) == h2_product_formula(nb.g, p, q));
            }
    }
    const auto& axb = catalog().get("axb");
    CHECK(evaluate_symmetric(e, structure_lba(axb), {1, 1}, Pbw(axb.lie())).is_zero());
}

TEST_CASE("naturality on catalog morphisms") {
    for (const auto& f : catalog().homs) {
        INFO(f.name);
        require_all(naturality_check(f));
    }
    auto f = catalog().homs.front();
    f.matrix[0][0] = 2;
    f.matrix[1][1] = 3;
    CHECK_THROWS_AS(naturality_check(f), AcycError);
}

TEST_CASE("apply_sf agrees with U(f)") {
    for (const auto& f : catalog().homs) {
        Pbw Us(f.source.lie()), Ut(f.target.lie());
        for (const auto& w : sorted_words_upto(0, f.source.dim, 3)) {
            INFO(f.name);
            CHECK(apply_sf(f, Us, Ut, EnvElement(w, 1)) == uf_oracle(f, Ut, w));
        }
    }
}

TEST_CASE("functoriality of the quantization") {
    for (const auto& f : catalog().homs) {
        INFO(f.name);
        require_all(functoriality_check(f));
    }
}

namespace {

struct RandomExprs {
    std::mt19937 rng{20261018};
    // leaf with the given number of inputs
    std::string leaf(int in) {
        static const std::vector<std::string> one{"delta", "id1"}, two{"mu", "id2", "perm[2 1]"};
        const auto& v = in == 1 ? one : two;
        return v[rng() % v.size()];
    }
    // expression with exactly `in` inputs
    std::string with_inputs(int in, int depth) {
        if (in > 2 || depth == 0 || rng() % 3 == 0) {
            std::string s;
            int left = in;
            std::vector<std::string> parts;
            while (left > 0) {
                int take = left >= 2 && rng() % 2 ? 2 : 1;
                parts.push_back(leaf(take));
                left -= take;
            }
            if (parts.size() == 1) return parts[0];
            s = "tensor(";
            for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
            return s + ")";
        }
        std::string inner = with_inputs(in, depth - 1);
        int mid = parse_expr(inner).out;
        return "comp(" + with_inputs(mid, depth - 1) + ", " + inner + ")";
    }
};

}  // namespace

TEST_CASE("evaluation is compositional and tensorial on random trees") {
    RandomExprs g;
    const auto& lb = catalog().get("sl2_std");
    Structure s = structure_lba(lb);
    for (int trial = 0; trial < 40; ++trial) {
        std::string b = g.with_inputs(1 + int(g.rng() % 2), 2);
        Expr eb = parse_expr(b);
        if (eb.out > 3) continue;
        std::string a = g.with_inputs(eb.out, 1);
        Expr ea = parse_expr(a);
        INFO(a << " after " << b);
        SparseTensor ta = evaluate(ea, s), tb = evaluate(eb, s);
        CHECK(evaluate(parse_expr("comp(" + a + ", " + b + ")"), s) == compose(ta, tb));
        CHECK(evaluate(parse_expr("tensor(" + a + ", mu)"), s) == tensor(ta, evaluate(parse_expr("mu"), s)));
        CHECK(evaluate(parse_expr(print(ea)), s) == ta);
        if (ea.in == eb.in && ea.out == eb.out)
            CHECK(evaluate(parse_expr("sum(2/3*" + a + ", -1*" + b + ")"), s) == ta.scaled(Rational(2, 3)) - tb);
    }
}
