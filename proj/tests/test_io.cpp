#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ekq/io.hpp"

using namespace ekq;

TEST_CASE("bialgebra round trip on the catalog") {
    for (const auto& nb : catalog().bialgebras) {
        INFO(nb.name);
        json j = bialgebra_to_json(nb.g, nb.name);
        LieBialgebra back = bialgebra_from_json(parse_json_text(dump(j)));
        CHECK(back == nb.g);
        CHECK(back.names == nb.g.names);
        CHECK(dump(bialgebra_to_json(back, nb.name)) == dump(j));
    }
}

TEST_CASE("auto antisymmetrize and 1-based indices") {
    auto j = parse_json_text(R"({"basis": ["a1", "a2"],
        "bracket": [{"i": 1, "j": 2, "k": 2, "coeff": "1"}],
        "cobracket": [{"i": "a2", "j": "a1", "k": "a2", "coeff": 1}],
        "auto_antisymmetrize": true})");
    CHECK(bialgebra_from_json(j) == catalog().get("axb"));
    j["auto_antisymmetrize"] = false;
    CHECK(!check_lie_bialgebra(bialgebra_from_json(j)).valid);
    // consistent explicit mirror is accepted, inconsistent rejected
    j["auto_antisymmetrize"] = true;
    j["bracket"].push_back({{"i", 2}, {"j", 1}, {"k", 2}, {"coeff", "-1"}});
    CHECK(bialgebra_from_json(j) == catalog().get("axb"));
    j["bracket"][1]["coeff"] = "5";
    CHECK_THROWS_AS(bialgebra_from_json(j), FormatError);
}

TEST_CASE("input errors are classified") {
    CHECK_THROWS_AS(parse_json_text("{\"basis\": [}"), FormatError);
    CHECK_THROWS_AS(bialgebra_from_json(parse_json_text(R"({"basis": ["x"], "bracket": [{"i": 1, "j": 1, "k": 2, "coeff": 1}]})")),
                    LabelError);
    CHECK_THROWS_AS(bialgebra_from_json(parse_json_text(R"({"basis": ["x"], "bracket": [{"i": "y", "j": 1, "k": 1, "coeff": 1}]})")),
                    LabelError);
    CHECK_THROWS_AS(bialgebra_from_json(parse_json_text(R"({"basis": ["x"], "bracket": [{"i": 1, "j": 1, "k": 1}]})")),
                    FormatError);
    CHECK_THROWS_AS(bialgebra_from_json(parse_json_text(R"({"basis": ["x"], "bracket": [{"i": 1, "j": 1, "k": 1, "coeff": 0.5}]})")),
                    FormatError);
    CHECK_THROWS_AS(bialgebra_from_json(parse_json_text(R"({"basis": ["x", "x"]})")), FormatError);
    CHECK_THROWS_AS(bialgebra_from_json(parse_json_text(R"([1, 2])")), FormatError);
    CHECK(bialgebra_from_json(parse_json_text(R"({"dim": 2})")) == LieBialgebra::abelian(2));
}

TEST_CASE("associative algebras and r round trip") {
    for (const auto& fx : yb_catalog()) {
        INFO(fx.name);
        json j = assoc_to_json(fx.A, fx.name);
        j["r"] = matrix_to_json(fx.r, fx.A.names);
        json k = parse_json_text(dump(j));
        AssocAlgebra A = assoc_from_json(k);
        CHECK(A.m == fx.A.m);
        CHECK(A.unit == fx.A.unit);
        CHECK(A.names == fx.A.names);
        CHECK(*matrix_from_json(k, A.names) == fx.r);
    }
    CHECK(!matrix_from_json(json::object(), {"x"}).has_value());
}

TEST_CASE("tensors, words and series round trip") {
    SparseTensor t(1, 2, 3);
    t.add({0, 1, 2}, Rational(1, 3));
    t.add({2, 2, 2}, Rational(-7));
    CHECK(tensor_from_json(parse_json_text(dump(tensor_to_json(t)))) == t);
    CHECK_THROWS_AS(tensor_from_json(parse_json_text(R"({"in":1,"out":1,"dim":2,"entries":[{"index":[1],"coeff":1}]})")),
                    FormatError);

    std::vector<std::string> basis{"H", "E", "F"};
    CHECK(word_from_text("E F", basis) == Word{1, 2});
    CHECK(word_from_text("E*F*H", basis) == Word{1, 2, 0});
    CHECK(word_from_text("1", basis).empty());
    CHECK(word_from_text("", basis).empty());
    CHECK_THROWS_AS(word_from_text("X", basis), LabelError);

    ESeries s(3);
    s[0].add(Word{1, 2}, 1);
    s[2].add(Word{0}, Rational(1, 24));
    CHECK(eseries_from_json(parse_json_text(dump(series_to_json(s, basis))), basis) == s);
    TSeries ts(3);
    ts[0].add({Word{}, Word{1}}, 1);
    ts[1].add({Word{0, 1}, Word{2}}, Rational(-1, 2));
    CHECK(tseries_from_json(parse_json_text(dump(series_to_json(ts, basis))), basis) == ts);
}

TEST_CASE("reports round trip") {
    std::vector<CheckResult> rs{{"a", "x = y", true, ""}, {"b", "u = v", false, "h^1: 2 * [0]"}};
    auto back = checks_from_json(parse_json_text(dump(checks_to_json(rs))));
    REQUIRE(back.size() == 2);
    CHECK(back[0].name == "a");
    CHECK(back[0].pass);
    CHECK(!back[1].pass);
    CHECK(back[1].witness == "h^1: 2 * [0]");
}

TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
