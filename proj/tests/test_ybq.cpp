#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ekq/ybq.hpp"

using namespace ekq;

namespace {

Matrix zero(int n) { return Matrix(n, std::vector<Rational>(n, Rational(0))); }

void require_all(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs) {
        INFO(r.name << ": " << r.witness);
        CHECK(r.pass);
    }
}

}  // namespace

TEST_CASE("matrix algebra") {
    auto A = matrix_algebra(2);
    CHECK(check_assoc(A).empty());
    CHECK(A.mul(1, 2) == Lin<int>(0, 1));  // E12 E21 = E11
    CHECK(A.mul(2, 1) == Lin<int>(3, 1));
    CHECK(A.mul(1, 1).is_zero());
    auto B = A;
    B.m(0, 0, 1) = 1;
    CHECK(!check_assoc(B).empty());
}

TEST_CASE("assoc CYBE examples") {
    auto A = matrix_algebra(2);
    CHECK(check_assoc_cybe(A, zero(4)).is_zero());
    Matrix r = zero(4);
    r[1][1] = 1;
    CHECK(check_assoc_cybe(A, r).is_zero());
    Matrix s = zero(4);
    s[1][0] = 1;
    s[1][3] = -1;  // E12 (x) H
    CHECK(!check_assoc_cybe(A, s).is_zero());
    CHECK_THROWS_AS(check_assoc_cybe(A, zero(3)), YbqError);
    for (const auto& f : yb_catalog()) {
        CAPTURE(f.name);
        CHECK(check_assoc_cybe(f.A, f.r).is_zero());
    }
}

TEST_CASE("rank factorization") {
    Matrix r = zero(3);
    r[0][1] = 2;
    r[2][1] = 4;
    r[2][2] = 1;
    auto [X, Y] = rank_factorization(r);
    CHECK(X.size() == 2);
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            Rational s = 0;
            for (std::size_t i = 0; i < X.size(); ++i) s = s + X[i][p] * Y[i][q];
            CHECK(s == r[p][q]);
        }
    CHECK(rank_factorization(zero(2)).first.empty());
}

TEST_CASE("RS construction for E12 (x) E12") {
    auto A = matrix_algebra(2);
    Matrix r = zero(4);
    r[1][1] = 1;
    auto rs = rs_construct(ambient(A), r);
    CHECK(rs.rank == 1);
    CHECK(rs.gplus[0] == std::vector<Rational>{0, 1, 0, 0});
    CHECK(rs.gminus[0] == std::vector<Rational>{0, 1, 0, 0});
    CHECK(rs.base.c.is_zero());
    CHECK(rs.base.f.is_zero());
}

TEST_CASE("RS invariants on the catalog") {
    for (const auto& f : yb_catalog()) {
        CAPTURE(f.name);
        auto rs = rs_construct(ambient(f.A), f.r);
        CHECK(pi_bracket_residuals(ambient(f.A), rs).empty());
        CHECK(jacobi_violations(rs.dbl->g.c).empty());
        // (pi (x) pi)(r~) = r
        Matrix img = zero(f.A.dim);
        for (const auto& [uv, c] : rs.dbl->r)
            for (int p = 0; p < f.A.dim; ++p)
                for (int q = 0; q < f.A.dim; ++q) img[p][q] = img[p][q] + c * rs.pi[p][uv.first] * rs.pi[q][uv.second];
        CHECK(img == f.r);
    }
}

TEST_CASE("g+ and g- coincide for the standard r intersecting fixture") {
    const auto& f = yb_catalog()[2];
    auto rs = rs_construct(ambient(f.A), f.r);
    CHECK(rs.rank == 2);
}

TEST_CASE("quantize_r examples") {
    auto A = matrix_algebra(2);
    Matrix r = zero(4);
    auto q0 = quantize_r(A, r);
    CHECK(q0.R[0] == A.one(2));
    CHECK(q0.R[1].is_zero());
    CHECK(q0.R[2].is_zero());
    r[1][1] = 1;
    auto q = quantize_r(A, r);
    CHECK(q.R[0] == A.one(2));
    CHECK(q.R[1] == ATensor({1, 1}, 1));
    CHECK(q.R[2].is_zero());
    Matrix bad = zero(4);
    bad[1][0] = 1;
    bad[1][3] = -1;
    CHECK_THROWS_AS(quantize_r(A, bad), YbqError);
}

TEST_CASE("quantize_r suite on the catalog") {
    for (const auto& f : yb_catalog()) {
        CAPTURE(f.name);
        auto q = quantize_r(f.A, f.r);
        auto rs = yb_suite(f.A, f.r, q.R);
        require_all(rs);
        bool saw_unitarity = false;
        for (const auto& c : rs) saw_unitarity = saw_unitarity || c.name == "unitarity";
        CHECK(saw_unitarity == f.unitary);
    }
}

TEST_CASE("quasitriangular quantization") {
    for (const auto& f : qt_catalog()) {
        CAPTURE(f.name);
        const auto& a = catalog().get(f.bialgebra);
        auto q = quantize_quasitriangular(a, f.r);
        require_all(qt_suite(a, q, f.triangular));
        CHECK(q.hopf->R()[1] == q.r);
    }
}

TEST_CASE("quasitriangular quantization rejects bad input") {
    const auto& a = catalog().get("sl2_std");
    Matrix r = zero(3);
    r[1][2] = 1;
    r[2][1] = -1;  // E^F: modified CYBE only
    CHECK_THROWS_AS(quantize_quasitriangular(a, r), YbqError);
    const auto& d = catalog().get("delta2");
    Matrix s = zero(2);
    s[0][1] = 2;
    s[1][0] = -2;  // coboundary is twice delta
    CHECK_THROWS_AS(quantize_quasitriangular(d, s), YbqError);
}

TEST_CASE("tau") {
    for (const auto& f : qt_catalog()) {
        CAPTURE(f.name);
        require_all(tau_check(catalog().get(f.bialgebra), f.r));
    }
}
