#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ekq/lin.hpp"
#include "ekq/rational.hpp"

namespace ekq {

struct BialgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense n x n x n table, t(i,j,k).
class Table3 {
public:
    Table3() = default;
    explicit Table3(int n) : n_(n), v_(std::size_t(n) * n * n) {}
    int n() const { return n_; }
    Rational& operator()(int i, int j, int k) { return v_[(std::size_t(i) * n_ + j) * n_ + k]; }
    const Rational& operator()(int i, int j, int k) const { return v_[(std::size_t(i) * n_ + j) * n_ + k]; }
    bool is_zero() const;
    friend bool operator==(const Table3&, const Table3&) = default;

private:
    int n_ = 0;
    std::vector<Rational> v_;
};

/// Lie algebra by structure constants: [e_i, e_j] = sum_k c(i,j,k) e_k.
struct LieAlgebra {
    int dim = 0;
    std::vector<std::string> names;
    Table3 c;

    LieAlgebra() = default;
    LieAlgebra(int n, std::vector<std::string> names_);
    Lin<int> bracket(int i, int j) const;
    Lin<int> bracket(const Lin<int>& x, const Lin<int>& y) const;
};

/// [a_i,a_j] = c(i,j,k) a_k, delta(a_i) = f(i,j,k) a_j (x) a_k.
struct LieBialgebra {
    int dim = 0;
    std::vector<std::string> names;
    Table3 c, f;

    LieBialgebra() = default;
    LieBialgebra(int n, std::vector<std::string> names_);
    static LieBialgebra abelian(int n);
    LieAlgebra lie() const;

    friend bool operator==(const LieBialgebra& a, const LieBialgebra& b) {
        return a.dim == b.dim && a.c == b.c && a.f == b.f;
    }
};

struct Violation {
    std::string family;
    std::vector<int> indices;  // 0-based
    Rational residual;
};

struct CheckReport {
    bool valid = true;
    std::vector<std::string> families;
    std::vector<Violation> violations;
};

/// Identity families: antisymmetry, jacobi, co-jacobi, cocycle.
CheckReport check_lie_bialgebra(const LieBialgebra& g);
std::vector<Violation> jacobi_violations(const Table3& c);

LieBialgebra dualize(const LieBialgebra& g);

/// r given as r(j,k) = coefficient of a_j (x) a_k.
LieBialgebra coboundary_from_r(const LieAlgebra& a, const std::vector<std::vector<Rational>>& r);

struct BialgebraHom {
    std::string name;
    LieBialgebra source, target;
    std::vector<std::vector<Rational>> matrix;  // dim(target) rows, dim(source) columns

    Lin<int> apply(const Lin<int>& x) const;
};

/// Residuals of bracket and cobracket compatibility; empty when f is a morphism.
std::vector<Violation> check_hom(const BialgebraHom& f);

struct NamedBialgebra {
    std::string name;
    LieBialgebra g;
};

struct Catalog {
    std::vector<NamedBialgebra> bialgebras;
    std::vector<BialgebraHom> homs;
    const LieBialgebra& get(const std::string& name) const;
};

const Catalog& catalog();

}  // namespace ekq
