#pragma once

#include <functional>
#include <memory>

#include "ekq/bialg.hpp"
#include "ekq/manin.hpp"
#include "ekq/quantize.hpp"

namespace ekq {

struct YbqError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Matrix = std::vector<std::vector<Rational>>;
/// Element of A^(x)k as index tuples.
using ATensor = Lin<std::vector<int>>;
using ASeries = HSeries<ATensor>;

/// e_i e_j = sum_k m(i,j,k) e_k.
struct AssocAlgebra {
    int dim = 0;
    std::vector<std::string> names;
    Table3 m;
    std::vector<Rational> unit;

    Lin<int> mul(int i, int j) const;
    Lin<int> mul(const Lin<int>& x, const Lin<int>& y) const;
    Lin<int> one() const;
    /// Factorwise product in A^(x)k.
    ATensor mul(const ATensor& x, const ATensor& y) const;
    ATensor one(int k) const;
};

AssocAlgebra matrix_algebra(int n);
std::vector<Violation> check_assoc(const AssocAlgebra& A);

ATensor to_atensor(const Matrix& r);
/// [r12,r13] + [r12,r23] + [r13,r23] with commutators in A.
ATensor check_assoc_cybe(const AssocAlgebra& A, const Matrix& r);

/// Ambient space with a bracket: commutators of A, or the bracket of a Lie algebra.
struct Ambient {
    int dim = 0;
    std::function<Lin<int>(int, int)> bracket;
};
Ambient ambient(const AssocAlgebra& A);
Ambient ambient(const LieAlgebra& a);

struct RSData {
    int rank = 0;
    /// Coordinates in the ambient basis of the bases x_i of g+ and y_i of g-, with <y_i, x_j> = delta_ij.
    std::vector<std::vector<Rational>> gplus, gminus;
    /// g+ with the cobracket dual to the bracket of g-.
    LieBialgebra base;
    std::shared_ptr<const DoubleAlgebra> dbl;
    /// pi(a_i) = x_i, pi(b^i) = y_i; columns indexed by the double basis.
    Matrix pi;
};

/// Rank factorization r = sum x_i (x) y_i by row reduction with first-nonzero-column pivots.
std::pair<Matrix, Matrix> rank_factorization(const Matrix& r);
RSData rs_construct(const Ambient& A, const Matrix& r);
/// pi([u,v]) - [pi u, pi v] over all basis pairs of the double.
std::vector<Violation> pi_bracket_residuals(const Ambient& A, const RSData& rs);

struct YbFixture {
    std::string name;
    AssocAlgebra A;
    Matrix r;
    bool unitary;
};
const std::vector<YbFixture>& yb_catalog();

struct RQuantization {
    RSData rs;
    ASeries R;
};

/// R = (pi (x) pi)(R~) for the quantized double of the RS Manin triple.
RQuantization quantize_r(const AssocAlgebra& A, const Matrix& r, int order = kDefaultOrder);
std::vector<CheckResult> yb_suite(const AssocAlgebra& A, const Matrix& r, const ASeries& R);

struct QtFixture {
    std::string name;
    std::string bialgebra;
    Matrix r;
    bool triangular;
};
const std::vector<QtFixture>& qt_catalog();

struct QtQuantization {
    RSData rs;
    std::shared_ptr<const Pbw> U;
    std::shared_ptr<const TwistedHopf> hopf;
    EnvTensor r;
};

/// J_a = (pi (x) pi)(J) on U(a), with R_a = (J_a^op)^-1 e^{h Omega_a/2} J_a, Omega_a = r + r^op.
QtQuantization quantize_quasitriangular(const LieBialgebra& a, const Matrix& r, int order = kDefaultOrder);
std::vector<CheckResult> qt_suite(const LieBialgebra& a, const QtQuantization& q, bool triangular);

/// tau(x + f) = x + (f (x) 1)(r) from the double of a onto a.
std::vector<CheckResult> tau_check(const LieBialgebra& a, const Matrix& r);

}  // namespace ekq
