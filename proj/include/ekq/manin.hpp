#pragma once

#include "ekq/bialg.hpp"
#include "ekq/pbw.hpp"

namespace ekq {

struct ManinError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// g = a + a*, basis a_1..a_n then b^1..b^n.
struct DoubleAlgebra {
    LieBialgebra base;
    int n = 0;  // dim a
    LieAlgebra g;
    std::vector<std::vector<Rational>> pairing;
    Tensor2 r, omega;

    int dim() const { return 2 * n; }
    int a(int i) const { return i; }
    int b(int i) const { return n + i; }
    bool is_a(int x) const { return x < n; }
    /// delta_g(x) for a basis element x, as a degree-one tensor.
    Tensor2 cobracket(int x) const;
};

DoubleAlgebra build_double(const LieBialgebra& a);
Tensor2 canonical_r(const DoubleAlgebra& d);

/// [r12,r13] + [r12,r23] + [r13,r23] in U(g)^(x)3.
EnvTensor check_cybe(const Tensor2& r, const Pbw& U);

/// Named invariant residuals (empty vector of nonzero entries means pass).
struct DoubleCheck {
    std::string name;
    bool ok;
    std::string witness;
};
std::vector<DoubleCheck> verify_double(const DoubleAlgebra& d);

/// Mixed bracket from the coadjoint actions, independent of the coordinate formula.
Lin<int> coadjoint_bracket(const LieBialgebra& a, int i, int j);

Tensor2 tensor_bracket_coboundary(const LieAlgebra& g, int x, const Tensor2& r);

}  // namespace ekq
