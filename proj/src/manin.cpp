#include "ekq/manin.hpp"

#include <sstream>

namespace ekq {

Lin<int> coadjoint_bracket(const LieBialgebra& a, int i, int j) {
    // [x, f] = ad*_x f - ad*_f x with <ad*_x f, y> = -<f, [x,y]>
    int n = a.dim;
    Lin<int> out;
    for (int k = 0; k < n; ++k) {
        Rational adx_f = -a.c(i, k, j);  // coefficient of b^k in ad*_{a_i} b^j
        out.add(n + k, adx_f);
        Rational adf_x = -a.f(i, j, k);  // coefficient of a_k in ad*_{b^j} a_i
        out.add(k, -adf_x);
    }
    return out;
}

Tensor2 tensor_bracket_coboundary(const LieAlgebra& g, int x, const Tensor2& r) {
    Tensor2 out;
    for (const auto& [ij, c] : r) {
        for (const auto& [k, v] : g.bracket(x, ij.first)) out.add({k, ij.second}, c * v);
        for (const auto& [k, v] : g.bracket(x, ij.second)) out.add({ij.first, k}, c * v);
    }
    return out;
}

Tensor2 DoubleAlgebra::cobracket(int x) const {
    Tensor2 out;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (is_a(x))
                out.add({a(j), a(k)}, base.f(x, j, k));
            else
                out.add({b(j), b(k)}, -base.c(j, k, x - n));
        }
    return out;
}

Tensor2 canonical_r(const DoubleAlgebra& d) {
    Tensor2 r;
    for (int i = 0; i < d.n; ++i) r.add({d.a(i), d.b(i)}, 1);
    return r;
}

DoubleAlgebra build_double(const LieBialgebra& a) {
    auto rep = check_lie_bialgebra(a);
    if (!rep.valid) throw ManinError("build_double: input is not a Lie bialgebra");
    DoubleAlgebra d;
    d.base = a;
    d.n = a.dim;
    int n = a.dim, N = 2 * n;
    std::vector<std::string> names = a.names;
    for (int i = 0; i < n; ++i) names.push_back("b" + std::to_string(i + 1));
    // avoid label clashes with the base basis
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (names[n + i] == a.names[j]) names[n + i] = a.names[i] + "*";
    d.g = LieAlgebra(N, names);
    auto& c = d.g.c;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                c(i, j, k) = a.c(i, j, k);
                c(n + i, n + j, n + k) = a.f(k, i, j);
                // [a_i, b^j] = f_i^{jk} a_k - c_ik^j b^k
                c(i, n + j, k) += a.f(i, j, k);
                c(i, n + j, n + k) -= a.c(i, k, j);
                c(n + j, i, k) -= a.f(i, j, k);
                c(n + j, i, n + k) += a.c(i, k, j);
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Lin<int> coord = d.g.bracket(i, n + j);
            if (!(coord == coadjoint_bracket(a, i, j)))
                throw ManinError("build_double: mixed bracket disagrees with the coadjoint formula");
        }
    d.pairing.assign(N, std::vector<Rational>(N));
    for (int i = 0; i < n; ++i) {
        d.pairing[i][n + i] = 1;
        d.pairing[n + i][i] = 1;
    }
    d.r = canonical_r(d);
    d.omega = d.r;
    for (const auto& [ij, v] : d.r) d.omega.add({ij.second, ij.first}, v);
    for (const auto& chk : verify_double(d))
        if (!chk.ok) throw ManinError("build_double: internal inconsistency in " + chk.name + ": " + chk.witness);
    return d;
}

std::vector<DoubleCheck> verify_double(const DoubleAlgebra& d) {
    std::vector<DoubleCheck> out;
    int N = d.dim();
    auto witness = [](std::initializer_list<int> idx, const Rational& v) {
        std::ostringstream os;
        os << "at (";
        bool first = true;
        for (int i : idx) {
            os << (first ? "" : ",") << i + 1;
            first = false;
        }
        os << ") residual " << v;
        return os.str();
    };
    auto record = [&](std::string name, std::string w) { out.push_back({std::move(name), w.empty(), w}); };

    std::string w;
    for (int i = 0; i < N && w.empty(); ++i)
        for (int j = 0; j < N && w.empty(); ++j)
            for (int k = 0; k < N && w.empty(); ++k) {
                Rational s = d.g.c(i, j, k) + d.g.c(j, i, k);
                if (!s.is_zero()) w = witness({i, j, k}, s);
            }
    record("antisymmetry", w);

    auto jv = jacobi_violations(d.g.c);
    record("jacobi", jv.empty() ? "" : witness({jv[0].indices[0], jv[0].indices[1], jv[0].indices[2]}, jv[0].residual));

    w.clear();
    for (int i = 0; i < N && w.empty(); ++i)
        for (int j = 0; j < N && w.empty(); ++j) {
            if (!(d.pairing[i][j] == d.pairing[j][i])) w = witness({i, j}, d.pairing[i][j] - d.pairing[j][i]);
            bool same_block = d.is_a(i) == d.is_a(j);
            if (same_block && !d.pairing[i][j].is_zero()) w = witness({i, j}, d.pairing[i][j]);
        }
    record("pairing-isotropic-symmetric", w);

    w.clear();
    for (int x = 0; x < N && w.empty(); ++x)
        for (int y = 0; y < N && w.empty(); ++y)
            for (int z = 0; z < N && w.empty(); ++z) {
                Rational s;
                for (int k = 0; k < N; ++k) s += d.g.c(x, y, k) * d.pairing[k][z] + d.g.c(x, z, k) * d.pairing[y][k];
                if (!s.is_zero()) w = witness({x, y, z}, s);
            }
    record("pairing-invariance", w);

    w.clear();
    for (int x = 0; x < N && w.empty(); ++x) {
        Tensor2 t = tensor_bracket_coboundary(d.g, x, d.omega);
        if (!t.is_zero()) w = witness({x, t.begin()->first.first, t.begin()->first.second}, t.begin()->second);
    }
    record("omega-invariance", w);

    w.clear();
    for (int x = 0; x < N && w.empty(); ++x) {
        Tensor2 t = tensor_bracket_coboundary(d.g, x, d.r) - d.cobracket(x);
        if (!t.is_zero()) w = witness({x, t.begin()->first.first, t.begin()->first.second}, t.begin()->second);
    }
    record("cobracket-is-dr", w);
    return out;
}

EnvTensor check_cybe(const Tensor2& r, const Pbw& U) {
    for (const auto& [ij, c] : r)
        if (ij.first >= U.dim() || ij.second >= U.dim()) throw ManinError("check_cybe: r has indices outside the algebra");
    EnvTensor rt = to_env(r);
    EnvTensor r12 = embed(rt, 3, {0, 1}), r13 = embed(rt, 3, {0, 2}), r23 = embed(rt, 3, {1, 2});
    auto comm = [&](const EnvTensor& x, const EnvTensor& y) { return U.multiply(x, y) - U.multiply(y, x); };
    EnvTensor out = comm(r12, r13);
    out += comm(r12, r23);
    out += comm(r13, r23);
    return out;
}

}  // namespace ekq
