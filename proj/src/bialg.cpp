#include "ekq/bialg.hpp"

namespace ekq {

bool Table3::is_zero() const {
    for (const auto& x : v_)
        if (!x.is_zero()) return false;
    return true;
}

static std::vector<std::string> default_names(int n, const char* stem) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(stem + std::to_string(i + 1));
    return out;
}

LieAlgebra::LieAlgebra(int n, std::vector<std::string> names_) : dim(n), names(std::move(names_)), c(n) {
    if (names.empty()) names = default_names(n, "e");
    if (int(names.size()) != n) throw BialgError("basis label count does not match dimension");
}

Lin<int> LieAlgebra::bracket(int i, int j) const {
    Lin<int> out;
    for (int k = 0; k < dim; ++k) out.add(k, c(i, j, k));
    return out;
}

Lin<int> LieAlgebra::bracket(const Lin<int>& x, const Lin<int>& y) const {
    Lin<int> out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) out.add_scaled(bracket(i, j), a * b);
    return out;
}

LieBialgebra::LieBialgebra(int n, std::vector<std::string> names_)
    : dim(n), names(std::move(names_)), c(n), f(n) {
    if (names.empty()) names = default_names(n, "a");
    if (int(names.size()) != n) throw BialgError("basis label count does not match dimension");
}

LieBialgebra LieBialgebra::abelian(int n) { return LieBialgebra(n, {}); }

LieAlgebra LieBialgebra::lie() const {
    LieAlgebra a(dim, names);
    a.c = c;
    return a;
}

std::vector<Violation> jacobi_violations(const Table3& c) {
    int n = c.n();
    std::vector<Violation> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int m = 0; m < n; ++m) {
                    // [[e_i,e_j],e_k] + cyclic
                    Rational s;
                    for (int p = 0; p < n; ++p) {
                        s += c(i, j, p) * c(p, k, m);
                        s += c(j, k, p) * c(p, i, m);
                        s += c(k, i, p) * c(p, j, m);
                    }
                    if (!s.is_zero()) out.push_back({"jacobi", {i, j, k, m}, s});
                }
    return out;
}

static void antisym(const Table3& t, const char* family, CheckReport& rep, bool first_pair) {
    int n = t.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Rational s = first_pair ? t(i, j, k) + t(j, i, k) : t(i, j, k) + t(i, k, j);
                bool lower = first_pair ? j < i : k < j;
                if (!s.is_zero() && !lower) rep.violations.push_back({family, {i, j, k}, s});
            }
}

CheckReport check_lie_bialgebra(const LieBialgebra& g) {
    int n = g.dim;
    if (g.c.n() != n || g.f.n() != n || int(g.names.size()) != n)
        throw BialgError("structure tables do not match the dimension");
    CheckReport rep;
    rep.families = {"antisymmetry", "jacobi", "co-jacobi", "cocycle"};
    antisym(g.c, "antisymmetry", rep, true);
    antisym(g.f, "antisymmetry", rep, false);
    for (auto& v : jacobi_violations(g.c)) rep.violations.push_back(v);
    Table3 dual(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) dual(j, k, i) = g.f(i, j, k);
    for (auto& v : jacobi_violations(dual)) {
        v.family = "co-jacobi";
        rep.violations.push_back(v);
    }
    // delta([a_i,a_j]) = [a_i (x) 1 + 1 (x) a_i, delta(a_j)] - (i <-> j)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) {
                    Rational s;
                    for (int k = 0; k < n; ++k) s += g.c(i, j, k) * g.f(k, l, m);
                    for (int p = 0; p < n; ++p) {
                        s -= g.f(j, p, m) * g.c(i, p, l) + g.f(j, l, p) * g.c(i, p, m);
                        s += g.f(i, p, m) * g.c(j, p, l) + g.f(i, l, p) * g.c(j, p, m);
                    }
                    if (!s.is_zero()) rep.violations.push_back({"cocycle", {i, j, l, m}, s});
                }
    rep.valid = rep.violations.empty();
    return rep;
}

static std::string toggle_star(const std::string& s) {
    if (!s.empty() && s.back() == '*') return s.substr(0, s.size() - 1);
    return s + "*";
}

LieBialgebra dualize(const LieBialgebra& g) {
    if (!check_lie_bialgebra(g).valid) throw BialgError("dualize: input is not a Lie bialgebra");
    std::vector<std::string> names;
    for (const auto& s : g.names) names.push_back(toggle_star(s));
    LieBialgebra d(g.dim, names);
    int n = g.dim;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                d.c(j, k, i) = g.f(i, j, k);
                d.f(i, j, k) = g.c(j, k, i);
            }
    return d;
}

LieBialgebra coboundary_from_r(const LieAlgebra& a, const std::vector<std::vector<Rational>>& r) {
    int n = a.dim;
    if (int(r.size()) != n) throw BialgError("r has wrong shape");
    for (const auto& row : r)
        if (int(row.size()) != n) throw BialgError("r has wrong shape");
    if (!jacobi_violations(a.c).empty()) throw BialgError("coboundary_from_r: bracket fails Jacobi");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(r[i][j] + r[j][i]).is_zero()) throw BialgError("coboundary_from_r: r is not antisymmetric");
    std::vector<std::string> names = a.names;
    LieBialgebra g(n, names);
    g.c = a.c;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Rational s;
                for (int p = 0; p < n; ++p) s += r[p][k] * a.c(i, p, j) + r[j][p] * a.c(i, p, k);
                g.f(i, j, k) = s;
            }
    if (!check_lie_bialgebra(g).valid)
        throw BialgError("coboundary_from_r: CYBE obstruction of r is not invariant");
    return g;
}

Lin<int> BialgebraHom::apply(const Lin<int>& x) const {
    Lin<int> out;
    for (const auto& [j, c] : x)
        for (int i = 0; i < target.dim; ++i) out.add(i, matrix[i][j] * c);
    return out;
}

std::vector<Violation> check_hom(const BialgebraHom& h) {
    const auto& s = h.source;
    const auto& t = h.target;
    if (int(h.matrix.size()) != t.dim) throw BialgError("hom matrix has wrong row count");
    for (const auto& row : h.matrix)
        if (int(row.size()) != s.dim) throw BialgError("hom matrix has wrong column count");
    std::vector<Violation> out;
    auto img = [&](int j) { return h.apply(Lin<int>(j, 1)); };
    LieAlgebra tl = t.lie();
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j) {
            Lin<int> lhs;
            for (int k = 0; k < s.dim; ++k) lhs.add_scaled(img(k), s.c(i, j, k));
            Lin<int> d = lhs - tl.bracket(img(i), img(j));
            for (const auto& [k, v] : d) out.push_back({"bracket", {i, j, k}, v});
        }
    for (int i = 0; i < s.dim; ++i) {
        // (M (x) M) delta(a_i) - delta(M a_i)
        std::map<std::pair<int, int>, Rational> d;
        for (int j = 0; j < s.dim; ++j)
            for (int k = 0; k < s.dim; ++k) {
                if (s.f(i, j, k).is_zero()) continue;
                for (int p = 0; p < t.dim; ++p)
                    for (int q = 0; q < t.dim; ++q) d[{p, q}] += s.f(i, j, k) * h.matrix[p][j] * h.matrix[q][k];
            }
        for (const auto& [m, cm] : img(i))
            for (int p = 0; p < t.dim; ++p)
                for (int q = 0; q < t.dim; ++q) d[{p, q}] -= cm * t.f(m, p, q);
        for (const auto& [pq, v] : d)
            if (!v.is_zero()) out.push_back({"cobracket", {i, pq.first, pq.second}, v});
    }
    return out;
}

const LieBialgebra& Catalog::get(const std::string& name) const {
    for (const auto& b : bialgebras)
        if (b.name == name) return b.g;
    throw BialgError("no catalog bialgebra named " + name);
}

static std::vector<std::vector<Rational>> zero_matrix(int rows, int cols) {
    return std::vector<std::vector<Rational>>(rows, std::vector<Rational>(cols));
}

static Catalog build_catalog() {
    Catalog cat;
    for (int n = 1; n <= 3; ++n) cat.bialgebras.push_back({"abelian" + std::to_string(n), LieBialgebra::abelian(n)});

    LieBialgebra axb(2, {"a1", "a2"});
    axb.c(0, 1, 1) = 1;
    axb.c(1, 0, 1) = -1;
    axb.f(1, 0, 1) = 1;
    axb.f(1, 1, 0) = -1;
    cat.bialgebras.push_back({"axb", axb});
    cat.bialgebras.push_back({"axb_dual", dualize(axb)});

    auto wedge = [](int n, int i, int j) {
        auto r = zero_matrix(n, n);
        r[i][j] = 1;
        r[j][i] = -1;
        return r;
    };
    // same bracket as axb, delta(a1) = a1 ^ a2, delta(a2) = 0
    cat.bialgebras.push_back({"delta2", coboundary_from_r(axb.lie(), wedge(2, 0, 1))});

    LieAlgebra b3(3, {"a1", "a2", "a3"});
    b3.c(0, 1, 1) = 1;
    b3.c(1, 0, 1) = -1;
    b3.c(0, 2, 2) = 1;
    b3.c(2, 0, 2) = -1;
    cat.bialgebras.push_back({"book3", coboundary_from_r(b3, wedge(3, 1, 2))});

    LieAlgebra sl2(3, {"H", "E", "F"});
    auto set = [](LieAlgebra& L, int i, int j, int k, long v) {
        L.c(i, j, k) = v;
        L.c(j, i, k) = -v;
    };
    set(sl2, 0, 1, 1, 2);
    set(sl2, 0, 2, 2, -2);
    set(sl2, 1, 2, 0, 1);
    LieBialgebra sl2_std = coboundary_from_r(sl2, wedge(3, 1, 2));
    cat.bialgebras.push_back({"sl2_std", sl2_std});

    LieBialgebra borel(2, {"H", "E"});
    borel.c(0, 1, 1) = 2;
    borel.c(1, 0, 1) = -2;
    borel.f(1, 1, 0) = 1;  // delta(E) = E ^ H
    borel.f(1, 0, 1) = -1;
    cat.bialgebras.push_back({"sl2_borel", borel});

    auto add_hom = [&](std::string name, const LieBialgebra& s, const LieBialgebra& t,
                       std::vector<std::vector<Rational>> m) {
        cat.homs.push_back({std::move(name), s, t, std::move(m)});
    };
    const LieBialgebra& ab1 = cat.get("abelian1");
    const LieBialgebra& ab2 = cat.get("abelian2");
    add_hom("id_axb", axb, axb, {{1, 0}, {0, 1}});
    add_hom("incl_abelian1_axb", ab1, axb, {{1}, {0}});
    add_hom("proj_axb_abelian1", axb, ab1, {{1, 0}});
    add_hom("zero_axb_abelian2", axb, ab2, zero_matrix(2, 2));
    add_hom("incl_borel_sl2", borel, sl2_std, {{1, 0}, {0, 1}, {0, 0}});
    add_hom("id_sl2_std", sl2_std, sl2_std, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    return cat;
}

const Catalog& catalog() {
    static const Catalog cat = build_catalog();
    return cat;
}

}  // namespace ekq
