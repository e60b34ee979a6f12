#include "ekq/ybq.hpp"

#include <algorithm>
#include <optional>

#include "ekq/polar.hpp"

namespace ekq {

Lin<int> AssocAlgebra::mul(int i, int j) const {
    Lin<int> out;
    for (int k = 0; k < dim; ++k)
        if (!m(i, j, k).is_zero()) out.add(k, m(i, j, k));
    return out;
}

Lin<int> AssocAlgebra::mul(const Lin<int>& x, const Lin<int>& y) const {
    Lin<int> out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) out.add_scaled(mul(i, j), a * b);
    return out;
}

Lin<int> AssocAlgebra::one() const {
    Lin<int> out;
    for (int i = 0; i < dim; ++i) out.add(i, unit[i]);
    return out;
}

ATensor AssocAlgebra::mul(const ATensor& x, const ATensor& y) const {
    ATensor out;
    for (const auto& [u, a] : x)
        for (const auto& [v, b] : y) {
            std::vector<Lin<int>> f;
            for (std::size_t p = 0; p < u.size(); ++p) f.push_back(mul(u[p], v[p]));
            // expand the product of the factor images
            ATensor acc(std::vector<int>{}, a * b);
            for (const auto& l : f) {
                ATensor next;
                for (const auto& [t, c] : acc)
                    for (const auto& [k, d] : l) {
                        auto t2 = t;
                        t2.push_back(k);
                        next.add(t2, c * d);
                    }
                acc = std::move(next);
            }
            out += acc;
        }
    return out;
}

ATensor AssocAlgebra::one(int k) const {
    ATensor acc(std::vector<int>{}, 1);
    Lin<int> o = one();
    for (int p = 0; p < k; ++p) {
        ATensor next;
        for (const auto& [t, c] : acc)
            for (const auto& [i, d] : o) {
                auto t2 = t;
                t2.push_back(i);
                next.add(t2, c * d);
            }
        acc = std::move(next);
    }
    return acc;
}

AssocAlgebra matrix_algebra(int n) {
    AssocAlgebra A;
    A.dim = n * n;
    A.m = Table3(A.dim);
    A.unit.assign(A.dim, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A.names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    for (int i = 0; i < n; ++i) {
        A.unit[i * n + i] = 1;
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) A.m(i * n + j, j * n + l, i * n + l) = 1;
    }
    return A;
}

std::vector<Violation> check_assoc(const AssocAlgebra& A) {
    std::vector<Violation> out;
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k) {
                Lin<int> d = A.mul(A.mul(i, j), Lin<int>(k, 1)) - A.mul(Lin<int>(i, 1), A.mul(j, k));
                for (const auto& [l, c] : d) out.push_back({"associativity", {i, j, k, l}, c});
            }
    for (int i = 0; i < A.dim; ++i) {
        Lin<int> e(i, 1);
        Lin<int> d1 = A.mul(A.one(), e) - e, d2 = A.mul(e, A.one()) - e;
        for (const auto& [l, c] : d1) out.push_back({"left-unit", {i, l}, c});
        for (const auto& [l, c] : d2) out.push_back({"right-unit", {i, l}, c});
    }
    return out;
}

ATensor to_atensor(const Matrix& r) {
    ATensor t;
    for (std::size_t p = 0; p < r.size(); ++p)
        for (std::size_t q = 0; q < r[p].size(); ++q) t.add({int(p), int(q)}, r[p][q]);
    return t;
}

namespace {

void require_square(const Matrix& r, int dim) {
    if (int(r.size()) != dim) throw YbqError("r has " + std::to_string(r.size()) + " rows, expected " + std::to_string(dim));
    for (const auto& row : r)
        if (int(row.size()) != dim) throw YbqError("r is not a square matrix of size " + std::to_string(dim));
}

// insert the unit of A into the missing factors: t occupies positions pos of a k-fold tensor
ATensor embed_a(const AssocAlgebra& A, const ATensor& t, int k, const std::vector<int>& pos) {
    Lin<int> o = A.one();
    ATensor out;
    for (const auto& [u, c] : t) {
        ATensor acc(std::vector<int>(k, -1), c);
        for (int p = 0; p < k; ++p) {
            auto it = std::find(pos.begin(), pos.end(), p);
            ATensor next;
            for (const auto& [v, d] : acc) {
                if (it != pos.end()) {
                    auto v2 = v;
                    v2[p] = u[it - pos.begin()];
                    next.add(v2, d);
                } else {
                    for (const auto& [i, e] : o) {
                        auto v2 = v;
                        v2[p] = i;
                        next.add(v2, d * e);
                    }
                }
            }
            acc = std::move(next);
        }
        out += acc;
    }
    return out;
}

ATensor commutator(const AssocAlgebra& A, const ATensor& x, const ATensor& y) { return A.mul(x, y) - A.mul(y, x); }

std::optional<std::vector<Rational>> solve_span(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& v) {
    int k = int(basis.size()), n = int(v.size());
    // columns: basis vectors, augmented with v
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) a[i][j] = basis[j][i];
        a[i][k] = v[i];
    }
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < k && row < n; ++col) {
        int p = row;
        while (p < n && a[p][col].is_zero()) ++p;
        if (p == n) continue;
        std::swap(a[p], a[row]);
        Rational inv = Rational(1) / a[row][col];
        for (auto& x : a[row]) x = x * inv;
        for (int i = 0; i < n; ++i)
            if (i != row && !a[i][col].is_zero()) {
                Rational f = a[i][col];
                for (int j = 0; j <= k; ++j) a[i][j] = a[i][j] - f * a[row][j];
            }
        piv.push_back(col);
        ++row;
    }
    for (int i = row; i < n; ++i)
        if (!a[i][k].is_zero()) return std::nullopt;
    std::vector<Rational> x(k, Rational(0));
    for (int i = 0; i < row; ++i) x[piv[i]] = a[i][k];
    return x;
}

std::vector<Rational> bracket_coords(const Ambient& A, const std::vector<Rational>& x, const std::vector<Rational>& y) {
    std::vector<Rational> out(A.dim, Rational(0));
    for (int p = 0; p < A.dim; ++p) {
        if (x[p].is_zero()) continue;
        for (int q = 0; q < A.dim; ++q) {
            if (y[q].is_zero()) continue;
            for (const auto& [l, c] : A.bracket(p, q)) out[l] = out[l] + x[p] * y[q] * c;
        }
    }
    return out;
}

std::vector<Rational> column(const Matrix& m, int j) {
    std::vector<Rational> v;
    for (const auto& row : m) v.push_back(row[j]);
    return v;
}

struct Collector {
    std::vector<CheckResult> out;
    void check(const std::string& name, const std::string& identity, bool ok, const std::string& witness) {
        for (auto& r : out)
            if (r.name == name) {
                if (r.pass && !ok) {
                    r.pass = false;
                    r.witness = witness;
                }
                return;
            }
        out.push_back({name, identity, ok, ok ? "" : witness});
    }
};

std::string describe_a(const ATensor& t) {
    if (t.is_zero()) return "0";
    const auto& [u, c] = *t.begin();
    std::string s = c.str() + " * (";
    for (std::size_t i = 0; i < u.size(); ++i) s += (i ? "," : "") + std::to_string(u[i] + 1);
    s += ")";
    if (t.size() > 1) s += " (+" + std::to_string(t.size() - 1) + " more terms)";
    return s;
}

std::string describe_a(const ASeries& s) {
    for (int k = 0; k < s.order(); ++k)
        if (!s[k].is_zero()) return "h^" + std::to_string(k) + ": " + describe_a(s[k]);
    return "0";
}

bool is_zero_a(const ASeries& s) {
    for (const auto& c : s.coeffs())
        if (!c.is_zero()) return false;
    return true;
}

bool is_unitary(const Matrix& r) {
    for (std::size_t p = 0; p < r.size(); ++p)
        for (std::size_t q = 0; q < r.size(); ++q)
            if (!(r[p][q] + r[q][p]).is_zero()) return false;
    return true;
}

Matrix zero_matrix(int n) { return Matrix(n, std::vector<Rational>(n, Rational(0))); }

}  // namespace

ATensor check_assoc_cybe(const AssocAlgebra& A, const Matrix& r) {
    require_square(r, A.dim);
    ATensor t = to_atensor(r);
    ATensor r12 = embed_a(A, t, 3, {0, 1}), r13 = embed_a(A, t, 3, {0, 2}), r23 = embed_a(A, t, 3, {1, 2});
    return commutator(A, r12, r13) + commutator(A, r12, r23) + commutator(A, r13, r23);
}

Ambient ambient(const AssocAlgebra& A) {
    return {A.dim, [A](int i, int j) { return A.mul(i, j) - A.mul(j, i); }};
}

Ambient ambient(const LieAlgebra& a) {
    return {a.dim, [a](int i, int j) { return a.bracket(i, j); }};
}

std::pair<Matrix, Matrix> rank_factorization(const Matrix& r) {
    int n = int(r.size());
    Matrix rows = r;
    std::vector<int> pivots;
    int row = 0;
    int m = n ? int(r[0].size()) : 0;
    for (int col = 0; col < m && row < n; ++col) {
        int p = row;
        while (p < n && rows[p][col].is_zero()) ++p;
        if (p == n) continue;
        std::swap(rows[p], rows[row]);
        Rational inv = Rational(1) / rows[row][col];
        for (auto& x : rows[row]) x = x * inv;
        for (int i = 0; i < n; ++i)
            if (i != row && !rows[i][col].is_zero()) {
                Rational f = rows[i][col];
                for (int j = 0; j < m; ++j) rows[i][j] = rows[i][j] - f * rows[row][j];
            }
        pivots.push_back(col);
        ++row;
    }
    Matrix X, Y;
    for (int i = 0; i < row; ++i) {
        X.push_back(column(r, pivots[i]));
        Y.push_back(rows[i]);
    }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < m; ++q) {
            Rational s = 0;
            for (int i = 0; i < row; ++i) s = s + X[i][p] * Y[i][q];
            if (s != r[p][q]) throw YbqError("internal error: rank factorization does not reproduce r");
        }
    return {X, Y};
}

std::vector<Violation> pi_bracket_residuals(const Ambient& A, const RSData& rs) {
    std::vector<Violation> out;
    if (!rs.dbl) return out;
    int d = rs.dbl->dim();
    for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) {
            std::vector<Rational> lhs(A.dim, Rational(0));
            for (const auto& [w, c] : rs.dbl->g.bracket(u, v))
                for (int p = 0; p < A.dim; ++p) lhs[p] = lhs[p] + c * rs.pi[p][w];
            auto rhs = bracket_coords(A, column(rs.pi, u), column(rs.pi, v));
            for (int p = 0; p < A.dim; ++p)
                if (lhs[p] != rhs[p]) out.push_back({"pi-bracket", {u, v, p}, lhs[p] - rhs[p]});
        }
    return out;
}

RSData rs_construct(const Ambient& A, const Matrix& r) {
    require_square(r, A.dim);
    auto [X, Y] = rank_factorization(r);
    RSData rs;
    rs.rank = int(X.size());
    rs.gplus = X;
    rs.gminus = Y;
    int k = rs.rank;
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back("x" + std::to_string(i + 1));
    rs.base = LieBialgebra(k, names);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            auto cx = solve_span(X, bracket_coords(A, X[i], X[j]));
            if (!cx) throw YbqError("g+ is not closed under the bracket; r does not satisfy the CYBE");
            auto cy = solve_span(Y, bracket_coords(A, Y[i], Y[j]));
            if (!cy) throw YbqError("g- is not closed under the bracket; r does not satisfy the CYBE");
            for (int l = 0; l < k; ++l) {
                rs.base.c(i, j, l) = (*cx)[l];
                rs.base.f(l, i, j) = (*cy)[l];
            }
        }
    rs.pi = Matrix(A.dim, std::vector<Rational>(2 * k, Rational(0)));
    for (int i = 0; i < k; ++i)
        for (int p = 0; p < A.dim; ++p) {
            rs.pi[p][i] = X[i][p];
            rs.pi[p][k + i] = Y[i][p];
        }
    if (k == 0) return rs;
    auto report = check_lie_bialgebra(rs.base);
    if (!report.valid) throw YbqError("the bracket on g+ + g- fails the Lie bialgebra axioms (" + report.violations[0].family + ")");
    rs.dbl = std::make_shared<const DoubleAlgebra>(build_double(rs.base));
    auto res = pi_bracket_residuals(A, rs);
    if (!res.empty()) throw YbqError("internal error: pi is not a Lie algebra homomorphism");
    return rs;
}

const std::vector<YbFixture>& yb_catalog() {
    static const std::vector<YbFixture> cat = [] {
        std::vector<YbFixture> v;
        AssocAlgebra m2 = matrix_algebra(2), m3 = matrix_algebra(3);
        // basis of Mat2: E11 E12 E21 E22
        const int E11 = 0, E12 = 1, E21 = 2, E22 = 3;
        {
            Matrix r = zero_matrix(4);
            r[E12][E12] = 1;
            v.push_back({"mat2_e12_e12", m2, r, false});
        }
        {
            // H (x) E - E (x) H with H = E11 - E22, E = E12
            Matrix r = zero_matrix(4);
            r[E11][E12] = 1;
            r[E22][E12] = -1;
            r[E12][E11] = -1;
            r[E12][E22] = 1;
            v.push_back({"mat2_jordanian", m2, r, true});
        }
        {
            // H (x) H / 2 + 2 E (x) F
            Matrix r = zero_matrix(4);
            for (int a : {E11, E22})
                for (int b : {E11, E22}) r[a][b] = Rational(a == b ? 1 : -1, 2);
            r[E12][E21] = 2;
            v.push_back({"mat2_standard", m2, r, false});
        }
        {
            // E12 (x) E13 - E13 (x) E12
            Matrix r = zero_matrix(9);
            r[1][2] = 1;
            r[2][1] = -1;
            v.push_back({"mat3_commuting", m3, r, true});
        }
        return v;
    }();
    return cat;
}

namespace {

ATensor push_tensor(const std::vector<Lin<int>>& img, const AssocAlgebra& A, const EnvTensor& t,
                    std::map<Word, Lin<int>>& cache) {
    auto word = [&](const Word& w) -> const Lin<int>& {
        auto it = cache.find(w);
        if (it != cache.end()) return it->second;
        Lin<int> acc = A.one();
        for (auto l : w) acc = A.mul(acc, img[l]);
        return cache.emplace(w, acc).first->second;
    };
    ATensor out;
    for (const auto& [ws, c] : t) {
        ATensor acc(std::vector<int>{}, c);
        for (const auto& w : ws) {
            const Lin<int>& x = word(w);
            ATensor next;
            for (const auto& [u, d] : acc)
                for (const auto& [i, e] : x) {
                    auto u2 = u;
                    u2.push_back(i);
                    next.add(u2, d * e);
                }
            acc = std::move(next);
        }
        out += acc;
    }
    return out;
}

}  // namespace

RQuantization quantize_r(const AssocAlgebra& A, const Matrix& r, int order) {
    if (order < 1 || order > kDefaultOrder) throw YbqError("order must be between 1 and 3");
    if (!check_assoc_cybe(A, r).is_zero()) throw YbqError("r does not satisfy the classical Yang-Baxter equation");
    RQuantization out;
    out.rs = rs_construct(ambient(A), r);
    out.R = ASeries(order);
    out.R[0] = A.one(2);
    if (out.rs.rank == 0) return out;
    QuantizedDouble q(std::make_shared<VermaModules>(*out.rs.dbl), order);
    TSeries Rt = polarize_R(q).R_tilde;
    std::vector<Lin<int>> img;
    for (int w = 0; w < out.rs.dbl->dim(); ++w) {
        Lin<int> x;
        for (int p = 0; p < A.dim; ++p) x.add(p, out.rs.pi[p][w]);
        img.push_back(x);
    }
    std::map<Word, Lin<int>> cache;
    for (int k = 0; k < order; ++k) out.R[k] = push_tensor(img, A, Rt[k], cache);
    return out;
}

std::vector<CheckResult> yb_suite(const AssocAlgebra& A, const Matrix& r, const ASeries& R) {
    Collector col;
    int order = R.order();
    auto mul = [&](const ATensor& x, const ATensor& y) { return A.mul(x, y); };
    {
        ASeries e(order);
        e[0] = A.one(2);
        if (order > 1) e[1] = to_atensor(r);
        ASeries d = R - e;
        if (order > 2) d[2] = ATensor();
        col.check("R-classical-limit", "R = 1 + h r mod h^2", is_zero_a(d), describe_a(d));
    }
    auto emb = [&](const std::vector<int>& pos) { return R.map([&](const ATensor& t) { return embed_a(A, t, 3, pos); }); };
    ASeries R12 = emb({0, 1}), R13 = emb({0, 2}), R23 = emb({1, 2});
    ASeries lhs = series_mul(series_mul(R12, R13, mul), R23, mul);
    ASeries rhs = series_mul(series_mul(R23, R13, mul), R12, mul);
    col.check("QYBE", "R12 R13 R23 = R23 R13 R12", is_zero_a(lhs - rhs), describe_a(lhs - rhs));
    if (is_unitary(r)) {
        ASeries op = R.map([](const ATensor& t) {
            ATensor o;
            for (const auto& [u, c] : t) o.add({u[1], u[0]}, c);
            return o;
        });
        ASeries p = series_mul(op, R, mul);
        ASeries one(order);
        one[0] = A.one(2);
        col.check("unitarity", "R^op R = 1", is_zero_a(p - one), describe_a(p - one));
    }
    return col.out;
}

const std::vector<QtFixture>& qt_catalog() {
    static const std::vector<QtFixture> cat = [] {
        std::vector<QtFixture> v;
        {
            Matrix r = zero_matrix(2);
            r[0][1] = 1;
            r[1][0] = -1;
            v.push_back({"delta2_triangular", "delta2", r, true});
        }
        {
            Matrix r = zero_matrix(3);
            r[1][2] = 1;
            r[2][1] = -1;
            v.push_back({"book3_triangular", "book3", r, true});
        }
        {
            // H (x) H / 2 + 2 E (x) F, basis H, E, F
            Matrix r = zero_matrix(3);
            r[0][0] = Rational(1, 2);
            r[1][2] = 2;
            v.push_back({"sl2_standard", "sl2_std", r, false});
        }
        return v;
    }();
    return cat;
}

QtQuantization quantize_quasitriangular(const LieBialgebra& a, const Matrix& r, int order) {
    if (order < 1 || order > kDefaultOrder) throw YbqError("order must be between 1 and 3");
    require_square(r, a.dim);
    QtQuantization out;
    out.U = std::make_shared<const Pbw>(a.lie());
    Tensor2 rt;
    for (int p = 0; p < a.dim; ++p)
        for (int q = 0; q < a.dim; ++q) rt.add({p, q}, r[p][q]);
    if (!check_cybe(rt, *out.U).is_zero()) throw YbqError("r does not satisfy the classical Yang-Baxter equation in U(a)");
    out.r = to_env(rt);
    EnvTensor omega = out.r + permute_factors(out.r, {1, 0});
    for (int x = 0; x < a.dim; ++x) {
        EnvTensor d0 = out.U->delta0(Pbw::gen(x));
        if (!(out.U->multiply(d0, omega) - out.U->multiply(omega, d0)).is_zero())
            throw YbqError("r + r^op is not invariant");
    }
    Matrix skew = zero_matrix(a.dim);
    for (int p = 0; p < a.dim; ++p)
        for (int q = 0; q < a.dim; ++q) skew[p][q] = (r[p][q] - r[q][p]) * Rational(1, 2);
    if (!(coboundary_from_r(a.lie(), skew).f == a.f)) throw YbqError("the cobracket of a is not the coboundary of r");
    out.rs = rs_construct(ambient(a.lie()), r);
    TSeries J(order);
    J[0] = Pbw::unit(2);
    if (out.rs.rank > 0) {
        VermaModules M(*out.rs.dbl);
        TSeries Jg = twist_element(M, 1, order);
        std::vector<EnvElement> img;
        for (int w = 0; w < out.rs.dbl->dim(); ++w) {
            EnvElement x;
            for (int p = 0; p < a.dim; ++p) x.add_scaled(Pbw::gen(p), out.rs.pi[p][w]);
            img.push_back(x);
        }
        std::map<Word, EnvElement> cache;
        auto word = [&](const Word& w) -> const EnvElement& {
            auto it = cache.find(w);
            if (it != cache.end()) return it->second;
            EnvElement acc = Pbw::unit();
            for (auto l : w) acc = out.U->multiply(acc, img[l]);
            return cache.emplace(w, acc).first->second;
        };
        for (int k = 0; k < order; ++k) {
            J[k] = EnvTensor();
            for (const auto& [ws, c] : Jg[k]) J[k] += tensor_product(as_tensor(word(ws[0])), as_tensor(word(ws[1]))).scaled(c);
        }
    }
    out.hopf = std::make_shared<const TwistedHopf>(out.U, J, omega);
    return out;
}

std::vector<CheckResult> qt_suite(const LieBialgebra& a, const QtQuantization& q, bool triangular) {
    std::vector<CheckResult> out = hopf_suite(*q.hopf, 2, a.dim);
    for (auto& c : quasitriangular_suite(*q.hopf, q.r, a.dim)) out.push_back(c);
    std::vector<EnvTensor> delta;
    for (int p = 0; p < a.dim; ++p) {
        EnvTensor d;
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < a.dim; ++k) d.add({Word{std::uint8_t(j)}, Word{std::uint8_t(k)}}, a.f(p, j, k));
        delta.push_back(d);
    }
    for (auto& c : quasiclassical_suite(*q.hopf, q.r, delta, "uea")) out.push_back(c);
    if (triangular) {
        const Pbw& U = *q.U;
        TSeries p = series_mul(U, op(q.hopf->R()), q.hopf->R());
        TSeries one(q.hopf->order());
        one[0] = Pbw::unit(2);
        out.push_back({"triangularity", "R^op R = 1", is_zero(p - one), is_zero(p - one) ? "" : describe(p - one)});
    }
    return out;
}

std::vector<CheckResult> tau_check(const LieBialgebra& a, const Matrix& r) {
    require_square(r, a.dim);
    Collector col;
    DoubleAlgebra d = build_double(a);
    int n = a.dim;
    LieAlgebra la = a.lie();
    auto tau = [&](int u) {
        Lin<int> x;
        if (u < n)
            x.add(u, 1);
        else
            for (int q = 0; q < n; ++q) x.add(q, r[u - n][q]);
        return x;
    };
    auto tau_lin = [&](const Lin<int>& v) {
        Lin<int> x;
        for (const auto& [u, c] : v) x.add_scaled(tau(u), c);
        return x;
    };
    for (int u = 0; u < 2 * n; ++u)
        for (int v = 0; v < 2 * n; ++v) {
            Lin<int> diff = tau_lin(d.g.bracket(u, v)) - la.bracket(tau(u), tau(v));
            std::string w;
            if (!diff.is_zero()) w = "basis pair (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")";
            col.check("tau-homomorphism", "tau([x,y]) = [tau x, tau y]", diff.is_zero(), w);
        }
    Matrix img = zero_matrix(n);
    for (const auto& [uv, c] : d.r)
        for (const auto& [p, x] : tau(uv.first))
            for (const auto& [q, y] : tau(uv.second)) img[p][q] = img[p][q] + c * x * y;
    col.check("tau-r", "(tau (x) tau)(r~) = r", img == r, "");
    bool id = true;
    for (int i = 0; i < n; ++i) id = id && tau(i) == Lin<int>(i, 1);
    col.check("tau-restriction", "tau restricted to a is the identity", id, "");
    return col.out;
}

}  // namespace ekq
