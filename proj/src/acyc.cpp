#include "ekq/acyc.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace ekq {

std::pair<int, int> primitive_arity(const std::string& name) {
    if (name == "mu") return {2, 1};
    if (name == "delta") return {1, 2};
    if (name == "r") return {0, 2};
    if (name == "unit") return {0, 1};
    throw AcycError("unknown primitive '" + name + "'");
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expr parse() {
        Expr e = expr();
        ws();
        if (i_ != s_.size()) throw ParseError(i_, "trailing input");
        return e;
    }

private:
    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        ws();
        return i_ < s_.size() && s_[i_] == c;
    }
    void expect(char c) {
        ws();
        if (i_ >= s_.size() || s_[i_] != c) throw ParseError(i_, std::string("expected '") + c + "'");
        ++i_;
    }
    std::string ident() {
        ws();
        std::size_t st = i_;
        while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
        return s_.substr(st, i_ - st);
    }
    long integer() {
        ws();
        std::size_t st = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (st == i_) throw ParseError(st, "expected an integer");
        if (i_ - st > 9) throw ParseError(st, "integer too large");
        return std::stol(s_.substr(st, i_ - st));
    }
    // [sign] digits [/ digits] '*', or nothing
    Rational weight() {
        ws();
        std::size_t st = i_, j = i_;
        if (j < s_.size() && (s_[j] == '-' || s_[j] == '+')) ++j;
        std::size_t d = j;
        while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '/')) ++j;
        if (j == d) {
            if (j != st) throw ParseError(st, "expected a rational weight");
            return Rational(1);
        }
        std::size_t k = j;
        while (k < s_.size() && std::isspace(static_cast<unsigned char>(s_[k]))) ++k;
        if (k >= s_.size() || s_[k] != '*') throw ParseError(k, "expected '*' after weight");
        Rational q;
        try {
            q = Rational::parse(s_.substr(st, j - st));
        } catch (const std::exception&) {
            throw ParseError(st, "malformed rational weight");
        }
        i_ = k + 1;
        return q;
    }
    std::vector<Expr> args() {
        std::vector<Expr> kids;
        expect('(');
        kids.push_back(expr());
        while (peek(',')) {
            ++i_;
            kids.push_back(expr());
        }
        expect(')');
        return kids;
    }
    Expr expr() {
        ws();
        std::size_t st = i_;
        std::string name = ident();
        Expr e;
        if (name.empty()) throw ParseError(st, "expected an expression");
        if (name == "mu" || name == "delta" || name == "r" || name == "unit") {
            e.kind = Expr::Kind::Prim;
            e.prim = name;
        } else if (name == "id") {
            e.kind = Expr::Kind::Id;
            if (peek('<')) {
                ++i_;
                e.k = int(integer());
                expect('>');
            } else {
                e.k = int(integer());
            }
        } else if (name == "perm") {
            e.kind = Expr::Kind::Perm;
            expect('[');
            while (!peek(']')) {
                if (i_ >= s_.size()) throw ParseError(i_, "unterminated permutation");
                if (peek(',')) ++i_;
                std::size_t p = i_;
                long v = integer();
                if (v < 1) throw ParseError(p, "permutation entries are 1-based");
                e.perm.push_back(int(v - 1));
            }
            expect(']');
            if (!perm_valid(e.perm)) throw ParseError(st, "not a permutation");
        } else if (name == "tensor" || name == "comp") {
            e.kind = name == "tensor" ? Expr::Kind::Tensor : Expr::Kind::Compose;
            e.kids = args();
        } else if (name == "sum") {
            e.kind = Expr::Kind::Sum;
            expect('(');
            do {
                if (peek(',')) ++i_;
                e.weights.push_back(weight());
                e.kids.push_back(expr());
            } while (peek(','));
            expect(')');
        } else {
            throw ParseError(st, "unknown name '" + name + "'");
        }
        return e;
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

std::string kind_name(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Prim: return e.prim;
        case Expr::Kind::Perm: return "perm";
        case Expr::Kind::Id: return "id";
        case Expr::Kind::Tensor: return "tensor";
        case Expr::Kind::Compose: return "comp";
        case Expr::Kind::Sum: return "sum";
    }
    return "?";
}

void validate_at(Expr& e, const std::string& path) {
    std::string here = path.empty() ? kind_name(e) : path + "/" + kind_name(e);
    for (std::size_t i = 0; i < e.kids.size(); ++i) validate_at(e.kids[i], here + "[" + std::to_string(i + 1) + "]");
    switch (e.kind) {
        case Expr::Kind::Prim: std::tie(e.in, e.out) = primitive_arity(e.prim); break;
        case Expr::Kind::Perm: e.in = e.out = int(e.perm.size()); break;
        case Expr::Kind::Id:
            if (e.k < 0) throw AcycError("negative identity arity at " + here);
            e.in = e.out = e.k;
            break;
        case Expr::Kind::Tensor:
            if (e.kids.empty()) throw AcycError("empty tensor at " + here);
            e.in = e.out = 0;
            for (const auto& c : e.kids) e.in += c.in, e.out += c.out;
            break;
        case Expr::Kind::Compose:
            if (e.kids.empty()) throw AcycError("empty composition at " + here);
            for (std::size_t i = 0; i + 1 < e.kids.size(); ++i)
                if (e.kids[i].in != e.kids[i + 1].out)
                    throw AcycError("arity mismatch at " + here + ": child " + std::to_string(i + 1) + " takes " +
                                    std::to_string(e.kids[i].in) + " inputs but child " + std::to_string(i + 2) +
                                    " produces " + std::to_string(e.kids[i + 1].out));
            e.in = e.kids.back().in;
            e.out = e.kids.front().out;
            break;
        case Expr::Kind::Sum:
            if (e.kids.empty()) throw AcycError("empty sum at " + here);
            if (e.weights.size() != e.kids.size()) throw AcycError("weights do not match terms at " + here);
            e.in = e.kids[0].in;
            e.out = e.kids[0].out;
            for (std::size_t i = 1; i < e.kids.size(); ++i)
                if (e.kids[i].in != e.in || e.kids[i].out != e.out)
                    throw AcycError("arity mismatch at " + here + ": term " + std::to_string(i + 1) + " has arity (" +
                                    std::to_string(e.kids[i].in) + "," + std::to_string(e.kids[i].out) + "), expected (" +
                                    std::to_string(e.in) + "," + std::to_string(e.out) + ")");
            break;
    }
}

}  // namespace

void validate(Expr& e) { validate_at(e, ""); }

Expr parse_expr(const std::string& text) {
    Expr e = Parser(text).parse();
    validate(e);
    return e;
}

std::string print(const Expr& e) {
    std::string s;
    auto list = [&](const std::string& head) {
        s = head + "(";
        for (std::size_t i = 0; i < e.kids.size(); ++i) {
            if (i) s += ", ";
            if (e.kind == Expr::Kind::Sum) s += e.weights[i].str() + "*";
            s += print(e.kids[i]);
        }
        return s + ")";
    };
    switch (e.kind) {
        case Expr::Kind::Prim: return e.prim;
        case Expr::Kind::Id: return "id" + std::to_string(e.k);
        case Expr::Kind::Perm:
            s = "perm[";
            for (std::size_t i = 0; i < e.perm.size(); ++i) s += (i ? " " : "") + std::to_string(e.perm[i] + 1);
            return s + "]";
        case Expr::Kind::Tensor: return list("tensor");
        case Expr::Kind::Compose: return list("comp");
        case Expr::Kind::Sum: return list("sum");
    }
    return s;
}

Structure structure_lba(const LieBialgebra& g) {
    Structure s{"lba", g.dim, {}};
    SparseTensor mu(2, 1, g.dim), delta(1, 2, g.dim);
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j)
            for (int k = 0; k < g.dim; ++k) {
                mu.add({i, j, k}, g.c(i, j, k));
                delta.add({i, j, k}, g.f(i, j, k));
            }
    s.prims.emplace("mu", mu);
    s.prims.emplace("delta", delta);
    return s;
}

namespace {

SparseTensor r_tensor(const Matrix& r, int dim) {
    if (int(r.size()) != dim) throw AcycError("r has the wrong size");
    SparseTensor t(0, 2, dim);
    for (int p = 0; p < dim; ++p)
        for (int q = 0; q < dim; ++q) t.add({p, q}, r[p][q]);
    return t;
}

}  // namespace

Structure structure_qtlba(const LieBialgebra& g, const Matrix& r) {
    Structure s{"qtlba", g.dim, {}};
    SparseTensor mu(2, 1, g.dim);
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j)
            for (int k = 0; k < g.dim; ++k) mu.add({i, j, k}, g.c(i, j, k));
    s.prims.emplace("mu", mu);
    s.prims.emplace("r", r_tensor(r, g.dim));
    return s;
}

Structure structure_cyba(const AssocAlgebra& A, const Matrix& r) {
    Structure s{"cyba", A.dim, {}};
    SparseTensor mu(2, 1, A.dim), unit(0, 1, A.dim);
    for (int i = 0; i < A.dim; ++i) {
        unit.add({i}, A.unit[i]);
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k) mu.add({i, j, k}, A.m(i, j, k));
    }
    s.prims.emplace("mu", mu);
    s.prims.emplace("unit", unit);
    s.prims.emplace("r", r_tensor(r, A.dim));
    return s;
}

SparseTensor evaluate(const Expr& e, const Structure& s) {
    switch (e.kind) {
        case Expr::Kind::Prim: {
            auto it = s.prims.find(e.prim);
            if (it == s.prims.end())
                throw AcycError("primitive '" + e.prim + "' is not part of the " + s.signature + " signature");
            return it->second;
        }
        case Expr::Kind::Perm: return SparseTensor::permutation(e.perm, s.dim);
        case Expr::Kind::Id: return SparseTensor::identity(e.k, s.dim);
        case Expr::Kind::Tensor: {
            SparseTensor t = evaluate(e.kids[0], s);
            for (std::size_t i = 1; i < e.kids.size(); ++i) t = tensor(t, evaluate(e.kids[i], s));
            return t;
        }
        case Expr::Kind::Compose: {
            SparseTensor t = evaluate(e.kids.back(), s);
            for (std::size_t i = e.kids.size() - 1; i-- > 0;) t = compose(evaluate(e.kids[i], s), t);
            return t;
        }
        case Expr::Kind::Sum: {
            SparseTensor t(e.in, e.out, s.dim);
            for (std::size_t i = 0; i < e.kids.size(); ++i) t += evaluate(e.kids[i], s).scaled(e.weights[i]);
            return t;
        }
    }
    throw AcycError("unreachable");
}

const std::vector<BankEntry>& universal_bank() {
    static const std::vector<BankEntry> bank = [] {
        const std::string T3 = "comp(tensor(mu, id2), perm[1 3 2 4], tensor(delta, delta))";
        const std::string T2 = "comp(tensor(mu, id1), tensor(id1, mu, id1), tensor(delta, delta))";
        const std::string A = "sum(1*comp(tensor(mu, id1), tensor(id1, delta)), 1*comp(tensor(id1, mu), perm[2 1 3], tensor(id1, delta)))";
        const std::string r12 = "tensor(r, unit)", r23 = "tensor(unit, r)", r13 = "comp(perm[1 3 2], tensor(r, unit))";
        const std::string M3 = "tensor(mu, mu, mu), perm[1 3 5 2 4 6]";
        auto comm = [&](const std::string& x, const std::string& y) {
            return "comp(" + M3 + ", sum(1*tensor(" + x + ", " + y + "), -1*tensor(" + y + ", " + x + ")))";
        };
        std::vector<BankEntry> v;
        v.push_back({"antisymmetry", "lba", "identity", {"sum(1*mu, 1*comp(mu, perm[2 1]))"}, "[x,y] + [y,x]"});
        v.push_back({"co-antisymmetry", "lba", "identity", {"sum(1*delta, 1*comp(perm[2 1], delta))"}, "delta + delta^op"});
        v.push_back({"jacobi", "lba", "identity",
                     {"comp(mu, tensor(mu, id1), sum(1*id3, 1*perm[3 1 2], 1*perm[2 3 1]))"},
                     "[[x,y],z] + cyclic"});
        v.push_back({"co-jacobi", "lba", "identity",
                     {"comp(sum(1*id3, 1*perm[2 3 1], 1*perm[3 1 2]), tensor(delta, id1), delta)"},
                     "(1 + c + c^2)(delta (x) 1)delta"});
        v.push_back({"cocycle", "lba", "identity", {"sum(1*comp(delta, mu), -1*" + A + ", 1*comp(" + A + ", perm[2 1]))"},
                     "delta([x,y]) - x.delta(y) + y.delta(x)"});
        v.push_back({"cybe", "cyba", "identity",
                     {"sum(1*" + comm(r12, r13) + ", 1*" + comm(r12, r23) + ", 1*" + comm(r13, r23) + ")"},
                     "[r12,r13] + [r12,r23] + [r13,r23]"});
        v.push_back({"mu2_11", "lba", "symmetric",
                     {"sum(1/48*comp(mu, " + T2 + "), 1/144*comp(mu, tensor(mu, id1), " + T3 + "), 1/144*comp(mu, tensor(id1, mu), " + T3 + "))",
                      "comp(sum(1/48*id2, 1/48*perm[2 1]), sum(1*" + T2 + ", 1/2*comp(tensor(mu, id1), " + T3 +
                          "), 1/2*comp(tensor(mu, id1), perm[3 1 2], " + T3 + "), 1/2*comp(tensor(mu, id1), perm[1 3 2], " + T3 + ")))",
                      "comp(sum(1/144*id3, 1/144*perm[1 3 2], 1/144*perm[2 1 3], 1/144*perm[2 3 1], 1/144*perm[3 1 2], 1/144*perm[3 2 1]), " +
                          T3 + ")"},
                     "h^2 coefficient of a_p * a_q in symmetrized coordinates"});
        for (auto& e : v)
            for (auto& p : e.parts) p = print(parse_expr(p));
        return v;
    }();
    return bank;
}

const BankEntry& bank_entry(const std::string& name) {
    for (const auto& e : universal_bank())
        if (e.name == name) return e;
    throw AcycError("no bank entry named '" + name + "'");
}

namespace {

EnvElement word_value(const Pbw& U, const std::vector<int>& t) {
    Word w;
    for (int x : t) w.push_back(std::uint8_t(x));
    return U.normal_order(w);
}

}  // namespace

EnvElement from_symmetric(const Pbw& U, const SymCoords& s) {
    EnvElement out;
    for (const auto& [deg, t] : s)
        for (const auto& [idx, c] : t) out.add_scaled(word_value(U, idx), c);
    return out;
}

SymCoords to_symmetric(const Pbw& U, const EnvElement& x) {
    SymCoords out;
    EnvElement rest = U.normal_form(x);
    while (!rest.is_zero()) {
        std::size_t k = 0;
        for (const auto& [w, c] : rest) k = std::max(k, w.size());
        Lin<std::vector<int>> top;
        Rational fact = 1;
        for (std::size_t i = 2; i <= k; ++i) fact = fact * Rational(long(i));
        for (const auto& [w, c] : rest) {
            if (w.size() != k) continue;
            std::vector<int> idx(w.begin(), w.end());
            std::vector<int> order(k);
            std::iota(order.begin(), order.end(), 0);
            do {
                std::vector<int> t(k);
                for (std::size_t i = 0; i < k; ++i) t[i] = idx[order[i]];
                top.add(t, c / fact);
            } while (std::next_permutation(order.begin(), order.end()));
        }
        SymCoords one{{int(k), top}};
        rest -= from_symmetric(U, one);
        out[int(k)] += top;
    }
    return out;
}

EnvElement evaluate_symmetric(const BankEntry& e, const Structure& s, const std::vector<int>& inputs, const Pbw& U) {
    if (e.kind != "symmetric") throw AcycError("bank entry '" + e.name + "' is not a symmetric expression");
    SymCoords sc;
    for (const auto& p : e.parts) {
        Expr ex = parse_expr(p);
        if (ex.in != int(inputs.size())) throw AcycError("wrong number of inputs for '" + e.name + "'");
        SparseTensor t = evaluate(ex, s);
        for (const auto& [idx, c] : t.entries()) {
            if (!std::equal(inputs.begin(), inputs.end(), idx.begin())) continue;
            sc[ex.out].add(std::vector<int>(idx.begin() + ex.in, idx.end()), c);
        }
    }
    return from_symmetric(U, sc);
}

namespace {

// f applied to every index of a tuple
Lin<std::vector<int>> push_tuple(const BialgebraHom& f, const std::vector<int>& t) {
    Lin<std::vector<int>> acc(std::vector<int>{}, 1);
    for (int x : t) {
        Lin<std::vector<int>> next;
        for (const auto& [u, c] : acc)
            for (int y = 0; y < f.target.dim; ++y) {
                const Rational& m = f.matrix[y][x];
                if (m.is_zero()) continue;
                auto u2 = u;
                u2.push_back(y);
                next.add(u2, c * m);
            }
        acc = std::move(next);
    }
    return acc;
}

std::vector<std::vector<int>> all_tuples(int dim, int k) {
    std::vector<std::vector<int>> out{{}};
    for (int i = 0; i < k; ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& t : out)
            for (int x = 0; x < dim; ++x) {
                auto t2 = t;
                t2.push_back(x);
                next.push_back(t2);
            }
        out = std::move(next);
    }
    return out;
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

}  // namespace

std::vector<CheckResult> naturality_check(const BialgebraHom& f) {
    if (!check_hom(f).empty()) throw AcycError("'" + f.name + "' is not a Lie bialgebra morphism");
    Collector col;
    Structure s1 = structure_lba(f.source), s2 = structure_lba(f.target);
    for (const auto& e : universal_bank()) {
        if (e.signature != "lba") continue;
        for (std::size_t pi = 0; pi < e.parts.size(); ++pi) {
            Expr ex = parse_expr(e.parts[pi]);
            SparseTensor t1 = evaluate(ex, s1), t2 = evaluate(ex, s2);
            Lin<std::vector<int>> lhs, rhs;
            for (const auto& [idx, c] : t1.entries()) {
                std::vector<int> in(idx.begin(), idx.begin() + ex.in), out(idx.begin() + ex.in, idx.end());
                for (const auto& [o, d] : push_tuple(f, out)) {
                    auto k = in;
                    k.insert(k.end(), o.begin(), o.end());
                    lhs.add(k, c * d);
                }
            }
            std::map<std::vector<int>, std::vector<std::pair<std::vector<int>, Rational>>> by_in;
            for (const auto& [idx, c] : t2.entries())
                by_in[std::vector<int>(idx.begin(), idx.begin() + ex.in)].push_back({std::vector<int>(idx.begin() + ex.in, idx.end()), c});
            for (const auto& t : all_tuples(f.source.dim, ex.in))
                for (const auto& [u, d] : push_tuple(f, t)) {
                    auto it = by_in.find(u);
                    if (it == by_in.end()) continue;
                    for (const auto& [o, c] : it->second) {
                        auto k = t;
                        k.insert(k.end(), o.begin(), o.end());
                        rhs.add(k, c * d);
                    }
                }
            Lin<std::vector<int>> diff = lhs - rhs;
            std::string w;
            if (!diff.is_zero()) w = e.name + " part " + std::to_string(pi + 1) + ": " + std::to_string(diff.size()) + " nonzero entries";
            col.check("naturality", "f after T = T after f for every universal expression", diff.is_zero(), w);
        }
    }
    return col.out;
}

EnvElement apply_sf(const BialgebraHom& f, const Pbw& Us, const Pbw& Ut, const EnvElement& x) {
    SymCoords s = to_symmetric(Us, x), t;
    for (const auto& [deg, v] : s)
        for (const auto& [idx, c] : v)
            for (const auto& [u, d] : push_tuple(f, idx)) t[deg].add(u, c * d);
    return from_symmetric(Ut, t);
}

std::vector<CheckResult> functoriality_check(const BialgebraHom& f, int max_degree, int order) {
    if (!check_hom(f).empty()) throw AcycError("'" + f.name + "' is not a Lie bialgebra morphism");
    Collector col;
    QuantizedUEA q1(f.source, order), q2(f.target, order);
    const Pbw &U1 = q1.Ua(), &U2 = q2.Ua();
    std::map<Word, EnvElement> cache;
    auto sf = [&](const EnvElement& x) {
        EnvElement out;
        for (const auto& [w, c] : x) {
            auto it = cache.find(w);
            if (it == cache.end()) it = cache.emplace(w, apply_sf(f, U1, U2, EnvElement(w, 1))).first;
            out.add_scaled(it->second, c);
        }
        return out;
    };
    auto words = sorted_words_upto(0, f.source.dim, max_degree);
    for (const auto& x : words)
        for (const auto& y : words) {
            ESeries lhs = q1.product(EnvElement(x, 1), EnvElement(y, 1)).map(sf);
            ESeries rhs = q2.product(sf(EnvElement(x, 1)), sf(EnvElement(y, 1)));
            ESeries d = lhs - rhs;
            col.check("functoriality-product", "Sf(x * y) = Sf(x) * Sf(y)", is_zero(d),
                      describe(d.map([](const EnvElement& e) { return as_tensor(e); })));
        }
    for (const auto& x : words) {
        TSeries d1 = q1.coproduct(EnvElement(x, 1));
        TSeries lhs = d1.map([&](const EnvTensor& t) {
            EnvTensor out;
            for (const auto& [ws, c] : t) out += tensor_product(as_tensor(sf(EnvElement(ws[0], 1))), as_tensor(sf(EnvElement(ws[1], 1)))).scaled(c);
            return out;
        });
        TSeries rhs = q2.coproduct(sf(EnvElement(x, 1)));
        col.check("functoriality-coproduct", "(Sf (x) Sf) D(x) = D(Sf x)", is_zero(lhs - rhs), describe(lhs - rhs));
    }
    return col.out;
}

}  // namespace ekq
