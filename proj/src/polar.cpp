#include "ekq/polar.hpp"

namespace ekq {

namespace {

ModSeries lift_mod(const Lin<Word>& v, int order) {
    ModSeries s(order);
    s[0] = v;
    return s;
}

// x0 is applied through phi^-1 of the two slots in `pair`; `keep` is the remaining slot
ESeries m_common(const VermaModules& M, const ModSeries& x0, bool minus) {
    int order = x0.order();
    MultiVector one({Slot::Plus, minus ? Slot::Minus : Slot::Plus, Slot::Minus});
    one.add({Word{}, Word{}, Word{}}, 1);
    VSeries s = phi_apply(M, {{0}, {1}, {2}}, lift(one, order), minus);
    std::map<std::pair<Word, Word>, EnvElement> cache;
    auto inv = [&](const Word& p, const Word& m) -> const EnvElement& {
        auto key = std::make_pair(p, m);
        auto it = cache.find(key);
        if (it == cache.end()) {
            MultiVector b({Slot::Plus, Slot::Minus});
            b.add({p, m}, 1);
            it = cache.emplace(key, M.phi_inverse(b)).first;
        }
        return it->second;
    };
    std::vector<MultiVector> out(order, MultiVector({Slot::Plus, Slot::Minus}));
    for (int k = 0; k < order; ++k) {
        if (s[k].kinds.empty()) continue;
        for (const auto& [ws, c] : s[k].terms) {
            const EnvElement& u = minus ? inv(ws[0], ws[1]) : inv(ws[1], ws[2]);
            for (int m = 0; k + m < order; ++m) {
                if (x0[m].is_zero()) continue;
                Lin<Word> y = minus ? M.act_plus(u, x0[m]) : M.act_minus(u, x0[m]);
                for (const auto& [w, d] : y) {
                    if (minus)
                        out[k + m].add({w, ws[2]}, c * d);
                    else
                        out[k + m].add({ws[0], w}, c * d);
                }
            }
        }
    }
    ESeries r(order);
    for (int k = 0; k < order; ++k) r[k] = M.phi_inverse(out[k]);
    return r;
}

ModSeries act_series(const VermaModules& M, const ESeries& u, const ModSeries& x, bool plus) {
    int order = x.order();
    ModSeries out(order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; i + j < order; ++j)
            out[i + j] += plus ? M.act_plus(u[i], x[j]) : M.act_minus(u[i], x[j]);
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

TSeries to_tseries(const ESeries& e) {
    return e.map([](const EnvElement& x) { return as_tensor(x); });
}

}  // namespace

ESeries m_minus(const VermaModules& M, const ModSeries& x0) { return m_common(M, x0, true); }
ESeries m_plus(const VermaModules& M, const ModSeries& x0) { return m_common(M, x0, false); }

int rank(const std::vector<EnvElement>& xs) {
    std::vector<std::map<Word, Rational>> rows;
    for (const auto& x : xs) {
        std::map<Word, Rational> r;
        for (const auto& [w, c] : x) r[w] = c;
        if (!r.empty()) rows.push_back(std::move(r));
    }
    int rk = 0;
    while (!rows.empty()) {
        auto pivot_row = std::move(rows.back());
        rows.pop_back();
        if (pivot_row.empty()) continue;
        ++rk;
        auto [pw, pc] = *pivot_row.begin();
        for (auto& r : rows) {
            auto it = r.find(pw);
            if (it == r.end()) continue;
            Rational f = it->second / pc;
            for (const auto& [w, c] : pivot_row) {
                Rational v = r[w] - f * c;
                if (v.is_zero())
                    r.erase(w);
                else
                    r[w] = v;
            }
        }
    }
    return rk;
}

std::vector<CheckResult> part1_product_check(const VermaModules& M, int max_degree, int order) {
    Collector col;
    const Pbw& U = M.U();
    int n = M.n();
    auto pw = sorted_words(n, 2 * n, max_degree);
    auto pwords = sorted_words_upto(n, 2 * n, max_degree);
    auto mwords = sorted_words_upto(0, n, max_degree);
    std::map<Word, ESeries> mm, mp;
    for (const auto& w : pwords) mm.emplace(w, m_minus(M, lift_mod(Lin<Word>(w, 1), order)));
    for (const auto& w : mwords) mp.emplace(w, m_plus(M, lift_mod(Lin<Word>(w, 1), order)));

    ESeries one(order);
    one[0] = Pbw::unit();
    col.check("m-unit", "m_-(1+) = m_+(1-) = 1", mm.at(Word{}) == one && mp.at(Word{}) == one,
              describe(to_tseries(mm.at(Word{}) - one)));
    for (const auto& w : pwords) {
        EnvElement c = EnvElement(w, 1);
        col.check("m-minus-classical", "m_-(x) = m_-^0(x) mod h", mm.at(w)[0] == c, describe(as_tensor(mm.at(w)[0] - c)));
    }
    for (const auto& w : mwords) {
        EnvElement c = EnvElement(w, 1);
        col.check("m-plus-classical", "m_+(x) = m_+^0(x) mod h", mp.at(w)[0] == c, describe(as_tensor(mp.at(w)[0] - c)));
    }
    for (const auto& x : pwords)
        for (const auto& y : pwords) {
            if (int(x.size() + y.size()) > max_degree) continue;
            ModSeries z0 = act_series(M, mm.at(y), lift_mod(Lin<Word>(x, 1), order), true);
            ESeries lhs = series_mul(U, mm.at(y), mm.at(x));
            ESeries rhs = m_minus(M, z0);
            col.check("m-minus-closure", "m_-(x) m_-(y) = m_-(z)", lhs == rhs, describe(to_tseries(lhs - rhs)));
        }
    for (const auto& x : mwords)
        for (const auto& y : mwords) {
            if (int(x.size() + y.size()) > max_degree) continue;
            ModSeries z0 = act_series(M, mp.at(y), lift_mod(Lin<Word>(x, 1), order), false);
            ESeries lhs = series_mul(U, mp.at(y), mp.at(x));
            ESeries rhs = m_plus(M, z0);
            col.check("m-plus-closure", "m_+(x) m_+(y) = m_+(z)", lhs == rhs, describe(to_tseries(lhs - rhs)));
        }
    std::vector<EnvElement> prods;
    for (const auto& a : mwords)
        for (const auto& b : pwords)
            if (int(a.size() + b.size()) <= max_degree) prods.push_back(U.multiply(mp.at(a)[0], mm.at(b)[0]));
    int want = int(sorted_words_upto(0, 2 * n, max_degree).size());
    int got = rank(prods);
    col.check("factorization", "U(g+) (x) U(g-) -> U(g) bijective mod h", got == want && int(prods.size()) == want,
              "rank " + std::to_string(got) + " of " + std::to_string(want));
    (void)pw;
    return col.out;
}

Polarization polarize_R(const QuantizedDouble& q) {
    const VermaModules& M = q.modules();
    const Pbw& U = q.U();
    int order = q.order();
    Polarization p;
    p.K = twist_element(M, -1, order);
    TSeries X = series_mul(U, series_inverse(U, p.K), exp_half(U, to_env(q.dbl().omega), order));
    std::map<Word, ESeries> nu_m, nu_p;
    auto nu_minus = [&](const Word& w) -> const ESeries& {
        auto it = nu_m.find(w);
        if (it == nu_m.end()) it = nu_m.emplace(w, m_plus(M, lift_mod(Lin<Word>(w, 1), order))).first;
        return it->second;
    };
    auto nu_plus = [&](const Word& w) -> const ESeries& {
        auto it = nu_p.find(w);
        if (it == nu_p.end()) it = nu_p.emplace(w, m_minus(M, lift_mod(Lin<Word>(w, 1), order))).first;
        return it->second;
    };
    p.R_tilde = TSeries(order);
    Lin<Word> vac(Word{}, 1);
    for (int k = 0; k < order; ++k)
        for (const auto& [ws, c] : X[k]) {
            Lin<Word> l = M.act_minus(EnvElement(ws[0], 1), vac);
            Lin<Word> r = M.act_plus(EnvElement(ws[1], 1), vac);
            for (const auto& [u, a] : l)
                for (const auto& [v, b] : r) {
                    const ESeries& x = nu_minus(u);
                    const ESeries& y = nu_plus(v);
                    for (int i = 0; k + i < order; ++i)
                        for (int j = 0; k + i + j < order; ++j)
                            for (const auto& [s, d] : x[i])
                                for (const auto& [t, e] : y[j]) p.R_tilde[k + i + j].add({s, t}, c * a * b * d * e);
                }
        }
    TSeries diff = p.R_tilde - q.R();
    p.result = {"polarization", "R~ = (nu(x)nu)(K^-1 e^{h Omega/2}(1- (x) 1+)) = R", is_zero(diff), is_zero(diff) ? "" : describe(diff)};
    return p;
}

}  // namespace ekq
