#include "ekq/verma.hpp"

#include <algorithm>
#include <numeric>

namespace ekq {

MultiVector::MultiVector(std::vector<Slot> k, std::vector<int> b) : kinds(std::move(k)), bounds(std::move(b)) {
    if (bounds.empty()) bounds.assign(kinds.size(), 0);
    if (bounds.size() != kinds.size()) throw VermaError("bounds do not match slots");
}

void MultiVector::add(const std::vector<Word>& ws, const Rational& c) {
    if (int(ws.size()) != arity()) throw VermaError("term arity does not match slots");
    for (int s = 0; s < arity(); ++s)
        if (kinds[s] == Slot::Dual && int(ws[s].size()) > bounds[s]) return;
    terms.add(ws, c);
}

void MultiVector::prune() {
    bool need = false;
    for (int s = 0; s < arity(); ++s) need |= kinds[s] == Slot::Dual;
    if (!need) return;
    terms = terms.filtered([&](const std::vector<Word>& ws) {
        for (int s = 0; s < arity(); ++s)
            if (kinds[s] == Slot::Dual && int(ws[s].size()) > bounds[s]) return false;
        return true;
    });
}

MultiVector& MultiVector::operator+=(const MultiVector& o) {
    if (o.kinds.empty() && o.terms.is_zero()) return *this;
    if (kinds.empty() && terms.is_zero()) return *this = o;
    if (kinds != o.kinds) throw VermaError("adding vectors of different slot types");
    bool lowered = false;
    for (int s = 0; s < arity(); ++s)
        if (o.bounds[s] < bounds[s] && kinds[s] == Slot::Dual) {
            bounds[s] = o.bounds[s];
            lowered = true;
        }
    terms += o.terms;
    if (lowered || bounds != o.bounds) prune();
    return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& o) { return *this += o.scaled(-1); }

MultiVector MultiVector::scaled(const Rational& c) const {
    MultiVector out(kinds, bounds);
    out.terms = terms.scaled(c);
    return out;
}

MultiVector tensor(const MultiVector& x, const MultiVector& y) {
    auto kinds = x.kinds;
    kinds.insert(kinds.end(), y.kinds.begin(), y.kinds.end());
    auto bounds = x.bounds;
    bounds.insert(bounds.end(), y.bounds.begin(), y.bounds.end());
    MultiVector out(kinds, bounds);
    for (const auto& [u, a] : x.terms)
        for (const auto& [v, b] : y.terms) {
            auto ws = u;
            ws.insert(ws.end(), v.begin(), v.end());
            out.terms.add(ws, a * b);
        }
    return out;
}

static std::vector<int> plus_rank(int n) {
    std::vector<int> r(2 * n);
    for (int i = 0; i < n; ++i) {
        r[i] = n + i;
        r[n + i] = i;
    }
    return r;
}

VermaModules::VermaModules(DoubleAlgebra d) : d_(std::move(d)), ug_(d_.g), uplus_(d_.g, plus_rank(d_.n)) {}

Lin<Word> VermaModules::act_plus(int x, const Word& w) const {
    Word full{std::uint8_t(x)};
    full.insert(full.end(), w.begin(), w.end());
    // b-letters come first; anything ending in an a-letter kills 1+
    return uplus_.normal_order(full).filtered([&](const Word& v) { return v.empty() || !d_.is_a(v.back()); });
}

Lin<Word> VermaModules::act_minus(int x, const Word& w) const {
    Word full{std::uint8_t(x)};
    full.insert(full.end(), w.begin(), w.end());
    return ug_.normal_order(full).filtered([&](const Word& v) { return v.empty() || d_.is_a(v.back()); });
}

template <class F>
static Lin<Word> act_elem(const EnvElement& x, const Lin<Word>& v, F&& gen_act) {
    Lin<Word> out;
    for (const auto& [w, c] : x) {
        Lin<Word> cur = v;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            Lin<Word> next;
            for (const auto& [u, d] : cur) next.add_scaled(gen_act(int(*it), u), d);
            cur = std::move(next);
        }
        out.add_scaled(cur, c);
    }
    return out;
}

Lin<Word> VermaModules::act_plus(const EnvElement& x, const Lin<Word>& v) const {
    return act_elem(x, v, [&](int g, const Word& u) { return act_plus(g, u); });
}

Lin<Word> VermaModules::act_minus(const EnvElement& x, const Lin<Word>& v) const {
    return act_elem(x, v, [&](int g, const Word& u) { return act_minus(g, u); });
}

const std::vector<Word>& VermaModules::plus_basis(int k) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = basis_cache_.find(k);
    if (it == basis_cache_.end()) it = basis_cache_.emplace(k, sorted_words_upto(n(), 2 * n(), k)).first;
    return it->second;
}

const std::map<Word, Lin<Word>>& VermaModules::dual_table(int x, int new_bound) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = dual_cache_.find({x, new_bound});
        if (it != dual_cache_.end()) return it->second;
    }
    std::map<Word, Lin<Word>> table;
    for (const auto& v : plus_basis(new_bound))
        for (const auto& [beta, c] : act_plus(x, v)) table[beta].add(v, -c);
    std::lock_guard<std::mutex> lk(mu_);
    return dual_cache_.emplace(std::make_pair(x, new_bound), std::move(table)).first->second;
}

Lin<Word> VermaModules::dual_act(int x, const Word& beta, int new_bound) const {
    if (new_bound < 0) return {};
    const auto& t = dual_table(x, new_bound);
    auto it = t.find(beta);
    return it == t.end() ? Lin<Word>() : it->second;
}

MultiVector VermaModules::act_slot(int x, int slot, const MultiVector& v) const {
    MultiVector out(v.kinds, v.bounds);
    Slot kind = v.kinds.at(slot);
    if (kind == Slot::Dual) out.bounds[slot] = lowered_bound(x, v.bounds[slot]);
    for (const auto& [ws, c] : v.terms) {
        Lin<Word> img;
        if (kind == Slot::Plus)
            img = act_plus(x, ws[slot]);
        else if (kind == Slot::Minus)
            img = act_minus(x, ws[slot]);
        else
            img = dual_act(x, ws[slot], out.bounds[slot]);
        for (const auto& [w, d] : img) {
            auto ns = ws;
            ns[slot] = w;
            out.terms.add(ns, c * d);
        }
    }
    return out;
}

MultiVector VermaModules::act_diag(int x, const MultiVector& v) const {
    MultiVector out;
    for (int s = 0; s < v.arity(); ++s) out += act_slot(x, s, v);
    return out;
}

MultiVector VermaModules::act_word_diag(const Word& w, const MultiVector& v) const {
    MultiVector cur = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) cur = act_diag(int(*it), cur);
    return cur;
}

MultiVector VermaModules::act_diag(const EnvElement& x, const MultiVector& v) const {
    MultiVector out(v.kinds, v.bounds);
    for (const auto& [w, c] : x) out += act_word_diag(w, v).scaled(c);
    return out;
}

MultiVector VermaModules::eval_at_one(const MultiVector& v, const std::vector<int>& slots) const {
    std::vector<bool> drop(v.arity(), false);
    for (int s : slots) {
        if (v.kinds.at(s) != Slot::Dual) throw VermaError("evaluation at 1+ needs a dual slot");
        if (v.bounds[s] < 0) throw VermaError("degree bound exceeded: dual slot consulted beyond its truncation");
        drop[s] = true;
    }
    std::vector<Slot> kinds;
    std::vector<int> bounds;
    for (int s = 0; s < v.arity(); ++s)
        if (!drop[s]) {
            kinds.push_back(v.kinds[s]);
            bounds.push_back(v.bounds[s]);
        }
    MultiVector out(kinds, bounds);
    for (const auto& [ws, c] : v.terms) {
        bool keep = true;
        std::vector<Word> ns;
        for (int s = 0; s < v.arity(); ++s) {
            if (drop[s])
                keep &= ws[s].empty();
            else
                ns.push_back(ws[s]);
        }
        if (keep) out.terms.add(ns, c);
    }
    return out;
}

EnvTensor VermaModules::i_minus(const Lin<Word>& v) const {
    for (const auto& [w, c] : v)
        for (auto x : w)
            if (!d_.is_a(x)) throw VermaError("i_minus: not a vector of M-");
    return ug_.delta0(v, 2);
}

static Rational binom(long n, long k) {
    Rational r(1);
    for (long i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
    return r;
}

MultiVector VermaModules::i_plus_star(const MultiVector& fg) const {
    if (fg.arity() != 2 || fg.kinds[0] != Slot::Dual || fg.kinds[1] != Slot::Dual)
        throw VermaError("i_plus_star expects two dual slots");
    int bound = std::min(fg.bounds[0], fg.bounds[1]);
    MultiVector out({Slot::Dual}, {bound});
    for (const auto& [ws, c] : fg.terms) {
        Word g = ws[0];
        g.insert(g.end(), ws[1].begin(), ws[1].end());
        std::sort(g.begin(), g.end());
        Rational k = c;
        for (std::size_t i = 0; i < g.size();) {
            std::size_t j = i;
            while (j < g.size() && g[j] == g[i]) ++j;
            long m_alpha = std::count(ws[0].begin(), ws[0].end(), g[i]);
            k *= binom(long(j - i), m_alpha);
            i = j;
        }
        out.add({g}, k);
    }
    return out;
}

PairedVector VermaModules::solve_psi(const EnvElement& x, int D, Elimination e) const {
    if (D < 0) throw VermaError("solve_psi: negative bound");
    for (const auto& [w, c] : x)
        for (auto l : w)
            if (!d_.is_a(l)) throw VermaError("solve_psi: argument is not in U(a)");
    std::map<Word, Lin<Word>> sol;
    sol[Word{}] = ug_.normal_form(x);
    for (int k = 0; k < D; ++k)
        for (const auto& delta : sorted_words(n(), 2 * n(), k + 1)) {
            std::uint8_t j = e == Elimination::First ? delta.front() : delta.back();
            Word gamma = delta;
            gamma.erase(std::find(gamma.begin(), gamma.end(), j));
            Word jg{j};
            jg.insert(jg.end(), gamma.begin(), gamma.end());
            Lin<Word> w;
            for (const auto& [u, c] : sol[gamma]) w.add_scaled(act_minus(j, u), c);
            for (const auto& [beta, c] : ug_.normal_order(jg)) {
                if (beta == delta) {
                    if (!c.is_one()) throw VermaError("solve_psi: internal error, leading coefficient is not 1");
                    continue;
                }
                auto it = sol.find(beta);
                if (it == sol.end()) throw VermaError("solve_psi: internal error, lower slice missing");
                w.add_scaled(it->second, -c);
            }
            sol[delta] = std::move(w);
        }
    PairedVector psi({Slot::Dual, Slot::Minus}, {D, 0});
    for (const auto& [beta, w] : sol)
        for (const auto& [u, c] : w) psi.add({beta, u}, c);
    return psi;
}

std::vector<PairedVector> VermaModules::invariance_residuals(const PairedVector& psi) const {
    std::vector<PairedVector> out;
    for (int j = 0; j < n(); ++j) out.push_back(act_diag(d_.b(j), psi));
    return out;
}

PairedVector VermaModules::psi_on(const PairedVector& psi, const Lin<Word>& w) const {
    MultiVector out(psi.kinds, psi.bounds);
    for (const auto& [u, c] : w) out += act_word_diag(u, psi).scaled(c);
    return out;
}

MultiVector VermaModules::apply_psi(const MultiVector& v, int slot, const PairedVector& psi) const {
    if (v.kinds.at(slot) != Slot::Minus) throw VermaError("apply_psi needs an M- slot");
    auto kinds = v.kinds;
    auto bounds = v.bounds;
    kinds.insert(kinds.begin() + slot, Slot::Dual);
    bounds.insert(bounds.begin() + slot, psi.bounds[0]);
    MultiVector out(kinds, bounds);
    std::map<Word, PairedVector> cache;
    for (const auto& [ws, c] : v.terms) {
        auto it = cache.find(ws[slot]);
        if (it == cache.end()) it = cache.emplace(ws[slot], psi_on(psi, Lin<Word>(ws[slot], 1))).first;
        for (const auto& [pw, d] : it->second.terms) {
            auto ns = ws;
            ns[slot] = pw[1];
            ns.insert(ns.begin() + slot, pw[0]);
            out.add(ns, c * d);
        }
    }
    return out;
}

MultiVector VermaModules::phi_monomial(const Word& w) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = phi_cache_.find(w);
        if (it != phi_cache_.end()) return it->second;
    }
    MultiVector one({Slot::Plus, Slot::Minus});
    one.add({Word{}, Word{}}, 1);
    MultiVector out = act_word_diag(w, one);
    std::lock_guard<std::mutex> lk(mu_);
    phi_cache_.emplace(w, out);
    return out;
}

MultiVector VermaModules::phi_forward(const EnvElement& x) const {
    MultiVector out({Slot::Plus, Slot::Minus});
    for (const auto& [w, c] : ug_.normal_form(x)) out += phi_monomial(w).scaled(c);
    return out;
}

EnvElement VermaModules::phi_inverse(const MultiVector& v) const {
    if (v.arity() != 2 || v.kinds[0] != Slot::Plus || v.kinds[1] != Slot::Minus)
        throw VermaError("phi_inverse expects a vector of M+ (x) M-");
    MultiVector rest = v;
    EnvElement out;
    int guard = 0;
    while (!rest.is_zero()) {
        if (++guard > 100000) throw VermaError("phi_inverse: no convergence");
        const std::vector<Word>* top = nullptr;
        Rational c;
        std::size_t best = 0;
        for (const auto& [ws, k] : rest.terms) {
            std::size_t deg = ws[0].size() + ws[1].size();
            if (!top || deg > best) {
                top = &ws;
                best = deg;
                c = k;
            }
        }
        Word mono = (*top)[1];
        mono.insert(mono.end(), (*top)[0].begin(), (*top)[0].end());
        for (auto l : (*top)[0])
            if (d_.is_a(l)) throw VermaError("phi_inverse: M+ slot holds a non-b word");
        auto img = phi_monomial(mono);
        if (!(img.terms.coeff(*top) == Rational(1)))
            throw VermaError("phi_inverse: vector is outside the image");
        out.add(mono, c);
        rest -= img.scaled(c);
    }
    return out;
}

}  // namespace ekq
