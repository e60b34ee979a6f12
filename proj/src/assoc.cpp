#include "ekq/assoc.hpp"

#include <set>

namespace ekq {

VSeries lift(const MultiVector& v, int order) {
    if (order > kDefaultOrder)
        throw AssocError("associator coefficients beyond h^2 are not available; order must be at most 3");
    VSeries s(order);
    s[0] = v;
    return s;
}

bool series_is_zero(const VSeries& s) {
    for (const auto& c : s.coeffs())
        if (!c.is_zero()) return false;
    return true;
}

MultiVector omega_insert(const VermaModules& M, int i, int j, const MultiVector& v) {
    if (i == j) throw AssocError("omega_insert needs two distinct slots");
    if (i < 0 || j < 0 || i >= v.arity() || j >= v.arity()) throw AssocError("omega_insert: slot out of range");
    const auto& d = M.dbl();
    MultiVector out(v.kinds, v.bounds);
    for (int k = 0; k < d.n; ++k) {
        out += M.act_slot(d.a(k), i, M.act_slot(d.b(k), j, v));
        out += M.act_slot(d.b(k), i, M.act_slot(d.a(k), j, v));
    }
    return out;
}

MultiVector grouped(const VermaModules& M, const Group& P, const Group& Q, const MultiVector& v) {
    std::set<int> seen;
    for (int p : P)
        if (!seen.insert(p).second) throw AssocError("grouped: repeated slot");
    for (int q : Q)
        if (!seen.insert(q).second) throw AssocError("grouped: overlapping slot groups");
    MultiVector out(v.kinds, v.bounds);
    for (int p : P)
        for (int q : Q) out += omega_insert(M, p, q, v);
    return out;
}

VSeries phi_apply(const VermaModules& M, const std::vector<Group>& parts, const VSeries& v, bool inverse) {
    if (parts.size() != 3) throw AssocError("phi_apply needs three slot groups");
    std::set<int> seen;
    for (const auto& P : parts)
        for (int p : P)
            if (!seen.insert(p).second) throw AssocError("phi_apply: overlapping slot groups");
    if (v.order() > kDefaultOrder) throw AssocError("associator known only modulo h^3");
    VSeries out = v;
    Rational c = inverse ? Rational(-1, 24) : Rational(1, 24);
    for (int k = 2; k < v.order(); ++k) {
        const MultiVector& x = v[k - 2];
        if (x.is_zero() && x.kinds.empty()) continue;
        MultiVector a = grouped(M, parts[0], parts[1], grouped(M, parts[1], parts[2], x));
        MultiVector b = grouped(M, parts[1], parts[2], grouped(M, parts[0], parts[1], x));
        out[k] += (a - b).scaled(c);
    }
    return out;
}

VSeries exp_apply(const VermaModules& M, const Group& P, const Group& Q, const VSeries& v, int sign) {
    // 1 + s h T/2 + h^2 T^2/8
    VSeries out = v;
    Rational half(sign, 2);
    for (int k = 1; k < v.order(); ++k) {
        const MultiVector& x = v[k - 1];
        if (x.kinds.empty()) continue;
        MultiVector t = grouped(M, P, Q, x);
        out[k] += t.scaled(half);
        if (k + 1 < v.order()) out[k + 1] += grouped(M, P, Q, t).scaled(Rational(1, 8));
    }
    return out;
}

MultiVector swap_slots(const MultiVector& v, int i) {
    if (i < 0 || i + 1 >= v.arity()) throw AssocError("swap: slot out of range");
    auto kinds = v.kinds;
    auto bounds = v.bounds;
    std::swap(kinds[i], kinds[i + 1]);
    std::swap(bounds[i], bounds[i + 1]);
    MultiVector out(kinds, bounds);
    for (const auto& [ws, c] : v.terms) {
        auto ns = ws;
        std::swap(ns[i], ns[i + 1]);
        out.terms.add(ns, c);
    }
    return out;
}

VSeries swap_slots(const VSeries& v, int i) {
    VSeries out(v.order());
    for (int k = 0; k < v.order(); ++k)
        if (!v[k].kinds.empty()) out[k] = swap_slots(v[k], i);
    return out;
}

VSeries braid(const VermaModules& M, int i, const VSeries& v) {
    return swap_slots(exp_apply(M, {i}, {i + 1}, v, 1), i);
}

VSeries braid_gamma(const VermaModules& M, int i, const VSeries& v) {
    return exp_apply(M, {i}, {i + 1}, swap_slots(v, i), -1);
}

VSeries pentagon_residual(const VermaModules& M, const MultiVector& v) {
    if (v.arity() != 4) throw AssocError("pentagon needs four slots");
    VSeries x = lift(v);
    // Phi_{1,2,34} Phi_{12,3,4} = Phi_{2,3,4} Phi_{1,23,4} Phi_{1,2,3}
    VSeries lhs = phi_apply(M, {{0}, {1}, {2, 3}}, phi_apply(M, {{0, 1}, {2}, {3}}, x));
    VSeries rhs = phi_apply(M, {{1}, {2}, {3}},
                            phi_apply(M, {{0}, {1, 2}, {3}}, phi_apply(M, {{0}, {1}, {2}}, x)));
    return lhs - rhs;
}

std::pair<VSeries, VSeries> hexagon_residuals(const VermaModules& M, const MultiVector& v) {
    if (v.arity() != 3) throw AssocError("hexagon needs three slots");
    VSeries x = lift(v);
    // B_{12,3} = Phi_{3,1,2} B_{1,3} Phi_{1,3,2}^{-1} B_{2,3} Phi_{1,2,3}
    VSeries l1 = exp_apply(M, {0, 1}, {2}, x);
    VSeries r1 = phi_apply(M, {{0}, {1}, {2}}, x);
    r1 = exp_apply(M, {1}, {2}, r1);
    r1 = phi_apply(M, {{0}, {2}, {1}}, r1, true);
    r1 = exp_apply(M, {0}, {2}, r1);
    r1 = phi_apply(M, {{2}, {0}, {1}}, r1);
    // B_{1,23} = Phi_{2,3,1}^{-1} B_{1,3} Phi_{2,1,3} B_{1,2} Phi_{1,2,3}^{-1}
    VSeries l2 = exp_apply(M, {0}, {1, 2}, x);
    VSeries r2 = phi_apply(M, {{0}, {1}, {2}}, x, true);
    r2 = exp_apply(M, {0}, {1}, r2);
    r2 = phi_apply(M, {{1}, {0}, {2}}, r2);
    r2 = exp_apply(M, {0}, {2}, r2);
    r2 = phi_apply(M, {{1}, {2}, {0}}, r2, true);
    return {l1 - r1, l2 - r2};
}

std::vector<MultiVector> test_vectors(const VermaModules& M, const std::vector<Slot>& kinds) {
    int n = M.n(), k = int(kinds.size());
    std::vector<std::vector<Word>> options(k);
    for (int s = 0; s < k; ++s) {
        options[s].push_back(Word{});
        int lo = kinds[s] == Slot::Minus ? 0 : n;
        for (int l = lo; l < lo + n; ++l) options[s].push_back(Word{std::uint8_t(l)});
    }
    std::vector<int> bounds(k, 3);
    std::vector<MultiVector> out;
    std::vector<std::size_t> pick(k, 0);
    while (true) {
        int deg = 0;
        for (int s = 0; s < k; ++s) deg += pick[s] ? 1 : 0;
        if (deg <= 2) {
            MultiVector v(kinds, bounds);
            std::vector<Word> ws(k);
            for (int s = 0; s < k; ++s) ws[s] = options[s][pick[s]];
            v.add(ws, 1);
            out.push_back(v);
        }
        int s = k - 1;
        while (s >= 0 && ++pick[s] == options[s].size()) pick[s--] = 0;
        if (s < 0) break;
    }
    return out;
}

}  // namespace ekq
