#include "ekq/selftest.hpp"

#include <chrono>
#include <future>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>

#include "ekq/acyc.hpp"
#include "ekq/assoc.hpp"
#include "ekq/manin.hpp"
#include "ekq/polar.hpp"
#include "ekq/quantize.hpp"
#include "ekq/ybq.hpp"

namespace ekq {

const std::vector<int>& known_failures() {
    static const std::vector<int> ids{1};
    return ids;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Builder {
    Criterion c;
    void add(const std::string& fixture, const std::vector<CheckResult>& rs) {
        for (auto r : rs) {
            r.name = fixture + "/" + r.name;
            add(r);
        }
    }
    void add(const CheckResult& r) {
        c.pass = c.pass && r.pass;
        c.checks.push_back(r);
    }
    void add(const std::string& fixture, const std::string& name, const std::string& identity, bool ok,
             const std::string& witness = "") {
        add({fixture + "/" + name, identity, ok, ok ? "" : witness});
    }
};

// runs fn over the items concurrently, collecting results in input order
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Fn fn) {
    using R = decltype(fn(items[0]));
    std::vector<std::future<R>> fs;
    for (const auto& x : items) fs.push_back(std::async(std::launch::async, [&fn, &x] { return fn(x); }));
    std::vector<R> out;
    for (auto& f : fs) out.push_back(f.get());
    return out;
}

std::string first_fail(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return r.name + ": " + r.witness;
    return "";
}

std::vector<std::string> names_of_catalog() {
    std::vector<std::string> out;
    for (const auto& b : catalog().bialgebras) out.push_back(b.name);
    return out;
}

std::string render(const ESeries& s, const std::vector<std::string>& names) {
    std::string out;
    for (int k = 0; k < s.order(); ++k)
        for (const auto& [w, c] : s[k]) {
            std::string word;
            for (auto x : w) word += (word.empty() ? "" : " ") + names[x];
            out += (out.empty() ? "" : " + ") + c.str() + " h^" + std::to_string(k) + " [" + word + "]";
        }
    return out.empty() ? "0" : out;
}

// h^0 + h^2 F series
ESeries expected_product(const Pbw& U, const LieBialgebra& g, int x, int y, int p, int q) {
    ESeries s(3);
    s[0] = U.normal_order(Word{std::uint8_t(x), std::uint8_t(y)});
    s[2] = h2_product_formula(g, p, q);
    return s;
}

Criterion criterion1() {
    Builder b;
    b.c.title = "product h^2 term: ek_product(a_q,a_p) = a_q a_p + h^2 F(p,q); mu2_11 = F";
    const BankEntry& mu2 = bank_entry("mu2_11");
    struct Out {
        std::string name;
        std::vector<CheckResult> rs;
        int literal_bad = 0, pairs = 0;
        std::string literal_witness;
    };
    auto outs = parallel_map(names_of_catalog(), [&](const std::string& name) {
        const LieBialgebra& g = catalog().get(name);
        QuantizedUEA q(g);
        const Pbw& U = q.Ua();
        Structure s = structure_lba(g);
        Out o{name, {}, 0, 0, ""};
        bool lit = true, tr = true, mu = true;
        std::string wl, wt, wm;
        for (int p = 0; p < g.dim; ++p)
            for (int r = 0; r < g.dim; ++r) {
                ++o.pairs;
                EnvElement F = h2_product_formula(g, p, r);
                ESeries literal = q.product(Pbw::gen(r), Pbw::gen(p));
                ESeries d1 = literal - expected_product(U, g, r, p, p, r);
                if (!is_zero(d1)) {
                    ++o.literal_bad;
                    if (lit) wl = "(p,q)=(" + g.names[p] + "," + g.names[r] + ") residual " + render(d1, g.names);
                    lit = false;
                }
                ESeries d2 = q.product(Pbw::gen(p), Pbw::gen(r)) - expected_product(U, g, p, r, p, r);
                if (!is_zero(d2) && tr) {
                    tr = false;
                    wt = "(p,q)=(" + g.names[p] + "," + g.names[r] + ")";
                }
                if (evaluate_symmetric(mu2, s, {p, r}, U) != F && mu) {
                    mu = false;
                    wm = "(p,q)=(" + g.names[p] + "," + g.names[r] + ")";
                }
            }
        o.literal_witness = wl;
        o.rs.push_back({"literal", "ek_product(a_q,a_p) = a_q a_p + h^2 F(p,q)", lit, wl});
        o.rs.push_back({"mu2_11", "mu2_11(p,q) = F(p,q) in U(a)", mu, wm});
        // reported for diagnosis; not part of the literal statement
        o.rs.push_back({"transposed", "ek_product(a_p,a_q) = a_p a_q + h^2 F(p,q)", tr, wt});
        return o;
    });
    std::ostringstream sum;
    int bad = 0, total = 0, tr_ok = 0;
    std::string failing;
    for (const auto& o : outs) {
        for (auto r : o.rs) {
            r.name = o.name + "/" + r.name;
            if (r.name.ends_with("/transposed")) {
                tr_ok += r.pass;
                b.c.checks.push_back(r);
            } else {
                b.add(r);
            }
        }
        bad += o.literal_bad;
        total += o.pairs;
        if (o.literal_bad) failing += (failing.empty() ? "" : ", ") + o.name + " " + o.literal_witness;
    }
    sum << "literal: " << (total - bad) << "/" << total << " generator pairs agree";
    if (bad) sum << " (fails on " << failing << ")";
    sum << "; transposed orientation holds on " << tr_ok << "/" << outs.size() << " bialgebras";
    b.c.summary = sum.str();
    return b.c;
}

struct DoubleRun {
    std::string name;
    std::vector<CheckResult> hopf, qt, limits;
};

std::vector<DoubleRun> double_runs() {
    return parallel_map(names_of_catalog(), [](const std::string& name) {
        auto M = std::make_shared<const VermaModules>(build_double(catalog().get(name)));
        QuantizedDouble q(M);
        return DoubleRun{name, hopf_suite(q, 2), quasitriangular_suite(q), double_limits(q)};
    });
}

Criterion from_runs(const std::vector<DoubleRun>& runs, std::vector<CheckResult> DoubleRun::*field, const std::string& title) {
    Builder b;
    b.c.title = title;
    for (const auto& r : runs) b.add(r.name, r.*field);
    return b.c;
}

Criterion criterion4(const std::vector<DoubleRun>& runs) {
    Criterion c = from_runs(runs, &DoubleRun::limits, "quasiclassical limits of the double and of U_h(a)");
    Builder b{c};
    auto outs = parallel_map(names_of_catalog(), [](const std::string& name) {
        QuantizedUEA q(catalog().get(name));
        std::vector<CheckResult> keep;
        for (const auto& r : uea_suite(q, false))
            if (r.name.find("quasiclassical") != std::string::npos || r.name.find("first-order") != std::string::npos)
                keep.push_back(r);
        return keep;
    });
    auto names = names_of_catalog();
    for (std::size_t i = 0; i < names.size(); ++i) b.add(names[i], outs[i]);
    return b.c;
}

Criterion criterion5() {
    Builder b;
    b.c.title = "CYBE for the canonical r of every double";
    for (const auto& nb : catalog().bialgebras) {
        auto d = build_double(nb.g);
        Pbw U(d.g);
        EnvTensor res = check_cybe(d.r, U);
        b.add(nb.name, "cybe", "[r12,r13]+[r12,r23]+[r13,r23] = 0 in U(g)^3", res.is_zero(), describe(res));
    }
    return b.c;
}

Criterion criterion6() {
    Builder b;
    b.c.title = "quantization of associative r-matrices: QYBE, unitarity, E12(x)E12";
    for (const auto& fx : yb_catalog()) {
        auto q = quantize_r(fx.A, fx.r);
        b.add(fx.name, yb_suite(fx.A, fx.r, q.R));
    }
    auto A = matrix_algebra(2);
    Matrix r(4, std::vector<Rational>(4));
    r[1][1] = 1;
    auto q = quantize_r(A, r);
    ASeries want(3);
    want[0].add({0, 0}, 1);
    want[0].add({0, 3}, 1);
    want[0].add({3, 0}, 1);
    want[0].add({3, 3}, 1);
    want[1].add({1, 1}, 1);
    bool ok = q.R == want;
    b.add("mat2_e12_e12", "exact", "R = 1 + h E12 (x) E12", ok, "R differs from 1 + h E12 (x) E12");
    return b.c;
}

Criterion criterion7() {
    Builder b;
    b.c.title = "polarization: R~ = R on doubles of dim <= 2 bialgebras";
    std::vector<std::string> small;
    for (const auto& nb : catalog().bialgebras)
        if (nb.g.dim <= 2) small.push_back(nb.name);
    auto outs = parallel_map(small, [](const std::string& name) {
        auto M = std::make_shared<const VermaModules>(build_double(catalog().get(name)));
        QuantizedDouble q(M);
        return polarize_R(q).result;
    });
    for (std::size_t i = 0; i < small.size(); ++i) b.add(small[i], {outs[i]});
    return b.c;
}

Criterion criterion8() {
    Builder b;
    b.c.title = "pentagon and hexagons of the truncated associator";
    auto outs = parallel_map(names_of_catalog(), [](const std::string& name) {
        VermaModules M(build_double(catalog().get(name)));
        bool pent = true, hex1 = true, hex2 = true;
        int nv = 0;
        for (const auto& v : test_vectors(M, {Slot::Plus, Slot::Minus, Slot::Plus, Slot::Minus})) {
            pent = pent && series_is_zero(pentagon_residual(M, v));
            ++nv;
        }
        for (const auto& v : test_vectors(M, {Slot::Minus, Slot::Plus, Slot::Dual})) {
            auto [x, y] = hexagon_residuals(M, v);
            hex1 = hex1 && series_is_zero(x);
            hex2 = hex2 && series_is_zero(y);
            ++nv;
        }
        return std::vector<CheckResult>{
            {"pentagon", "Phi_{1,2,34} Phi_{12,3,4} = Phi_{2,3,4} Phi_{1,23,4} Phi_{1,2,3}", pent, "nonzero residual"},
            {"hexagon-1", "first hexagon relation", hex1, "nonzero residual"},
            {"hexagon-2", "second hexagon relation", hex2, "nonzero residual"},
            {"vectors", std::to_string(nv) + " test vectors", nv > 0, "no test vectors"}};
    });
    auto names = names_of_catalog();
    for (std::size_t i = 0; i < names.size(); ++i) b.add(names[i], outs[i]);
    return b.c;
}

Criterion criterion9() {
    Builder b;
    b.c.title = "functoriality along catalog morphisms";
    const auto& homs = catalog().homs;
    auto outs = parallel_map(homs, [](const BialgebraHom& f) {
        auto rs = functoriality_check(f);
        auto nat = naturality_check(f);
        rs.insert(rs.end(), nat.begin(), nat.end());
        return rs;
    });
    for (std::size_t i = 0; i < homs.size(); ++i) b.add(homs[i].name, outs[i]);
    return b.c;
}

Criterion criterion10() {
    Builder b;
    b.c.title = "U_h(a): associativity, coassociativity, multiplicativity";
    auto outs = parallel_map(names_of_catalog(), [](const std::string& name) {
        QuantizedUEA q(catalog().get(name));
        return uea_suite(q, true);
    });
    auto names = names_of_catalog();
    for (std::size_t i = 0; i < names.size(); ++i) b.add(names[i], outs[i]);
    return b.c;
}

std::vector<CheckResult> pbw_checks(const Pbw& U, int dim) {
    bool assoc = true, mult = true, coassoc = true, anti = true;
    auto words = sorted_words_upto(0, dim, 3);
    for (const auto& x : words)
        for (const auto& y : words) {
            if (x.size() + y.size() > 3) continue;
            EnvElement ex(x, 1), ey(y, 1);
            auto xy = U.multiply(ex, ey);
            mult = mult && U.delta0(xy) == U.multiply(U.delta0(ex), U.delta0(ey));
            for (const auto& z : words) {
                if (x.size() + y.size() + z.size() > 3) continue;
                EnvElement ez(z, 1);
                assoc = assoc && U.multiply(xy, ez) == U.multiply(ex, U.multiply(ey, ez));
            }
        }
    for (const auto& x : words) {
        EnvElement ex(x, 1);
        auto D = U.delta0(ex);
        EnvTensor left, right;
        EnvElement s;
        for (const auto& [ws, c] : D) {
            left.add_scaled(tensor_product(U.delta0(EnvElement(ws[0], 1)), as_tensor(EnvElement(ws[1], 1))), c);
            right.add_scaled(tensor_product(as_tensor(EnvElement(ws[0], 1)), U.delta0(EnvElement(ws[1], 1))), c);
            s.add_scaled(U.multiply(U.antipode0(EnvElement(ws[0], 1)), EnvElement(ws[1], 1)), c);
        }
        coassoc = coassoc && left == right;
        anti = anti && s == Pbw::unit().scaled(counit0(ex));
    }
    return {{"pbw-associativity", "(xy)z = x(yz), degree <= 3", assoc, "nonzero residual"},
            {"pbw-multiplicativity", "D0(xy) = D0(x)D0(y), degree <= 3", mult, "nonzero residual"},
            {"pbw-coassociativity", "(D0 (x) 1)D0 = (1 (x) D0)D0, degree <= 3", coassoc, "nonzero residual"},
            {"pbw-antipode", "m(S0 (x) 1)D0 = e0, degree <= 3", anti, "nonzero residual"}};
}

Criterion criterion11_infrastructure() {
    Builder b;
    b.c.title = "infrastructure: dualize, double invariants, PBW, psi solver; selftest < 300 s";
    auto outs = parallel_map(names_of_catalog(), [](const std::string& name) {
        const LieBialgebra& g = catalog().get(name);
        std::vector<CheckResult> rs;
        rs.push_back({"dualize-involution", "dualize(dualize(g)) = g", dualize(dualize(g)) == g, "differs"});
        auto d = build_double(g);
        for (const auto& c : verify_double(d)) rs.push_back({"double-" + c.name, c.name, c.ok, c.witness});
        Pbw U(d.g);
        auto p = pbw_checks(U, d.dim());
        rs.insert(rs.end(), p.begin(), p.end());
        VermaModules M(d);
        bool inv = true, uniq = true;
        for (const auto& x : sorted_words_upto(0, g.dim, 2)) {
            EnvElement ex(x, 1);
            auto psi = M.solve_psi(ex, 3);
            for (const auto& res : M.invariance_residuals(psi)) inv = inv && res.is_zero();
            uniq = uniq && psi == M.solve_psi(ex, 3, VermaModules::Elimination::Last);
        }
        rs.push_back({"psi-invariance", "psi_x is g- invariant", inv, "nonzero residual"});
        rs.push_back({"psi-uniqueness", "first and last pivot elimination give the same psi_x", uniq, "solutions differ"});
        return rs;
    });
    auto names = names_of_catalog();
    for (std::size_t i = 0; i < names.size(); ++i) b.add(names[i], outs[i]);
    return b.c;
}

template <class Fn>
Criterion timed(int id, Fn&& fn) {
    auto t0 = Clock::now();
    Criterion c = fn();
    c.id = id;
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.summary.empty()) {
        int ok = 0;
        for (const auto& r : c.checks) ok += r.pass;
        std::ostringstream s;
        s << ok << "/" << c.checks.size() << " checks pass";
        std::string w = first_fail(c.checks);
        if (!w.empty()) s << "; first failure " << w;
        c.summary = s.str();
    }
    return c;
}

}  // namespace

std::vector<Criterion> run_acceptance(const std::function<void(const Criterion&)>& progress) {
    auto t0 = Clock::now();
    std::vector<Criterion> out;
    auto push = [&](Criterion c) {
        if (progress) progress(c);
        out.push_back(std::move(c));
    };
    push(timed(1, criterion1));
    std::vector<DoubleRun> runs;
    auto t_runs = Clock::now();
    runs = double_runs();
    double runs_s = std::chrono::duration<double>(Clock::now() - t_runs).count();
    auto from = [&](int id, std::vector<CheckResult> DoubleRun::*f, const char* title) {
        Criterion c = timed(id, [&] { return from_runs(runs, f, title); });
        c.seconds += runs_s / 3;
        return c;
    };
    push(from(2, &DoubleRun::hopf, "Hopf axioms of U_h(g) for every double, degree <= 2"));
    push(from(3, &DoubleRun::qt, "quasitriangularity, QYBE and classical limits of R and J"));
    push(timed(4, [&] { return criterion4(runs); }));
    push(timed(5, criterion5));
    push(timed(6, criterion6));
    push(timed(7, criterion7));
    push(timed(8, criterion8));
    push(timed(9, criterion9));
    push(timed(10, criterion10));
    Criterion c11 = timed(11, criterion11_infrastructure);
    double total = std::chrono::duration<double>(Clock::now() - t0).count();
    bool fast = total < 300;
    std::ostringstream s;
    s << c11.summary << "; full run " << std::fixed << std::setprecision(1) << total << " s";
    c11.checks.push_back({"selftest/runtime", "full acceptance run under 300 s", fast, s.str()});
    c11.pass = c11.pass && fast;
    c11.summary = s.str();
    push(std::move(c11));
    return out;
}

}  // namespace ekq
