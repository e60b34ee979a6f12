#include "ekq/pbw.hpp"

#include <algorithm>
#include <numeric>

namespace ekq {

Pbw::Pbw(LieAlgebra lie, std::vector<int> rank) : lie_(std::move(lie)), rank_(std::move(rank)) {
    int n = lie_.dim;
    if (n > 255) throw PbwError("at most 255 generators supported");
    if (rank_.empty()) {
        rank_.resize(n);
        std::iota(rank_.begin(), rank_.end(), 0);
    }
    if (int(rank_.size()) != n) throw PbwError("rank vector has wrong size");
    br_.resize(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!lie_.c(i, j, k).is_zero()) br_[i * n + j].emplace_back(k, lie_.c(i, j, k));
}

bool Pbw::is_normal(const Word& w) const {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (rank_[w[i]] > rank_[w[i + 1]]) return false;
    return true;
}

EnvElement Pbw::normal_order(const Word& w) const {
    for (auto x : w)
        if (x >= dim()) throw PbwError("unknown generator index " + std::to_string(int(x)));
    if (is_normal(w)) return EnvElement(w, 1);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
    }
    EnvElement out = order_uncached(w);
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(w, out);
    return out;
}

EnvElement Pbw::order_uncached(const Word& w) const {
    std::size_t i = 0;
    while (rank_[w[i]] <= rank_[w[i + 1]]) ++i;
    // u x y v = u y x v + u [x,y] v
    Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    EnvElement out = normal_order(swapped);
    for (const auto& [k, c] : br_[w[i] * dim() + w[i + 1]]) {
        Word shorter(w.begin(), w.begin() + i);
        shorter.push_back(std::uint8_t(k));
        shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
        out.add_scaled(normal_order(shorter), c);
    }
    return out;
}

EnvElement Pbw::normal_form(const EnvElement& x) const {
    EnvElement out;
    for (const auto& [w, c] : x) out.add_scaled(normal_order(w), c);
    return out;
}

EnvElement Pbw::multiply(const EnvElement& x, const EnvElement& y) const {
    EnvElement out;
    for (const auto& [u, a] : x)
        for (const auto& [v, b] : y) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            out.add_scaled(normal_order(w), a * b);
        }
    return out;
}

EnvTensor Pbw::normal_form(const EnvTensor& x) const {
    EnvTensor out;
    for (const auto& [ws, c] : x) {
        EnvTensor acc(std::vector<Word>{}, c);
        for (const auto& w : ws) acc = tensor_product(acc, as_tensor(normal_order(w)));
        out += acc;
    }
    return out;
}

EnvTensor Pbw::multiply(const EnvTensor& x, const EnvTensor& y) const {
    EnvTensor out;
    for (const auto& [us, a] : x)
        for (const auto& [vs, b] : y) {
            if (us.size() != vs.size()) throw PbwError("tensor arity mismatch in multiply");
            EnvTensor acc(std::vector<Word>{}, a * b);
            for (std::size_t s = 0; s < us.size(); ++s) {
                Word w = us[s];
                w.insert(w.end(), vs[s].begin(), vs[s].end());
                acc = tensor_product(acc, as_tensor(normal_order(w)));
            }
            out += acc;
        }
    return out;
}

EnvTensor Pbw::delta0(const EnvElement& x, int k) const {
    if (k < 2) throw PbwError("delta0 needs at least two factors");
    EnvTensor out;
    for (const auto& [w, c] : x) {
        // every letter goes to one factor; subsequences of a normal word stay normal
        std::vector<int> slot(w.size(), 0);
        while (true) {
            std::vector<Word> parts(k);
            for (std::size_t p = 0; p < w.size(); ++p) parts[slot[p]].push_back(w[p]);
            out.add(parts, c);
            std::size_t p = 0;
            while (p < w.size() && ++slot[p] == k) slot[p++] = 0;
            if (p == w.size()) break;
        }
    }
    if (!std::all_of(x.begin(), x.end(), [&](const auto& t) { return is_normal(t.first); }))
        return normal_form(out);
    return out;
}

EnvElement Pbw::antipode0(const EnvElement& x) const {
    EnvElement out;
    for (const auto& [w, c] : x) {
        Word r(w.rbegin(), w.rend());
        out.add_scaled(normal_order(r), w.size() % 2 ? -c : c);
    }
    return out;
}

Rational counit0(const EnvElement& x) { return x.coeff(Word{}); }

int degree(const Word& w) { return int(w.size()); }

int degree(const EnvElement& x) {
    int d = -1;
    for (const auto& [w, c] : x) d = std::max(d, int(w.size()));
    return d;
}

EnvTensor tensor_product(const EnvTensor& x, const EnvTensor& y) {
    EnvTensor out;
    for (const auto& [us, a] : x)
        for (const auto& [vs, b] : y) {
            auto ws = us;
            ws.insert(ws.end(), vs.begin(), vs.end());
            out.add(ws, a * b);
        }
    return out;
}

EnvTensor as_tensor(const EnvElement& x) {
    EnvTensor out;
    for (const auto& [w, c] : x) out.add({w}, c);
    return out;
}

EnvTensor to_env(const Tensor2& t) {
    EnvTensor out;
    for (const auto& [ij, c] : t) out.add({Word{std::uint8_t(ij.first)}, Word{std::uint8_t(ij.second)}}, c);
    return out;
}

EnvTensor permute_factors(const EnvTensor& x, const std::vector<int>& sigma) {
    EnvTensor out;
    for (const auto& [ws, c] : x) {
        if (ws.size() != sigma.size()) throw PbwError("permutation size mismatch");
        std::vector<Word> ns(ws.size());
        for (std::size_t p = 0; p < ws.size(); ++p) ns[sigma[p]] = ws[p];
        out.add(ns, c);
    }
    return out;
}

EnvTensor embed(const EnvTensor& x, int n, const std::vector<int>& positions) {
    EnvTensor out;
    for (const auto& [ws, c] : x) {
        std::vector<Word> ns(n);
        for (std::size_t p = 0; p < ws.size(); ++p) ns[positions[p]] = ws[p];
        out.add(ns, c);
    }
    return out;
}

std::vector<Word> sorted_words(int lo, int hi, int k) {
    std::vector<Word> out;
    if (k == 0) return {Word{}};
    if (hi <= lo) return out;
    Word w(k, std::uint8_t(lo));
    while (true) {
        out.push_back(w);
        int p = k - 1;
        while (p >= 0 && w[p] == hi - 1) --p;
        if (p < 0) break;
        std::uint8_t v = w[p] + 1;
        for (int q = p; q < k; ++q) w[q] = v;
    }
    return out;
}

std::vector<Word> sorted_words_upto(int lo, int hi, int max_len) {
    std::vector<Word> out;
    for (int k = 0; k <= max_len; ++k)
        for (auto& w : sorted_words(lo, hi, k)) out.push_back(std::move(w));
    return out;
}

}  // namespace ekq
