#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ekq/bialg.hpp"
#include "ekq/lin.hpp"

namespace ekq {

using Word = std::vector<std::uint8_t>;
using EnvElement = Lin<Word>;
using EnvTensor = Lin<std::vector<Word>>;
/// Degree-one tensor sum c(i,j) e_i (x) e_j.
using Tensor2 = Lin<std::pair<int, int>>;

struct PbwError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// U(L) in the PBW basis of the ordering given by `rank`: a word is normal
/// when the ranks of its letters are nondecreasing.
class Pbw {
public:
    explicit Pbw(LieAlgebra lie, std::vector<int> rank = {});

    const LieAlgebra& lie() const { return lie_; }
    int dim() const { return lie_.dim; }
    int rank(int i) const { return rank_[i]; }

    bool is_normal(const Word& w) const;
    EnvElement normal_order(const Word& w) const;
    EnvElement normal_form(const EnvElement& x) const;
    EnvElement multiply(const EnvElement& x, const EnvElement& y) const;
    EnvTensor multiply(const EnvTensor& x, const EnvTensor& y) const;
    /// Componentwise normal form.
    EnvTensor normal_form(const EnvTensor& x) const;

    EnvTensor delta0(const EnvElement& x, int k = 2) const;
    EnvElement antipode0(const EnvElement& x) const;

    static EnvElement unit() { return EnvElement(Word{}, 1); }
    static EnvElement gen(int i) { return EnvElement(Word{std::uint8_t(i)}, 1); }
    static EnvTensor unit(int k) { return EnvTensor(std::vector<Word>(k), 1); }

private:
    EnvElement order_uncached(const Word& w) const;

    LieAlgebra lie_;
    std::vector<int> rank_;
    std::vector<std::vector<std::pair<int, Rational>>> br_;
    mutable std::mutex mu_;
    mutable std::map<Word, EnvElement> memo_;
};

Rational counit0(const EnvElement& x);
int degree(const EnvElement& x);
int degree(const Word& w);

/// x (x) y as a 2-fold tensor; tensor_concat appends factors.
EnvTensor tensor_product(const EnvTensor& x, const EnvTensor& y);
EnvTensor as_tensor(const EnvElement& x);
EnvTensor to_env(const Tensor2& t);
/// Reorder tensor factors: factor p of x becomes factor sigma[p].
EnvTensor permute_factors(const EnvTensor& x, const std::vector<int>& sigma);
/// Embed a k-fold tensor into n factors at the given positions.
EnvTensor embed(const EnvTensor& x, int n, const std::vector<int>& positions);
/// Apply a linear map to one factor.
template <class F>
EnvTensor map_factor(const EnvTensor& x, int slot, F&& f) {
    EnvTensor out;
    for (const auto& [ws, c] : x) {
        EnvElement img = f(ws[slot]);
        for (const auto& [w, d] : img) {
            auto ns = ws;
            ns[slot] = w;
            out.add(ns, c * d);
        }
    }
    return out;
}

/// Sorted words of length exactly k over the letters [lo, hi).
std::vector<Word> sorted_words(int lo, int hi, int k);
std::vector<Word> sorted_words_upto(int lo, int hi, int max_len);

}  // namespace ekq
