#pragma once

#include <stdexcept>
#include <vector>

#include "ekq/lin.hpp"

namespace ekq {

struct TensorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One-line notation, 0-based: position p is sent to perm[p].
using Perm = std::vector<int>;

Perm perm_identity(int p);
Perm perm_compose(const Perm& tau, const Perm& sigma);  // tau after sigma
Perm perm_inverse(const Perm& sigma);
bool perm_valid(const Perm& sigma);

/// Element of Hom(V^{(x)m}, V^{(x)n}); index tuples are (in..., out...).
class SparseTensor {
public:
    using Index = std::vector<int>;

    SparseTensor() = default;
    SparseTensor(int in, int out, int dim);

    int in() const { return in_; }
    int out() const { return out_; }
    int dim() const { return dim_; }

    void add(const Index& idx, const Rational& c);
    Rational at(const Index& idx) const { return entries_.coeff(idx); }
    const Lin<Index>& entries() const { return entries_; }
    bool is_zero() const { return entries_.is_zero(); }

    SparseTensor& operator+=(const SparseTensor& o);
    SparseTensor& operator-=(const SparseTensor& o);
    SparseTensor scaled(const Rational& c) const;
    friend SparseTensor operator+(SparseTensor a, const SparseTensor& b) { return a += b; }
    friend SparseTensor operator-(SparseTensor a, const SparseTensor& b) { return a -= b; }
    friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
        return a.in_ == b.in_ && a.out_ == b.out_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

    static SparseTensor identity(int k, int dim);
    static SparseTensor permutation(const Perm& sigma, int dim);

private:
    void require_shape(const SparseTensor& o) const;

    int in_ = 0, out_ = 0, dim_ = 0;
    Lin<Index> entries_;
};

/// a after b.
SparseTensor compose(const SparseTensor& a, const SparseTensor& b);
SparseTensor tensor(const SparseTensor& a, const SparseTensor& b);
/// Input slot p moves to sigma_in[p], output slot q moves to sigma_out[q].
SparseTensor permute(const SparseTensor& t, const Perm& sigma_in, const Perm& sigma_out);

}  // namespace ekq
