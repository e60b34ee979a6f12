#include "ekq/tensor.hpp"

#include <numeric>
#include <unordered_map>

namespace ekq {

Perm perm_identity(int p) {
    Perm s(p);
    std::iota(s.begin(), s.end(), 0);
    return s;
}

bool perm_valid(const Perm& sigma) {
    std::vector<bool> seen(sigma.size(), false);
    for (int v : sigma) {
        if (v < 0 || v >= int(sigma.size()) || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Perm perm_compose(const Perm& tau, const Perm& sigma) {
    if (tau.size() != sigma.size()) throw TensorError("permutation size mismatch");
    Perm out(sigma.size());
    for (std::size_t p = 0; p < sigma.size(); ++p) out[p] = tau[sigma[p]];
    return out;
}

Perm perm_inverse(const Perm& sigma) {
    Perm out(sigma.size());
    for (std::size_t p = 0; p < sigma.size(); ++p) out[sigma[p]] = int(p);
    return out;
}

SparseTensor::SparseTensor(int in, int out, int dim) : in_(in), out_(out), dim_(dim) {
    if (in < 0 || out < 0 || dim < 0) throw TensorError("negative tensor shape");
}

void SparseTensor::add(const Index& idx, const Rational& c) {
    if (int(idx.size()) != in_ + out_) throw TensorError("index tuple has wrong length");
    for (int v : idx)
        if (v < 0 || v >= dim_) throw TensorError("index out of range");
    entries_.add(idx, c);
}

void SparseTensor::require_shape(const SparseTensor& o) const {
    if (o.in_ != in_ || o.out_ != out_ || o.dim_ != dim_) throw TensorError("tensor shape mismatch");
}

SparseTensor& SparseTensor::operator+=(const SparseTensor& o) {
    require_shape(o);
    entries_ += o.entries_;
    return *this;
}

SparseTensor& SparseTensor::operator-=(const SparseTensor& o) {
    require_shape(o);
    entries_ -= o.entries_;
    return *this;
}

SparseTensor SparseTensor::scaled(const Rational& c) const {
    SparseTensor t(in_, out_, dim_);
    t.entries_ = entries_.scaled(c);
    return t;
}

SparseTensor SparseTensor::identity(int k, int dim) { return permutation(perm_identity(k), dim); }

SparseTensor SparseTensor::permutation(const Perm& sigma, int dim) {
    if (!perm_valid(sigma)) throw TensorError("not a permutation");
    int k = int(sigma.size());
    SparseTensor t(k, k, dim);
    Index idx(2 * k, 0);
    // odometer over all input tuples
    while (true) {
        for (int p = 0; p < k; ++p) idx[k + sigma[p]] = idx[p];
        t.entries_.add(idx, Rational(1));
        int p = k - 1;
        while (p >= 0 && ++idx[p] == dim) idx[p--] = 0;
        if (p < 0) break;
    }
    return t;
}

SparseTensor compose(const SparseTensor& a, const SparseTensor& b) {
    if (a.dim() != b.dim()) throw TensorError("compose: dimension mismatch");
    if (a.in() != b.out()) throw TensorError("compose: arity mismatch");
    int k = a.in();
    std::map<SparseTensor::Index, std::vector<std::pair<SparseTensor::Index, Rational>>> by_mid;
    for (const auto& [idx, c] : a.entries()) {
        SparseTensor::Index mid(idx.begin(), idx.begin() + k);
        by_mid[mid].emplace_back(SparseTensor::Index(idx.begin() + k, idx.end()), c);
    }
    SparseTensor out(b.in(), a.out(), a.dim());
    for (const auto& [idx, c] : b.entries()) {
        SparseTensor::Index mid(idx.begin() + b.in(), idx.end());
        auto it = by_mid.find(mid);
        if (it == by_mid.end()) continue;
        for (const auto& [tail, c2] : it->second) {
            SparseTensor::Index full(idx.begin(), idx.begin() + b.in());
            full.insert(full.end(), tail.begin(), tail.end());
            out.add(full, c * c2);
        }
    }
    return out;
}

SparseTensor tensor(const SparseTensor& a, const SparseTensor& b) {
    if (a.dim() != b.dim()) throw TensorError("tensor: dimension mismatch");
    SparseTensor out(a.in() + b.in(), a.out() + b.out(), a.dim());
    for (const auto& [ia, ca] : a.entries())
        for (const auto& [ib, cb] : b.entries()) {
            SparseTensor::Index full;
            full.insert(full.end(), ia.begin(), ia.begin() + a.in());
            full.insert(full.end(), ib.begin(), ib.begin() + b.in());
            full.insert(full.end(), ia.begin() + a.in(), ia.end());
            full.insert(full.end(), ib.begin() + b.in(), ib.end());
            out.add(full, ca * cb);
        }
    return out;
}

SparseTensor permute(const SparseTensor& t, const Perm& sigma_in, const Perm& sigma_out) {
    if (int(sigma_in.size()) != t.in() || int(sigma_out.size()) != t.out())
        throw TensorError("permute: permutation size does not match arity");
    if (!perm_valid(sigma_in) || !perm_valid(sigma_out)) throw TensorError("permute: not a permutation");
    SparseTensor out(t.in(), t.out(), t.dim());
    for (const auto& [idx, c] : t.entries()) {
        SparseTensor::Index n(idx.size());
        for (int p = 0; p < t.in(); ++p) n[sigma_in[p]] = idx[p];
        for (int q = 0; q < t.out(); ++q) n[t.in() + sigma_out[q]] = idx[t.in() + q];
        out.add(n, c);
    }
    return out;
}

}  // namespace ekq
