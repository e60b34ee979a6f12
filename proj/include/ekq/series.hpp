#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ekq {

/// Default truncation: coefficients of h^0, h^1, h^2.
inline constexpr int kDefaultOrder = 3;

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncated power series in h with coefficients in C. Arithmetic drops every
/// term of h-degree >= order().
template <class C>
class HSeries {
public:
    HSeries() : coeffs_(kDefaultOrder) {}
    explicit HSeries(int order) : coeffs_(check_order(order)) {}
    HSeries(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { check_order(int(coeffs_.size())); }

    static HSeries constant(C c, int order = kDefaultOrder) {
        HSeries s(order);
        s.coeffs_[0] = std::move(c);
        return s;
    }

    int order() const { return int(coeffs_.size()); }
    const C& operator[](int k) const { return coeffs_.at(k); }
    C& operator[](int k) { return coeffs_.at(k); }
    const std::vector<C>& coeffs() const { return coeffs_; }

    HSeries& operator+=(const HSeries& o) {
        require_same(o);
        for (int k = 0; k < order(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    HSeries& operator-=(const HSeries& o) {
        require_same(o);
        for (int k = 0; k < order(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    friend HSeries operator+(HSeries a, const HSeries& b) { return a += b; }
    friend HSeries operator-(HSeries a, const HSeries& b) { return a -= b; }

    /// Apply a coefficientwise linear map.
    template <class F>
    auto map(F&& f) const {
        using D = decltype(f(coeffs_[0]));
        std::vector<D> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(f(c));
        return HSeries<D>(std::move(out));
    }

    friend bool operator==(const HSeries& a, const HSeries& b) { return a.coeffs_ == b.coeffs_; }

    void require_same(const HSeries& o) const {
        if (o.order() != order())
            throw SeriesError("series order mismatch: " + std::to_string(order()) + " vs " +
                              std::to_string(o.order()));
    }

private:
    static int check_order(int order) {
        if (order < 1) throw SeriesError("series order must be positive");
        return order;
    }
    std::vector<C> coeffs_;
};

/// Coefficient of h^k in the product is the sum over i+j=k of mul(x_i, y_j).
template <class C, class Mul>
HSeries<C> series_mul(const HSeries<C>& x, const HSeries<C>& y, Mul&& mul) {
    x.require_same(y);
    HSeries<C> out(x.order());
    for (int i = 0; i < x.order(); ++i)
        for (int j = 0; i + j < x.order(); ++j) out[i + j] += mul(x[i], y[j]);
    return out;
}

/// Inverse of a series whose h^0 coefficient equals `unit`.
template <class C, class Mul>
HSeries<C> series_inverse(const HSeries<C>& x, const C& unit, Mul&& mul) {
    if (!(x[0] == unit)) throw SeriesError("series_inverse: leading coefficient is not the unit");
    HSeries<C> y(x.order());
    y[0] = unit;
    for (int k = 1; k < x.order(); ++k) {
        C acc{};
        for (int j = 1; j <= k; ++j) acc += mul(x[j], y[k - j]);
        y[k] -= acc;
    }
    return y;
}

/// Scale the h^j coefficient by h^shift (multiplication by h^shift, truncated).
template <class C>
HSeries<C> shift_h(const HSeries<C>& x, int shift) {
    HSeries<C> out(x.order());
    for (int k = 0; k + shift < x.order(); ++k) out[k + shift] = x[k];
    return out;
}

}  // namespace ekq
