#pragma once

#include <functional>
#include <map>
#include <utility>

#include "ekq/rational.hpp"

namespace ekq {

/// Finite linear combination of keys with rational coefficients.
/// Zero coefficients are never stored, so equality is equality of tables.
template <class Key>
class Lin {
public:
    using Map = std::map<Key, Rational>;
    using const_iterator = typename Map::const_iterator;

    Lin() = default;
    Lin(const Key& k, const Rational& c) { add(k, c); }

    void add(const Key& k, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// this += c * other
    void add_scaled(const Lin& other, const Rational& c) {
        if (c.is_zero()) return;
        for (const auto& [k, v] : other.terms_) add(k, v * c);
    }

    Lin& operator+=(const Lin& o) {
        for (const auto& [k, v] : o.terms_) add(k, v);
        return *this;
    }
    Lin& operator-=(const Lin& o) {
        for (const auto& [k, v] : o.terms_) add(k, -v);
        return *this;
    }
    friend Lin operator+(Lin a, const Lin& b) { return a += b; }
    friend Lin operator-(Lin a, const Lin& b) { return a -= b; }
    Lin operator-() const { return scaled(Rational(-1)); }

    Lin scaled(const Rational& c) const {
        Lin out;
        if (c.is_zero()) return out;
        for (const auto& [k, v] : terms_) out.terms_.emplace(k, v * c);
        return out;
    }

    Rational coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Apply a linear map given on keys.
    template <class Key2, class F>
    Lin<Key2> map_linear(F&& f) const {
        Lin<Key2> out;
        for (const auto& [k, v] : terms_) out.add_scaled(f(k), v);
        return out;
    }

    template <class Pred>
    Lin filtered(Pred&& keep) const {
        Lin out;
        for (const auto& [k, v] : terms_)
            if (keep(k)) out.terms_.emplace(k, v);
        return out;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }
    const Map& terms() const { return terms_; }

    friend bool operator==(const Lin& a, const Lin& b) { return a.terms_ == b.terms_; }

private:
    Map terms_;
};

}  // namespace ekq
