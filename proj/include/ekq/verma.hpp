#pragma once

#include <map>
#include <mutex>

#include "ekq/manin.hpp"
#include "ekq/pbw.hpp"

namespace ekq {

struct VermaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Plus: b-word applied to 1+. Minus: a-word applied to 1-. Dual: rho_beta, the
/// functional dual to the monomial b^beta 1+, known only up to the slot bound.
enum class Slot { Plus, Minus, Dual };

struct MultiVector {
    std::vector<Slot> kinds;
    std::vector<int> bounds;  // meaningful for Dual slots; -1 means nothing is known
    Lin<std::vector<Word>> terms;

    MultiVector() = default;
    MultiVector(std::vector<Slot> k, std::vector<int> b = {});

    int arity() const { return int(kinds.size()); }
    bool is_zero() const { return terms.is_zero(); }
    void add(const std::vector<Word>& ws, const Rational& c);
    /// Sum with bound intersection; an empty vector adopts the other's shape.
    MultiVector& operator+=(const MultiVector& o);
    MultiVector& operator-=(const MultiVector& o);
    MultiVector scaled(const Rational& c) const;
    friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
    friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
    friend bool operator==(const MultiVector& a, const MultiVector& b) {
        return a.kinds == b.kinds && a.bounds == b.bounds && a.terms == b.terms;
    }
    void prune();
};

using PairedVector = MultiVector;

MultiVector tensor(const MultiVector& x, const MultiVector& y);

class VermaModules {
public:
    explicit VermaModules(DoubleAlgebra d);

    const DoubleAlgebra& dbl() const { return d_; }
    const Pbw& U() const { return ug_; }
    int n() const { return d_.n; }

    Lin<Word> act_plus(int x, const Word& w) const;
    Lin<Word> act_minus(int x, const Word& w) const;
    Lin<Word> act_plus(const EnvElement& x, const Lin<Word>& v) const;
    Lin<Word> act_minus(const EnvElement& x, const Lin<Word>& v) const;
    /// (x f)(v) = -f(x v); only values on words of length <= new_bound.
    Lin<Word> dual_act(int x, const Word& beta, int new_bound) const;
    int lowered_bound(int x, int bound) const { return d_.is_a(x) ? bound : bound - 1; }

    MultiVector act_slot(int x, int slot, const MultiVector& v) const;
    MultiVector act_diag(int x, const MultiVector& v) const;
    /// Letters act right to left.
    MultiVector act_word_diag(const Word& w, const MultiVector& v) const;
    MultiVector act_diag(const EnvElement& x, const MultiVector& v) const;

    /// Evaluate the listed Dual slots at 1+ and drop them.
    MultiVector eval_at_one(const MultiVector& v, const std::vector<int>& slots) const;

    EnvTensor i_minus(const Lin<Word>& v) const;
    MultiVector i_plus_star(const MultiVector& fg) const;

    enum class Elimination { First, Last };
    PairedVector solve_psi(const EnvElement& x, int D, Elimination e = Elimination::First) const;
    /// b^j psi for every j; all must vanish for a valid intertwiner.
    std::vector<PairedVector> invariance_residuals(const PairedVector& psi) const;
    PairedVector psi_on(const PairedVector& psi, const Lin<Word>& w) const;
    /// Replace the Minus slot `slot` of v by psi applied to it; the new Dual slot
    /// comes right before the Minus slot.
    MultiVector apply_psi(const MultiVector& v, int slot, const PairedVector& psi) const;

    MultiVector phi_forward(const EnvElement& x) const;
    EnvElement phi_inverse(const MultiVector& v) const;

    /// Sorted b-words of length <= k, as M+ basis.
    const std::vector<Word>& plus_basis(int k) const;

private:
    const std::map<Word, Lin<Word>>& dual_table(int x, int new_bound) const;
    MultiVector phi_monomial(const Word& w) const;

    DoubleAlgebra d_;
    Pbw ug_, uplus_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, std::map<Word, Lin<Word>>> dual_cache_;
    mutable std::map<int, std::vector<Word>> basis_cache_;
    mutable std::map<Word, MultiVector> phi_cache_;
};

}  // namespace ekq
