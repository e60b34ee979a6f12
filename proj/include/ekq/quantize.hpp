#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "ekq/assoc.hpp"
#include "ekq/report.hpp"

namespace ekq {

struct QuantizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ESeries = HSeries<EnvElement>;
using TSeries = HSeries<EnvTensor>;

ESeries series_mul(const Pbw& U, const ESeries& x, const ESeries& y);
TSeries series_mul(const Pbw& U, const TSeries& x, const TSeries& y);
TSeries series_inverse(const Pbw& U, const TSeries& x);
ESeries series_inverse(const Pbw& U, const ESeries& x);
TSeries op(const TSeries& x);
TSeries tensor_series(const TSeries& x, const TSeries& y);
/// exp(h t / 2) for a 2-tensor t, truncated.
TSeries exp_half(const Pbw& U, const EnvTensor& t, int order, int sign = 1);
/// Replace factor `slot` of every term by a series-valued image (convolution in h).
template <class F>
TSeries apply_factor_series(const TSeries& x, int slot, F&& f);

std::string describe(const EnvTensor& t);
std::string describe(const TSeries& s);
bool is_zero(const TSeries& s);
bool is_zero(const ESeries& s);

/// (phi^-1 (x) phi^-1) of a vector in M+ (x) M- (x) M+ (x) M-.
EnvTensor phi_inverse_pairs(const VermaModules& M, const MultiVector& v);

/// The pipeline Phi^-1_{1,2,34} Phi_{234} s exp(sign h Omega_23/2) Phi^-1_{234} Phi_{1,2,34}
/// on 1+ (x) 1+ (x) 1- (x) 1-, pulled back to U(g)^(x)2.
TSeries twist_element(const VermaModules& M, int sign, int order = kDefaultOrder);

/// U(g)[[h]] with the coproduct, antipode and R-matrix obtained from a twist J.
class TwistedHopf {
public:
    /// R = (J^op)^-1 e^{h Omega/2} J.
    TwistedHopf(std::shared_ptr<const Pbw> U, TSeries J, const EnvTensor& omega);

    const Pbw& U() const { return *U_; }
    int order() const { return order_; }
    const TSeries& J() const { return J_; }
    const TSeries& J_inverse() const { return Jinv_; }
    const TSeries& R() const { return R_; }
    const ESeries& Q() const { return Q_; }

    TSeries coproduct(const EnvElement& x) const;
    ESeries antipode(const EnvElement& x) const;
    Rational counit(const EnvElement& x) const { return counit0(x); }
    /// (Delta (x) 1) or (1 (x) Delta) on a series of k-fold tensors.
    TSeries coproduct_on_factor(const TSeries& x, int slot) const;
    ESeries antipode_series(const ESeries& x) const;

private:
    TSeries coproduct_word(const Word& w) const;
    ESeries antipode_word(const Word& w) const;

    std::shared_ptr<const Pbw> U_;
    int order_;
    TSeries J_, Jinv_, R_;
    ESeries Q_, Qinv_;
    mutable std::mutex mu_;
    mutable std::map<Word, TSeries> dcache_;
    mutable std::map<Word, ESeries> scache_;
};

class QuantizedDouble {
public:
    QuantizedDouble(std::shared_ptr<const VermaModules> M, int order = kDefaultOrder);

    const VermaModules& modules() const { return *M_; }
    const Pbw& U() const { return M_->U(); }
    const DoubleAlgebra& dbl() const { return M_->dbl(); }
    int order() const { return hopf_->order(); }
    const TwistedHopf& hopf() const { return *hopf_; }

    const TSeries& J() const { return hopf_->J(); }
    const TSeries& J_inverse() const { return hopf_->J_inverse(); }
    const TSeries& R() const { return hopf_->R(); }
    const ESeries& Q() const { return hopf_->Q(); }

    TSeries coproduct(const EnvElement& x) const { return hopf_->coproduct(x); }
    ESeries antipode(const EnvElement& x) const { return hopf_->antipode(x); }
    TSeries coproduct_on_factor(const TSeries& x, int slot) const { return hopf_->coproduct_on_factor(x, slot); }

private:
    std::shared_ptr<const VermaModules> M_;
    std::unique_ptr<TwistedHopf> hopf_;
};

std::vector<CheckResult> hopf_suite(const TwistedHopf& q, int max_degree, int alphabet);
/// r is the classical r-matrix the structure quantizes.
std::vector<CheckResult> quasitriangular_suite(const TwistedHopf& q, const EnvTensor& r, int alphabet);
/// (Delta - Delta^op)/h = delta and Delta_1 = [Delta_0, r]/2 on generators.
std::vector<CheckResult> quasiclassical_suite(const TwistedHopf& q, const EnvTensor& r,
                                              const std::vector<EnvTensor>& delta, const std::string& label);

std::vector<CheckResult> hopf_suite(const QuantizedDouble& q, int max_degree);
std::vector<CheckResult> quasitriangular_suite(const QuantizedDouble& q);
std::vector<CheckResult> double_limits(const QuantizedDouble& q);

/// U_h(a) realized on M- = U(a).
class QuantizedUEA {
public:
    /// bound < 0 selects deg(x) + deg(y) + 2 per call.
    explicit QuantizedUEA(const LieBialgebra& a, int order = kDefaultOrder, int bound = -1);

    const LieBialgebra& base() const { return a_; }
    const VermaModules& modules() const { return *M_; }
    const Pbw& Ua() const { return ua_; }
    int order() const { return order_; }

    const PairedVector& psi(const Word& x, int D) const;
    ESeries product(const EnvElement& x, const EnvElement& y) const;
    TSeries coproduct(const EnvElement& x) const;
    /// The operator on M- (x) M- whose inverse carries i_-(x) to the coproduct.
    TSeries calJ(const Word& u, const Word& w) const;
    ESeries product_series(const ESeries& x, const ESeries& y) const;

private:
    ESeries product_words(const Word& x, const Word& y) const;
    TSeries apply_calJ(int k, const EnvTensor& t) const;
    int bound_for(int deg) const { return bound_ >= 0 ? bound_ : deg + 2; }

    LieBialgebra a_;
    std::shared_ptr<const VermaModules> M_;
    Pbw ua_;
    int order_, bound_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<Word, int>, PairedVector> psi_cache_;
    mutable std::map<std::pair<Word, Word>, ESeries> prod_cache_;
    mutable std::map<std::pair<Word, Word>, TSeries> calj_cache_;
    mutable std::map<Word, TSeries> cop_cache_;
};

/// (1/24)(f_p^{ik} f_q^{ls} c_kl^j c_ij^m a_m a_s + f_p^{in} f_q^{ls} c_il^r a_r a_n a_s)
EnvElement h2_product_formula(const LieBialgebra& a, int p, int q);

std::vector<CheckResult> uea_suite(const QuantizedUEA& q, bool full);

template <class F>
TSeries apply_factor_series(const TSeries& x, int slot, F&& f) {
    TSeries out(x.order());
    for (int k = 0; k < x.order(); ++k)
        for (const auto& [ws, c] : x[k]) {
            auto img = f(ws[slot]);
            for (int m = 0; k + m < x.order(); ++m)
                for (const auto& [vs, d] : img[m]) {
                    std::vector<Word> ns(ws.begin(), ws.begin() + slot);
                    ns.insert(ns.end(), vs.begin(), vs.end());
                    ns.insert(ns.end(), ws.begin() + slot + 1, ws.end());
                    out[k + m].add(ns, c * d);
                }
        }
    return out;
}

}  // namespace ekq
