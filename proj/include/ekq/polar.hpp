#pragma once

#include "ekq/quantize.hpp"

namespace ekq {

/// Vectors of M+ or M- with coefficients in k[[h]].
using ModSeries = HSeries<Lin<Word>>;

/// m_-(x) for the morphism x : M+ (x) M- -> M+ with x(1+ (x) 1-) = x0, as an element of U(g)[[h]].
ESeries m_minus(const VermaModules& M, const ModSeries& x0);
/// m_+(x) for x : M+ (x) M- -> M- with x(1+ (x) 1-) = x0.
ESeries m_plus(const VermaModules& M, const ModSeries& x0);

/// Unit, classical limit, closure under composition and the factorization U(g+) (x) U(g-) -> U(g)
/// on basis vectors of degree <= max_degree.
std::vector<CheckResult> part1_product_check(const VermaModules& M, int max_degree, int order = kDefaultOrder);

struct Polarization {
    TSeries K;
    TSeries R_tilde;
    CheckResult result;
};

Polarization polarize_R(const QuantizedDouble& q);

/// Rank of the coefficient matrix of a family of elements.
int rank(const std::vector<EnvElement>& xs);

}  // namespace ekq
