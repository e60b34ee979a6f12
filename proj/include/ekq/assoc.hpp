#pragma once

#include "ekq/series.hpp"
#include "ekq/verma.hpp"

namespace ekq {

struct AssocError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using VSeries = HSeries<MultiVector>;
using Group = std::vector<int>;

VSeries lift(const MultiVector& v, int order = kDefaultOrder);

/// Sum over k of (a_k in slot i)(b^k in slot j) + (b^k in slot i)(a_k in slot j).
MultiVector omega_insert(const VermaModules& M, int i, int j, const MultiVector& v);
/// t_12 for the groups P, Q: sum of Omega_pq, p in P, q in Q.
MultiVector grouped(const VermaModules& M, const Group& P, const Group& Q, const MultiVector& v);

/// Phi_{P1,P2,P3} = 1 + h^2/24 [t12, t23] (or its inverse) applied to v.
VSeries phi_apply(const VermaModules& M, const std::vector<Group>& parts, const VSeries& v, bool inverse = false);
/// exp(sign h t_PQ / 2) applied to v.
VSeries exp_apply(const VermaModules& M, const Group& P, const Group& Q, const VSeries& v, int sign = 1);
/// Swap slot i with slot i+1.
MultiVector swap_slots(const MultiVector& v, int i);
VSeries swap_slots(const VSeries& v, int i);
/// beta = s exp(h Omega/2) on slots (i, i+1).
VSeries braid(const VermaModules& M, int i, const VSeries& v);
/// gamma = exp(-h Omega/2) s on slots (i, i+1).
VSeries braid_gamma(const VermaModules& M, int i, const VSeries& v);

/// Differences of the two sides of each relation, on one test vector.
VSeries pentagon_residual(const VermaModules& M, const MultiVector& v);
std::pair<VSeries, VSeries> hexagon_residuals(const VermaModules& M, const MultiVector& v);

/// Basis vectors with at most two letters in total, over the given slot kinds.
std::vector<MultiVector> test_vectors(const VermaModules& M, const std::vector<Slot>& kinds);

bool series_is_zero(const VSeries& s);

}  // namespace ekq
