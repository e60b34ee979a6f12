#pragma once

#include <map>
#include <string>
#include <vector>

#include "ekq/bialg.hpp"
#include "ekq/quantize.hpp"
#include "ekq/tensor.hpp"
#include "ekq/ybq.hpp"

namespace ekq {

struct AcycError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : AcycError {
    ParseError(std::size_t pos, const std::string& msg)
        : AcycError("parse error at position " + std::to_string(pos) + ": " + msg), pos(pos) {}
    std::size_t pos;
};

struct Expr {
    enum class Kind { Prim, Perm, Id, Tensor, Compose, Sum };
    Kind kind = Kind::Id;
    std::string prim;
    Perm perm;  // 0-based
    int k = 0;
    std::vector<Expr> kids;
    std::vector<Rational> weights;
    int in = 0, out = 0;
};

/// mu (2,1), delta (1,2), r (0,2), unit (0,1).
std::pair<int, int> primitive_arity(const std::string& name);

Expr parse_expr(const std::string& text);
std::string print(const Expr& e);
/// Recomputes arities; throws AcycError naming the offending node path.
void validate(Expr& e);

/// Primitive tensors of one of the signatures lba ([,], delta), qtlba ([,], r), cyba (*, 1, r).
struct Structure {
    std::string signature;
    int dim = 0;
    std::map<std::string, SparseTensor> prims;
};

Structure structure_lba(const LieBialgebra& g);
Structure structure_qtlba(const LieBialgebra& g, const Matrix& r);
Structure structure_cyba(const AssocAlgebra& A, const Matrix& r);

SparseTensor evaluate(const Expr& e, const Structure& s);

struct BankEntry {
    std::string name;
    std::string signature;
    /// "identity": every part evaluates to zero on valid structures.
    /// "symmetric": part k is the degree-k component in symmetrized PBW coordinates.
    std::string kind;
    std::vector<std::string> parts;
    std::string description;
};

const std::vector<BankEntry>& universal_bank();
const BankEntry& bank_entry(const std::string& name);

/// Symmetrized PBW coordinates: degree -> symmetric tensor (full index tuples).
using SymCoords = std::map<int, Lin<std::vector<int>>>;
SymCoords to_symmetric(const Pbw& U, const EnvElement& x);
EnvElement from_symmetric(const Pbw& U, const SymCoords& s);

/// Value of a symmetric bank entry at basis inputs, as an element of U(g).
EnvElement evaluate_symmetric(const BankEntry& e, const Structure& s, const std::vector<int>& inputs, const Pbw& U);

/// f^(x)out after T versus T' after f^(x)in for every applicable bank expression.
std::vector<CheckResult> naturality_check(const BialgebraHom& f);

/// Sf extended through symmetrized PBW coordinates.
EnvElement apply_sf(const BialgebraHom& f, const Pbw& Us, const Pbw& Ut, const EnvElement& x);

/// Sf intertwines the quantized products and coproducts mod h^order.
std::vector<CheckResult> functoriality_check(const BialgebraHom& f, int max_degree = 2, int order = kDefaultOrder);

}  // namespace ekq
