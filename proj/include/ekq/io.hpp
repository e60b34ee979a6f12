#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ekq/acyc.hpp"
#include "ekq/bialg.hpp"
#include "ekq/quantize.hpp"
#include "ekq/report.hpp"
#include "ekq/tensor.hpp"
#include "ekq/ybq.hpp"

namespace ekq {

using json = nlohmann::ordered_json;

/// Structurally invalid input (missing field, wrong type, bad number).
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A basis label or index that does not name a basis element.
struct LabelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json parse_json_text(const std::string& text);
std::string read_file(const std::string& path);

json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);

/*
  Bialgebra:
    {"name": "axb", "basis": ["a1","a2"],
     "bracket":   [{"i": 1, "j": 2, "k": 2, "coeff": "1"}, ...],
     "cobracket": [{"i": 2, "j": 1, "k": 2, "coeff": "1"}, ...],
     "auto_antisymmetrize": true}
  Indices are 1-based integers or basis labels.  With auto_antisymmetrize the
  mirrored entries ([e_j,e_i] and the swapped cobracket factors) are filled in.
  Optional "r": [{"i","j","coeff"}] carries an r-matrix.
*/
json bialgebra_to_json(const LieBialgebra& g, const std::string& name = "");
LieBialgebra bialgebra_from_json(const json& j);

/*
  Associative algebra:
    {"name": ..., "basis": [...], "mult": [{"i","j","k","coeff"}], "unit": ["1","0",...]}
  e_i e_j = sum coeff e_k.
*/
json assoc_to_json(const AssocAlgebra& A, const std::string& name = "");
AssocAlgebra assoc_from_json(const json& j);

/// "r": [{"i","j","coeff"}] resolved against the given basis; absent -> nullopt.
json matrix_to_json(const Matrix& r, const std::vector<std::string>& basis);
std::optional<Matrix> matrix_from_json(const json& j, const std::vector<std::string>& basis);

/// {"in","out","dim","entries":[{"index":[1-based...],"coeff"}]}
json tensor_to_json(const SparseTensor& t);
SparseTensor tensor_from_json(const json& j);

/// Words are lists of basis labels; [] is the unit.
json word_to_json(const Word& w, const std::vector<std::string>& basis);
Word word_from_json(const json& j, const std::vector<std::string>& basis);
/// "a1 a2", "a1*a2", "a1,a2"; "1" or "" is the empty word.
Word word_from_text(const std::string& text, const std::vector<std::string>& basis);

/// {"order": 3, "terms": [[{"word":[...],"coeff"}], ...]} one list per power of h.
json series_to_json(const ESeries& s, const std::vector<std::string>& basis);
ESeries eseries_from_json(const json& j, const std::vector<std::string>& basis);
/// Tensor terms carry "factors": a list of words.
json series_to_json(const TSeries& s, const std::vector<std::string>& basis);
TSeries tseries_from_json(const json& j, const std::vector<std::string>& basis);
/// Series over A^(x)k: terms carry "index": [labels].
json series_to_json(const ASeries& s, const std::vector<std::string>& basis);

json checks_to_json(const std::vector<CheckResult>& rs);
std::vector<CheckResult> checks_from_json(const json& j);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

/// Deterministic text form: two-space indentation, trailing newline.
std::string dump(const json& j);

}  // namespace ekq
