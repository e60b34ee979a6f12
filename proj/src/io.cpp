#include "ekq/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace ekq {

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json rational_to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const json& j) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw FormatError("bad rational " + j.dump() + ": " + e.what());
    }
    throw FormatError("coefficients must be integers or rational strings, got " + j.dump());
}

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw FormatError("expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
    return *it;
}

const json& array_field(const json& j, const char* key) {
    const json& a = field(j, key);
    if (!a.is_array()) throw FormatError(std::string("field '") + key + "' must be an array");
    return a;
}

int resolve(const json& v, const std::vector<std::string>& basis) {
    if (v.is_number_integer()) {
        long i = v.get<long>();
        if (i < 1 || i > long(basis.size()))
            throw LabelError("index " + std::to_string(i) + " out of range 1.." + std::to_string(basis.size()));
        return int(i - 1);
    }
    if (v.is_string()) {
        auto s = v.get<std::string>();
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == s) return int(i);
        throw LabelError("unknown basis label '" + s + "'");
    }
    throw FormatError("basis references must be 1-based integers or labels, got " + v.dump());
}

std::vector<std::string> read_basis(const json& j) {
    std::vector<std::string> basis;
    if (j.contains("basis")) {
        const json& b = array_field(j, "basis");
        for (const auto& x : b) {
            if (!x.is_string()) throw FormatError("basis labels must be strings");
            basis.push_back(x.get<std::string>());
        }
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t k = 0; k < i; ++k)
                if (basis[i] == basis[k]) throw FormatError("duplicate basis label '" + basis[i] + "'");
        if (j.contains("dim") && field(j, "dim") != json(basis.size()))
            throw FormatError("dim does not match the number of basis labels");
    } else {
        const json& d = field(j, "dim");
        if (!d.is_number_integer() || d.get<long>() < 0 || d.get<long>() > 64) throw FormatError("dim must be an integer in 0..64");
        for (long i = 0; i < d.get<long>(); ++i) basis.push_back("e" + std::to_string(i + 1));
    }
    return basis;
}

// entries {i,j,k,coeff} into a Table3, optionally filling the mirror image
void fill_table(Table3& t, const json& entries, const std::vector<std::string>& basis, bool mirror_ij, bool mirror_jk,
                const char* what) {
    std::map<std::array<int, 3>, Rational> given;
    for (const auto& e : entries) {
        std::array<int, 3> key{resolve(field(e, "i"), basis), resolve(field(e, "j"), basis), resolve(field(e, "k"), basis)};
        if (given.count(key)) throw FormatError(std::string("duplicate ") + what + " entry");
        given[key] = rational_from_json(field(e, "coeff"));
    }
    for (const auto& [key, c] : given) {
        auto [i, j, k] = key;
        t(i, j, k) = c;
        std::array<int, 3> m = key;
        if (mirror_ij) m = {j, i, k};
        else if (mirror_jk) m = {i, k, j};
        else continue;
        if (m == key) continue;
        auto it = given.find(m);
        if (it != given.end() && it->second != -c)
            throw FormatError(std::string("inconsistent mirrored ") + what + " entries");
        t(m[0], m[1], m[2]) = -c;
    }
}

json table_to_json(const Table3& t, const std::vector<std::string>& basis) {
    json out = json::array();
    int n = t.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!t(i, j, k).is_zero())
                    out.push_back({{"i", basis[i]}, {"j", basis[j]}, {"k", basis[k]}, {"coeff", rational_to_json(t(i, j, k))}});
    return out;
}

template <class Fn>
auto guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw FormatError(e.what());
    }
}

}  // namespace

json bialgebra_to_json(const LieBialgebra& g, const std::string& name) {
    json j;
    if (!name.empty()) j["name"] = name;
    j["basis"] = g.names;
    j["bracket"] = table_to_json(g.c, g.names);
    j["cobracket"] = table_to_json(g.f, g.names);
    j["auto_antisymmetrize"] = false;
    return j;
}

LieBialgebra bialgebra_from_json(const json& j) {
    return guarded([&] {
        auto basis = read_basis(j);
        LieBialgebra g(int(basis.size()), basis);
        bool anti = j.contains("auto_antisymmetrize") && field(j, "auto_antisymmetrize").get<bool>();
        if (j.contains("bracket")) fill_table(g.c, array_field(j, "bracket"), basis, anti, false, "bracket");
        if (j.contains("cobracket")) fill_table(g.f, array_field(j, "cobracket"), basis, false, anti, "cobracket");
        return g;
    });
}

json assoc_to_json(const AssocAlgebra& A, const std::string& name) {
    json j;
    if (!name.empty()) j["name"] = name;
    j["basis"] = A.names;
    j["mult"] = table_to_json(A.m, A.names);
    json u = json::array();
    for (const auto& c : A.unit) u.push_back(rational_to_json(c));
    j["unit"] = u;
    return j;
}

AssocAlgebra assoc_from_json(const json& j) {
    return guarded([&] {
        AssocAlgebra A;
        A.names = read_basis(j);
        A.dim = int(A.names.size());
        A.m = Table3(A.dim);
        fill_table(A.m, array_field(j, "mult"), A.names, false, false, "mult");
        const json& u = array_field(j, "unit");
        if (int(u.size()) != A.dim) throw FormatError("unit must list one coefficient per basis element");
        for (const auto& c : u) A.unit.push_back(rational_from_json(c));
        return A;
    });
}

json matrix_to_json(const Matrix& r, const std::vector<std::string>& basis) {
    json out = json::array();
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t k = 0; k < r[i].size(); ++k)
            if (!r[i][k].is_zero()) out.push_back({{"i", basis[i]}, {"j", basis[k]}, {"coeff", rational_to_json(r[i][k])}});
    return out;
}

std::optional<Matrix> matrix_from_json(const json& j, const std::vector<std::string>& basis) {
    return guarded([&]() -> std::optional<Matrix> {
        if (!j.is_object() || !j.contains("r")) return std::nullopt;
        Matrix r(basis.size(), std::vector<Rational>(basis.size()));
        std::map<std::pair<int, int>, bool> seen;
        for (const auto& e : array_field(j, "r")) {
            int a = resolve(field(e, "i"), basis), b = resolve(field(e, "j"), basis);
            if (seen[{a, b}]) throw FormatError("duplicate r entry");
            seen[{a, b}] = true;
            r[a][b] = rational_from_json(field(e, "coeff"));
        }
        return r;
    });
}

json tensor_to_json(const SparseTensor& t) {
    json entries = json::array();
    for (const auto& [idx, c] : t.entries()) {
        json ix = json::array();
        for (int x : idx) ix.push_back(x + 1);
        entries.push_back({{"index", ix}, {"coeff", rational_to_json(c)}});
    }
    return {{"in", t.in()}, {"out", t.out()}, {"dim", t.dim()}, {"entries", entries}};
}

SparseTensor tensor_from_json(const json& j) {
    return guarded([&] {
        int in = field(j, "in").get<int>(), out = field(j, "out").get<int>(), dim = field(j, "dim").get<int>();
        if (in < 0 || out < 0 || dim < 0) throw FormatError("negative tensor shape");
        SparseTensor t(in, out, dim);
        std::vector<std::string> basis(dim);
        for (int i = 0; i < dim; ++i) basis[i] = std::to_string(i + 1);
        for (const auto& e : array_field(j, "entries")) {
            const json& ix = array_field(e, "index");
            if (int(ix.size()) != in + out) throw FormatError("tensor index has the wrong length");
            SparseTensor::Index idx;
            for (const auto& x : ix) {
                if (!x.is_number_integer()) throw FormatError("tensor indices must be integers");
                idx.push_back(resolve(x, basis));
            }
            t.add(idx, rational_from_json(field(e, "coeff")));
        }
        return t;
    });
}

json word_to_json(const Word& w, const std::vector<std::string>& basis) {
    json out = json::array();
    for (auto x : w) out.push_back(basis.at(x));
    return out;
}

Word word_from_json(const json& j, const std::vector<std::string>& basis) {
    if (!j.is_array()) throw FormatError("a word must be an array of basis labels");
    Word w;
    for (const auto& x : j) w.push_back(std::uint8_t(resolve(x, basis)));
    return w;
}

Word word_from_text(const std::string& text, const std::vector<std::string>& basis) {
    std::string s = text;
    for (char& c : s)
        if (c == '*' || c == ',') c = ' ';
    std::istringstream in(s);
    std::string tok;
    Word w;
    while (in >> tok) {
        if (tok == "1") continue;
        w.push_back(std::uint8_t(resolve(json(tok), basis)));
    }
    return w;
}

json series_to_json(const ESeries& s, const std::vector<std::string>& basis) {
    json terms = json::array();
    for (int k = 0; k < s.order(); ++k) {
        json level = json::array();
        for (const auto& [w, c] : s[k]) level.push_back({{"word", word_to_json(w, basis)}, {"coeff", rational_to_json(c)}});
        terms.push_back(level);
    }
    return {{"order", s.order()}, {"terms", terms}};
}

json series_to_json(const TSeries& s, const std::vector<std::string>& basis) {
    json terms = json::array();
    for (int k = 0; k < s.order(); ++k) {
        json level = json::array();
        for (const auto& [ws, c] : s[k]) {
            json f = json::array();
            for (const auto& w : ws) f.push_back(word_to_json(w, basis));
            level.push_back({{"factors", f}, {"coeff", rational_to_json(c)}});
        }
        terms.push_back(level);
    }
    return {{"order", s.order()}, {"terms", terms}};
}

json series_to_json(const ASeries& s, const std::vector<std::string>& basis) {
    json terms = json::array();
    for (int k = 0; k < s.order(); ++k) {
        json level = json::array();
        for (const auto& [ix, c] : s[k]) {
            json f = json::array();
            for (int x : ix) f.push_back(basis.at(x));
            level.push_back({{"index", f}, {"coeff", rational_to_json(c)}});
        }
        terms.push_back(level);
    }
    return {{"order", s.order()}, {"terms", terms}};
}

namespace {

template <class C, class Term>
HSeries<C> series_from_json(const json& j, Term&& term) {
    return guarded([&] {
        const json& terms = array_field(j, "terms");
        int order = field(j, "order").get<int>();
        if (int(terms.size()) != order) throw FormatError("series must list one term list per power of h");
        HSeries<C> s(order);
        for (int k = 0; k < order; ++k) {
            if (!terms[k].is_array()) throw FormatError("series terms must be arrays");
            for (const auto& t : terms[k]) term(s[k], t);
        }
        return s;
    });
}

}  // namespace

ESeries eseries_from_json(const json& j, const std::vector<std::string>& basis) {
    return series_from_json<EnvElement>(j, [&](EnvElement& x, const json& t) {
        x.add(word_from_json(field(t, "word"), basis), rational_from_json(field(t, "coeff")));
    });
}

TSeries tseries_from_json(const json& j, const std::vector<std::string>& basis) {
    return series_from_json<EnvTensor>(j, [&](EnvTensor& x, const json& t) {
        std::vector<Word> ws;
        for (const auto& w : array_field(t, "factors")) ws.push_back(word_from_json(w, basis));
        x.add(ws, rational_from_json(field(t, "coeff")));
    });
}

json checks_to_json(const std::vector<CheckResult>& rs) {
    json out = json::array();
    for (const auto& r : rs) {
        json c = {{"name", r.name}, {"identity", r.identity}, {"status", r.pass ? "pass" : "fail"}};
        if (!r.pass) c["residual"] = r.witness;
        out.push_back(c);
    }
    return out;
}

std::vector<CheckResult> checks_from_json(const json& j) {
    return guarded([&] {
        std::vector<CheckResult> out;
        if (!j.is_array()) throw FormatError("checks must be an array");
        for (const auto& c : j) {
            CheckResult r;
            r.name = field(c, "name").get<std::string>();
            r.identity = field(c, "identity").get<std::string>();
            auto st = field(c, "status").get<std::string>();
            if (st != "pass" && st != "fail") throw FormatError("status must be pass or fail");
            r.pass = st == "pass";
            if (c.contains("residual")) r.witness = c["residual"].get<std::string>();
            out.push_back(r);
        }
        return out;
    });
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream ss;
    for (unsigned i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return ss.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace ekq
