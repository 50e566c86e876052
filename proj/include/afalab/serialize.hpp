// The machine file format: one JSON document per machine.
//
//   model:   "pfa" | "afa" | "mcqfa" | "qfa" | "gfa"
//   scalar:  "rational" | "float"
//   alphabet, states, start, accept (gfa: initial/final instead)
//   transitions: symbol -> array of rows ("^" is the left marker, "$" the
//   right); qfa carries `kraus`: symbol -> array of matrices of [re, im].
//
// Rational entries are encoded as "num/den" strings, floats as JSON
// numbers. Serialization is canonical (sorted keys, two-space indent, one
// trailing newline), so parse followed by serialize is byte-identical on
// canonically formatted files.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "afalab/machine.hpp"

namespace afalab {

namespace detail {

using nlohmann::json;

inline json entry_to_json(const Scalar& s) {
    if (s.is_rational()) return s.str();
    return s.flt();
}

inline Scalar entry_from_json(const json& j, ScalarMode mode) {
    if (j.is_string()) {
        if (mode != ScalarMode::Rational)
            throw ParseError("rational entry in a float machine");
        return Scalar::parse_rational(j.get<std::string>());
    }
    if (j.is_number()) {
        if (mode != ScalarMode::Float64)
            throw ParseError("numeric entry in a rational machine; write \"num/den\"");
        return Scalar::real(j.get<double>());
    }
    throw ParseError("matrix entry must be a string or a number");
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(entry_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j, std::size_t n, ScalarMode mode) {
    if (!j.is_array() || j.size() != n)
        throw ParseError("transition matrix must have `states` rows");
    Matrix m(n, n, mode);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw ParseError("transition matrix must be square");
        for (std::size_t k = 0; k < n; ++k) m.at(i, k) = entry_from_json(j[i][k], mode);
    }
    return m;
}

inline json vector_to_json(const Vector& v) {
    json out = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) out.push_back(entry_to_json(v[i]));
    return out;
}

inline Vector vector_from_json(const json& j, std::size_t n, ScalarMode mode) {
    if (!j.is_array() || j.size() != n)
        throw ParseError("vector must have `states` entries");
    Vector v(n, mode);
    for (std::size_t i = 0; i < n; ++i) v[i] = entry_from_json(j[i], mode);
    return v;
}

inline json cmatrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(json::array({entry_to_json(m.re.at(i, j)),
                                       entry_to_json(m.im.at(i, j))}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix cmatrix_from_json(const json& j, std::size_t n, ScalarMode mode) {
    if (!j.is_array() || j.size() != n)
        throw ParseError("Kraus operator must have `states` rows");
    CMatrix m(n, n, mode);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw ParseError("Kraus operator must be square");
        for (std::size_t k = 0; k < n; ++k) {
            const json& cell = j[i][k];
            if (!cell.is_array() || cell.size() != 2)
                throw ParseError("Kraus entry must be an [re, im] pair");
            m.re.at(i, k) = entry_from_json(cell[0], mode);
            m.im.at(i, k) = entry_from_json(cell[1], mode);
        }
    }
    return m;
}

inline std::string symbol_key(char sym) { return std::string(1, sym); }

inline char symbol_from_key(const std::string& key) {
    if (key.size() != 1) throw ParseError("transition key must be a single character");
    return key[0];
}

inline std::vector<char> alphabet_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("`alphabet` must be an array");
    std::vector<char> out;
    for (const auto& s : j) {
        if (!s.is_string() || s.get<std::string>().size() != 1)
            throw ParseError("alphabet symbols must be 1-character strings");
        out.push_back(s.get<std::string>()[0]);
    }
    return out;
}

inline json alphabet_to_json(const std::vector<char>& alphabet) {
    json out = json::array();
    for (char c : alphabet) out.push_back(std::string(1, c));
    return out;
}

inline ScalarMode scalar_mode_from_json(const json& doc) {
    std::string s = doc.at("scalar").get<std::string>();
    if (s == "rational") return ScalarMode::Rational;
    if (s == "float") return ScalarMode::Float64;
    throw ParseError("`scalar` must be \"rational\" or \"float\"");
}

template <typename Table>
Table table_from_json(const json& doc) {
    Table t;
    t.states = doc.at("states").get<std::size_t>();
    t.alphabet = alphabet_from_json(doc.at("alphabet"));
    t.start = doc.at("start").get<std::size_t>();
    for (const auto& a : doc.at("accept")) t.accept.push_back(a.get<std::size_t>());
    std::sort(t.accept.begin(), t.accept.end());
    ScalarMode mode = scalar_mode_from_json(doc);
    for (const auto& [key, rows] : doc.at("transitions").items())
        t.transitions[symbol_from_key(key)] = matrix_from_json(rows, t.states, mode);
    return t;
}

template <typename Table>
json table_to_json(const Table& t, const char* model) {
    json doc;
    doc["model"] = model;
    doc["scalar"] = to_string(t.mode());
    doc["states"] = t.states;
    doc["alphabet"] = alphabet_to_json(t.alphabet);
    doc["start"] = t.start;
    doc["accept"] = t.accept;
    json trans;
    for (const auto& [sym, m] : t.transitions) trans[symbol_key(sym)] = matrix_to_json(m);
    doc["transitions"] = std::move(trans);
    return doc;
}

}  // namespace detail

inline Machine parse_machine_json(const std::string& text, double tol = kDefaultTol) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    Machine machine;
    try {
        std::string model = doc.at("model").get<std::string>();
        if (model == "pfa") {
            machine = detail::table_from_json<Pfa>(doc);
        } else if (model == "afa") {
            machine = detail::table_from_json<Afa>(doc);
        } else if (model == "mcqfa") {
            machine = detail::table_from_json<Mcqfa>(doc);
        } else if (model == "qfa") {
            Qfa q;
            q.states = doc.at("states").get<std::size_t>();
            q.alphabet = detail::alphabet_from_json(doc.at("alphabet"));
            q.start = doc.at("start").get<std::size_t>();
            for (const auto& a : doc.at("accept")) q.accept.push_back(a.get<std::size_t>());
            std::sort(q.accept.begin(), q.accept.end());
            ScalarMode mode = detail::scalar_mode_from_json(doc);
            for (const auto& [key, ops] : doc.at("kraus").items()) {
                if (!ops.is_array() || ops.empty())
                    throw ParseError("`kraus` values must be non-empty arrays of matrices");
                std::vector<CMatrix> list;
                for (const auto& op : ops)
                    list.push_back(detail::cmatrix_from_json(op, q.states, mode));
                q.kraus[detail::symbol_from_key(key)] = std::move(list);
            }
            machine = std::move(q);
        } else if (model == "gfa") {
            Gfa g;
            g.states = doc.at("states").get<std::size_t>();
            g.alphabet = detail::alphabet_from_json(doc.at("alphabet"));
            ScalarMode mode = detail::scalar_mode_from_json(doc);
            for (const auto& [key, rows] : doc.at("transitions").items())
                g.transitions[detail::symbol_from_key(key)] =
                    detail::matrix_from_json(rows, g.states, mode);
            g.initial = detail::vector_from_json(doc.at("initial"), g.states, mode);
            g.final_functional = detail::vector_from_json(doc.at("final"), g.states, mode);
            machine = std::move(g);
        } else {
            throw ParseError("unknown model '" + model + "'");
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed machine document: ") + e.what());
    }
    validate_machine(machine, tol);
    return machine;
}

inline std::string serialize_machine(const Machine& machine) {
    using detail::json;
    json doc = std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Pfa>) {
                return detail::table_to_json(m, "pfa");
            } else if constexpr (std::is_same_v<T, Afa>) {
                return detail::table_to_json(m, "afa");
            } else if constexpr (std::is_same_v<T, Mcqfa>) {
                return detail::table_to_json(m, "mcqfa");
            } else if constexpr (std::is_same_v<T, Qfa>) {
                json doc;
                doc["model"] = "qfa";
                doc["scalar"] = to_string(m.mode());
                doc["states"] = m.states;
                doc["alphabet"] = detail::alphabet_to_json(m.alphabet);
                doc["start"] = m.start;
                doc["accept"] = m.accept;
                json kraus;
                for (const auto& [sym, ops] : m.kraus) {
                    json list = json::array();
                    for (const CMatrix& k : ops) list.push_back(detail::cmatrix_to_json(k));
                    kraus[detail::symbol_key(sym)] = std::move(list);
                }
                doc["kraus"] = std::move(kraus);
                return doc;
            } else {
                json doc;
                doc["model"] = "gfa";
                doc["scalar"] = to_string(m.mode());
                doc["states"] = m.states;
                doc["alphabet"] = detail::alphabet_to_json(m.alphabet);
                json trans;
                for (const auto& [sym, mat] : m.transitions)
                    trans[detail::symbol_key(sym)] = detail::matrix_to_json(mat);
                doc["transitions"] = std::move(trans);
                doc["initial"] = detail::vector_to_json(m.initial);
                doc["final"] = detail::vector_to_json(m.final_functional);
                return doc;
            }
        },
        machine);
    return doc.dump(2) + "\n";
}

inline Machine load_machine_file(const std::string& path, double tol = kDefaultTol) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open machine file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_machine_json(buf.str(), tol);
}

inline void save_machine_file(const std::string& path, const Machine& machine) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write machine file '" + path + "'");
    out << serialize_machine(machine);
}

}  // namespace afalab
