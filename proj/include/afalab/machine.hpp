// Machine descriptors for the five models and their evaluation semantics.
//
// Every machine scans inputs in the form ¢ w $; the end-marker transitions
// are mandatory fields, stored under the reserved symbols '^' (left) and
// '$' (right). Machines that do not need a marker carry the identity there.
// Descriptors are immutable after validation and all run functions are
// pure, so concurrent evaluation needs no coordination.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "afalab/cmatrix.hpp"
#include "afalab/linalg.hpp"

namespace afalab {

inline constexpr char kLeftMarker = '^';
inline constexpr char kRightMarker = '$';

// State-transition core shared by the matrix models (PFA, AfA, MCQFA).
struct TransitionTable {
    std::size_t states = 0;
    std::vector<char> alphabet;             // excludes end-markers
    std::map<char, Matrix> transitions;     // alphabet plus '^' and '$'
    std::size_t start = 0;
    std::vector<std::size_t> accept;        // sorted, unique

    ScalarMode mode() const {
        auto it = transitions.find(kLeftMarker);
        if (it == transitions.end()) throw ValidationError("missing left end-marker");
        return it->second.mode();
    }

    const Matrix& matrix_for(char symbol) const {
        auto it = transitions.find(symbol);
        if (it == transitions.end())
            throw UnknownSymbolError(std::string("unknown symbol '") + symbol + "'");
        return it->second;
    }

    bool is_accept(std::size_t state) const {
        return std::binary_search(accept.begin(), accept.end(), state);
    }
};

struct AmplifyNote {
    std::size_t base_states = 0;
    std::size_t copies = 0;
};

struct Pfa : TransitionTable {};
struct Mcqfa : TransitionTable {};

struct Afa : TransitionTable {
    // Present on machines produced by the parallel-copies amplifier, so the
    // CLI can report the logical construction. Not serialized.
    std::optional<AmplifyNote> amplified;
};

// Superoperator quantum automaton in Kraus form.
struct Qfa {
    std::size_t states = 0;
    std::vector<char> alphabet;
    std::map<char, std::vector<CMatrix>> kraus;   // alphabet plus '^' and '$'
    std::size_t start = 0;
    std::vector<std::size_t> accept;

    ScalarMode mode() const {
        auto it = kraus.find(kLeftMarker);
        if (it == kraus.end() || it->second.empty())
            throw ValidationError("missing left end-marker Kraus set");
        return it->second.front().mode();
    }

    const std::vector<CMatrix>& kraus_for(char symbol) const {
        auto it = kraus.find(symbol);
        if (it == kraus.end())
            throw UnknownSymbolError(std::string("unknown symbol '") + symbol + "'");
        return it->second;
    }

    bool is_accept(std::size_t state) const {
        return std::binary_search(accept.begin(), accept.end(), state);
    }
};

// General finite automaton: arbitrary real transitions, an initial vector
// and a final linear functional. No weighting is applied, so values can
// leave [0, 1].
struct Gfa {
    std::size_t states = 0;
    std::vector<char> alphabet;
    std::map<char, Matrix> transitions;
    Vector initial;
    Vector final_functional;

    ScalarMode mode() const {
        auto it = transitions.find(kLeftMarker);
        if (it == transitions.end()) throw ValidationError("missing left end-marker");
        return it->second.mode();
    }

    const Matrix& matrix_for(char symbol) const {
        auto it = transitions.find(symbol);
        if (it == transitions.end())
            throw UnknownSymbolError(std::string("unknown symbol '") + symbol + "'");
        return it->second;
    }
};

enum class Comparison { StrictlyGreater, NotEqual, Equal };

struct CutpointSpec {
    Scalar lambda;
    Comparison comparison = Comparison::StrictlyGreater;

    static CutpointSpec strictly_greater(Scalar lambda) {
        return {std::move(lambda), Comparison::StrictlyGreater};
    }
};

// --- validation --------------------------------------------------------

namespace detail {

inline void validate_table_shape(const TransitionTable& t, const char* model) {
    if (t.states == 0) throw ValidationError(std::string(model) + ": zero states");
    if (t.start >= t.states)
        throw ValidationError(std::string(model) + ": start index out of range");
    if (!std::is_sorted(t.accept.begin(), t.accept.end()) ||
        std::adjacent_find(t.accept.begin(), t.accept.end()) != t.accept.end())
        throw ValidationError(std::string(model) + ": accept set not sorted/unique");
    for (std::size_t a : t.accept)
        if (a >= t.states)
            throw ValidationError(std::string(model) + ": accept index out of range");

    std::set<char> expected(t.alphabet.begin(), t.alphabet.end());
    if (expected.size() != t.alphabet.size())
        throw ValidationError(std::string(model) + ": duplicate alphabet symbol");
    if (expected.count(kLeftMarker) || expected.count(kRightMarker))
        throw ValidationError(std::string(model) + ": alphabet contains an end-marker");
    expected.insert(kLeftMarker);
    expected.insert(kRightMarker);
    std::set<char> present;
    for (const auto& [sym, m] : t.transitions) {
        present.insert(sym);
        if (m.rows() != t.states || m.cols() != t.states)
            throw ValidationError(std::string(model) + ": transition for '" +
                                  std::string(1, sym) + "' has wrong shape");
        if (m.mode() != t.mode())
            throw ValidationError(std::string(model) + ": mixed scalar modes");
    }
    if (present != expected)
        throw ValidationError(std::string(model) +
                              ": transition set does not match alphabet plus end-markers");
}

}  // namespace detail

inline void validate(const Pfa& p, double tol = kDefaultTol) {
    detail::validate_table_shape(p, "pfa");
    for (const auto& [sym, m] : p.transitions)
        if (!classify_matrix(m, tol).stochastic)
            throw ValidationError(std::string("pfa: transition for '") +
                                  std::string(1, sym) + "' is not stochastic");
}

inline void validate(const Afa& a, double tol = kDefaultTol) {
    detail::validate_table_shape(a, "afa");
    for (const auto& [sym, m] : a.transitions)
        if (!classify_matrix(m, tol).affine)
            throw ValidationError(std::string("afa: transition for '") +
                                  std::string(1, sym) + "' is not affine");
}

inline void validate(const Mcqfa& m, double tol = kDefaultTol) {
    detail::validate_table_shape(m, "mcqfa");
    for (const auto& [sym, u] : m.transitions)
        if (!classify_matrix(u, tol).orthogonal)
            throw ValidationError(std::string("mcqfa: transition for '") +
                                  std::string(1, sym) + "' is not orthogonal");
}

inline void validate(const Qfa& q, double tol = kDefaultTol) {
    if (q.states == 0) throw ValidationError("qfa: zero states");
    if (q.start >= q.states) throw ValidationError("qfa: start index out of range");
    for (std::size_t a : q.accept)
        if (a >= q.states) throw ValidationError("qfa: accept index out of range");
    std::set<char> expected(q.alphabet.begin(), q.alphabet.end());
    expected.insert(kLeftMarker);
    expected.insert(kRightMarker);
    std::set<char> present;
    for (const auto& [sym, ops] : q.kraus) {
        present.insert(sym);
        if (ops.empty())
            throw ValidationError("qfa: empty Kraus set");
        // Completeness: sum K_i^dag K_i = I, exact in rational mode.
        CMatrix sum(q.states, q.states, q.mode());
        for (const CMatrix& k : ops) {
            if (k.rows() != q.states || k.cols() != q.states)
                throw ValidationError("qfa: Kraus operator has wrong shape");
            sum = sum + adjoint(k) * k;
        }
        CMatrix eye = CMatrix::identity(q.states, q.mode());
        for (std::size_t i = 0; i < q.states; ++i)
            for (std::size_t j = 0; j < q.states; ++j)
                if (!close(sum.re.at(i, j), eye.re.at(i, j), tol) ||
                    !close(sum.im.at(i, j), eye.im.at(i, j), tol))
                    throw ValidationError(std::string("qfa: Kraus set for '") +
                                          std::string(1, sym) +
                                          "' violates completeness");
    }
    if (present != expected)
        throw ValidationError("qfa: Kraus map does not match alphabet plus end-markers");
}

inline void validate(const Gfa& g, double /*tol*/ = kDefaultTol) {
    if (g.states == 0) throw ValidationError("gfa: zero states");
    if (g.initial.dim() != g.states || g.final_functional.dim() != g.states)
        throw ValidationError("gfa: initial/final dimension mismatch");
    std::set<char> expected(g.alphabet.begin(), g.alphabet.end());
    expected.insert(kLeftMarker);
    expected.insert(kRightMarker);
    std::set<char> present;
    for (const auto& [sym, m] : g.transitions) {
        present.insert(sym);
        if (m.rows() != g.states || m.cols() != g.states)
            throw ValidationError("gfa: transition has wrong shape");
    }
    if (present != expected)
        throw ValidationError("gfa: transition set does not match alphabet plus end-markers");
}

// --- evaluation --------------------------------------------------------

namespace detail {

inline void check_word(const std::vector<char>& alphabet, std::string_view word) {
    for (char c : word)
        if (std::find(alphabet.begin(), alphabet.end(), c) == alphabet.end())
            throw UnknownSymbolError(std::string("unknown symbol '") + c + "' in word");
}

}  // namespace detail

// Configuration after ¢ w $ starting from the basis vector of `start`.
inline Vector final_configuration(const TransitionTable& m, std::string_view word) {
    detail::check_word(m.alphabet, word);
    Vector v = Vector::basis(m.states, m.start, m.mode());
    v = matvec(m.matrix_for(kLeftMarker), v);
    for (char c : word) v = matvec(m.matrix_for(c), v);
    return matvec(m.matrix_for(kRightMarker), v);
}

// All intermediate configurations v_0 .. v_f (after each of ¢, w_1.., $).
inline std::vector<Vector> configuration_trajectory(const TransitionTable& m,
                                                    std::string_view word) {
    detail::check_word(m.alphabet, word);
    std::vector<Vector> out;
    out.push_back(Vector::basis(m.states, m.start, m.mode()));
    out.push_back(matvec(m.matrix_for(kLeftMarker), out.back()));
    for (char c : word) out.push_back(matvec(m.matrix_for(c), out.back()));
    out.push_back(matvec(m.matrix_for(kRightMarker), out.back()));
    return out;
}

inline Scalar run_pfa(const Pfa& p, std::string_view word) {
    Vector v = final_configuration(p, word);
    Scalar acc = Scalar::zero(p.mode());
    for (std::size_t k : p.accept) acc += v[k];
    return acc;
}

// The weighting operator: normalize the final vector in l1 and sum the absolute
// values over the accept states.
inline Scalar afa_weighting(const Afa& a, const Vector& final_vector) {
    Scalar norm = l1_norm(final_vector);
    if (norm.is_zero())
        throw InternalError(
            "afa: zero final l1-norm (degenerate machine; affine entries must sum to 1)");
    Scalar acc = Scalar::zero(final_vector.mode());
    for (std::size_t k : a.accept) acc += final_vector[k].abs();
    return acc / norm;
}

inline Scalar run_afa(const Afa& a, std::string_view word) {
    return afa_weighting(a, final_configuration(a, word));
}

inline Scalar run_mcqfa(const Mcqfa& m, std::string_view word) {
    Vector v = final_configuration(m, word);
    Scalar acc = Scalar::zero(m.mode());
    for (std::size_t k : m.accept) acc += v[k] * v[k];
    return acc;
}

// Density-matrix evolution through the Kraus maps; the accept value is the
// (real) diagonal mass on the accept states.
inline Scalar run_qfa(const Qfa& q, std::string_view word, double tol = kDefaultTol) {
    detail::check_word(q.alphabet, word);
    const ScalarMode mode = q.mode();
    CMatrix rho(q.states, q.states, mode);
    rho.re.at(q.start, q.start) = Scalar::one(mode);

    auto apply = [&](char symbol) {
        const auto& ops = q.kraus_for(symbol);
        CMatrix next(q.states, q.states, mode);
        for (const CMatrix& k : ops) next = next + k * rho * adjoint(k);
        rho = std::move(next);
    };
    apply(kLeftMarker);
    for (char c : word) apply(c);
    apply(kRightMarker);

    Scalar acc = Scalar::zero(mode);
    for (std::size_t k : q.accept) {
        if (!close(rho.im.at(k, k), Scalar::zero(mode), tol))
            throw InternalError("qfa: non-real diagonal in final density matrix");
        acc += rho.re.at(k, k);
    }
    return acc;
}

inline Scalar run_gfa(const Gfa& g, std::string_view word) {
    detail::check_word(g.alphabet, word);
    Vector v = g.initial;
    v = matvec(g.matrix_for(kLeftMarker), v);
    for (char c : word) v = matvec(g.matrix_for(c), v);
    v = matvec(g.matrix_for(kRightMarker), v);
    Scalar acc = Scalar::zero(g.mode());
    for (std::size_t i = 0; i < g.states; ++i) acc += g.final_functional[i] * v[i];
    return acc;
}

// --- cutpoint acceptance ------------------------------------------------

// Compares a run value against the cutpoint. Exact when both sides are
// rational; Equal/NotEqual on float values require an explicit tolerance.
inline bool accepts_value(const Scalar& value, const CutpointSpec& spec,
                          std::optional<double> tol = std::nullopt) {
    const double lam = spec.lambda.to_double();
    if (lam < 0.0 || lam > 1.0)
        throw ValidationError("cutpoint must lie in [0, 1]");
    const bool exact = value.is_rational() && spec.lambda.is_rational();
    switch (spec.comparison) {
        case Comparison::StrictlyGreater:
            if (exact) return value.rat() > spec.lambda.rat();
            return value.to_double() > spec.lambda.to_double();
        case Comparison::Equal:
        case Comparison::NotEqual: {
            bool eq;
            if (exact) {
                eq = value.rat() == spec.lambda.rat();
            } else {
                if (!tol)
                    throw PreconditionError(
                        "Equal/NotEqual comparison on float values requires a tolerance");
                eq = std::fabs(value.to_double() - spec.lambda.to_double()) <= *tol;
            }
            return spec.comparison == Comparison::Equal ? eq : !eq;
        }
    }
    throw InternalError("unreachable comparison");
}

// A loaded machine of any model.
using Machine = std::variant<Pfa, Afa, Mcqfa, Qfa, Gfa>;

inline Scalar run_value(const Machine& m, std::string_view word,
                        double tol = kDefaultTol) {
    return std::visit(
        [&](const auto& concrete) -> Scalar {
            using T = std::decay_t<decltype(concrete)>;
            if constexpr (std::is_same_v<T, Pfa>) return run_pfa(concrete, word);
            else if constexpr (std::is_same_v<T, Afa>) return run_afa(concrete, word);
            else if constexpr (std::is_same_v<T, Mcqfa>) return run_mcqfa(concrete, word);
            else if constexpr (std::is_same_v<T, Qfa>) return run_qfa(concrete, word, tol);
            else return run_gfa(concrete, word);
        },
        m);
}

inline bool accepts(const Machine& m, std::string_view word, const CutpointSpec& spec,
                    std::optional<double> tol = std::nullopt) {
    return accepts_value(run_value(m, word), spec, tol);
}

inline std::size_t state_count(const Machine& m) {
    return std::visit([](const auto& concrete) { return concrete.states; }, m);
}

inline std::vector<char> machine_alphabet(const Machine& m) {
    return std::visit([](const auto& concrete) { return concrete.alphabet; }, m);
}

inline void validate_machine(const Machine& m, double tol = kDefaultTol) {
    std::visit([&](const auto& concrete) { validate(concrete, tol); }, m);
}

}  // namespace afalab
