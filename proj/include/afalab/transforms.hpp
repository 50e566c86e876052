// Simulation constructions between the models:
//
//   pfa_to_afa    n-state rational PFA  -> (n+1)-state integer AfA that
//                 preserves the strict-majority sign at cutpoint 1/2 and
//                 sends f = 1/2 words to AfA value exactly 0.
//   mcqfa_to_afa  n-state real MCQFA    -> (n^2+1)-state AfA, exact.
//   qfa_to_gfa    n-state Kraus QFA     -> n^2-state real GFA, exact.
//   gfa_to_afa    n-state GFA with values in [0,1] -> (n+1)-state AfA.
//   amplify       t parallel copies of an AfA, f -> 1 - (1-f)^t.
//
// plus the cutpoint plumbing (canonicalize_pfa, shift_cutpoint) that the
// constructions assume.

#pragma once

#include <string>
#include <vector>

#include "afalab/machine.hpp"

namespace afalab {

// Common scaling factor: the smallest positive integer d such that d*A has
// integer entries for every transition matrix, end-markers included.
struct DenominatorClearing {
    mpz_class d;
};

inline DenominatorClearing denominator_clearing(const Pfa& p) {
    if (p.mode() != ScalarMode::Rational)
        throw PreconditionError("denominator clearing requires a rational machine");
    mpz_class d = 1;
    for (const auto& [sym, m] : p.transitions)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                mpz_lcm(d.get_mpz_t(), d.get_mpz_t(),
                        m.at(i, j).rat().get_den().get_mpz_t());
    return {d};
}

// Rewrites a rational PFA into the equivalent normal form the AfA
// construction assumes: start index 0, accept set {0}, and a right
// end-marker that collapses the configuration to (f, 1-f, 0, ..., 0).
// One-state machines are padded to two states first.
inline Pfa canonicalize_pfa(const Pfa& input) {
    if (input.mode() != ScalarMode::Rational)
        throw PreconditionError("canonicalize_pfa requires a rational machine");
    Pfa p = input;

    if (p.states == 1) {
        p.states = 2;
        for (auto& [sym, m] : p.transitions) {
            Matrix padded = Matrix::identity(2, ScalarMode::Rational);
            padded.at(0, 0) = m.at(0, 0);
            m = padded;
        }
    }
    const std::size_t n = p.states;

    if (p.start != 0) {
        // Conjugate every matrix by the transposition (0, start).
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::swap(perm[0], perm[p.start]);
        for (auto& [sym, m] : p.transitions) {
            Matrix moved(n, n, ScalarMode::Rational);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    moved.at(i, j) = m.at(perm[i], perm[j]);
            m = moved;
        }
        std::vector<std::size_t> accept;
        for (std::size_t a : p.accept) accept.push_back(perm[a]);
        std::sort(accept.begin(), accept.end());
        p.accept = accept;
        p.start = 0;
    }

    // Collapse: route accept mass to entry 0 and the rest to entry 1.
    Matrix collapse(n, n, ScalarMode::Rational);
    for (std::size_t j = 0; j < n; ++j) {
        bool acc = p.is_accept(j);
        collapse.at(acc ? 0 : 1, j) = Scalar::rational(1);
    }
    p.transitions[kRightMarker] = matmul(collapse, p.transitions[kRightMarker]);
    p.accept = {0};
    validate(p);
    return p;
}

// Reduces an arbitrary rational cutpoint to 1/2 by the usual convex
// combination: branch at the left marker with probability alpha into the
// original machine and otherwise into a constant-value gadget, so that
// f'(w) - 1/2 = alpha * (f(w) - lambda) for every word.
inline Pfa shift_cutpoint(const Pfa& input, const Scalar& lambda) {
    if (input.mode() != ScalarMode::Rational || !lambda.is_rational())
        throw PreconditionError("shift_cutpoint requires rational machine and cutpoint");
    const mpq_class& lam = lambda.rat();
    if (lam <= 0 || lam >= 1)
        throw PreconditionError("shift_cutpoint: cutpoint must lie strictly inside (0, 1)");
    if (lam == mpq_class(1, 2)) return input;

    // beta = 1 for lambda < 1/2, beta = 0 for lambda > 1/2.
    const bool to_accept_sink = lam < mpq_class(1, 2);
    mpq_class alpha;
    if (to_accept_sink) alpha = mpq_class(1) / mpq_class(2 * (1 - lam));
    else alpha = mpq_class(1) / mpq_class(2 * lam);

    const std::size_t n = input.states;
    Pfa p;
    p.states = n + 2;  // n: accepting sink, n+1: rejecting sink
    p.alphabet = input.alphabet;
    p.start = input.start;
    p.accept = input.accept;
    p.accept.push_back(n);
    std::sort(p.accept.begin(), p.accept.end());

    for (const auto& [sym, m] : input.transitions) {
        Matrix big(n + 2, n + 2, ScalarMode::Rational);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) big.at(i, j) = m.at(i, j);
        big.at(n, n) = Scalar::rational(1);
        big.at(n + 1, n + 1) = Scalar::rational(1);
        p.transitions[sym] = big;
    }
    Matrix& cent = p.transitions[kLeftMarker];
    for (std::size_t i = 0; i < n; ++i)
        cent.at(i, p.start) = cent.at(i, p.start) * Scalar::rational(alpha);
    cent.at(to_accept_sink ? n : n + 1, p.start) = Scalar::rational(1 - alpha);
    validate(p);
    return p;
}

// The (n+1)-state integer AfA simulating a rational PFA at cutpoint 1/2.
// Every per-symbol matrix is the scaled block [[d A, 0], [comp, 1]]; the
// right marker additionally composes the subtract/collect operator, leaving
// the final vector (X, 1-X, 0, ..., 0) with X = d^|cw$| (2 f_P(w) - 1).
inline Afa pfa_to_afa(const Pfa& input) {
    Pfa p = canonicalize_pfa(input);
    const std::size_t n = p.states;
    const Scalar d = Scalar::rational(mpq_class(denominator_clearing(p).d));

    auto extend_scaled = [&](const Matrix& m) {
        Matrix big(n + 1, n + 1, ScalarMode::Rational);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) big.at(i, j) = d * m.at(i, j);
        big.at(n, n) = Scalar::rational(1);
        for (std::size_t j = 0; j < n; ++j) {
            Scalar sum = Scalar::rational(0);
            for (std::size_t i = 0; i < n; ++i) sum += big.at(i, j);
            big.at(n, j) = Scalar::rational(1) - sum;
        }
        return big;
    };

    Afa a;
    a.states = n + 1;
    a.alphabet = p.alphabet;
    a.start = 0;
    a.accept = {0};
    for (const auto& [sym, m] : p.transitions) a.transitions[sym] = extend_scaled(m);

    // Subtract the second entry from the first, then gather everything else
    // into the second entry.
    Matrix collect(n + 1, n + 1, ScalarMode::Rational);
    collect.at(0, 0) = Scalar::rational(1);
    collect.at(0, 1) = Scalar::rational(-1);
    collect.at(1, 1) = Scalar::rational(2);
    for (std::size_t j = 2; j <= n; ++j) collect.at(1, j) = Scalar::rational(1);
    a.transitions[kRightMarker] = matmul(collect, a.transitions[kRightMarker]);

    for (const auto& [sym, m] : a.transitions)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!m.at(i, j).is_integer())
                    throw InternalError("pfa_to_afa produced a non-integer entry");
    validate(a);
    return a;
}

// t parallel copies as a tensor power. The accept set is every state tuple
// containing at least one accept component, which gives
// f'(w) = 1 - (1 - f(w))^t exactly and keeps value-0 words at exactly 0.
inline Afa amplify(const Afa& m, std::size_t t, std::size_t max_states = 4096) {
    if (t < 1) throw PreconditionError("amplify: need at least one copy");
    const std::size_t n = m.states;
    double projected = std::pow(static_cast<double>(n), static_cast<double>(t));
    if (projected > static_cast<double>(max_states))
        throw PreconditionError("amplify: " + std::to_string(n) + "^" +
                                std::to_string(t) + " states exceeds the limit of " +
                                std::to_string(max_states));

    Afa out;
    out.alphabet = m.alphabet;
    out.amplified = AmplifyNote{n, t};
    for (const auto& [sym, mat] : m.transitions) {
        Matrix power = mat;
        for (std::size_t i = 1; i < t; ++i) power = kronecker(power, mat);
        out.transitions[sym] = std::move(power);
    }
    out.states = out.transitions[kLeftMarker].rows();

    std::size_t start = 0;
    for (std::size_t i = 0; i < t; ++i) start = start * n + m.start;
    out.start = start;
    for (std::size_t idx = 0; idx < out.states; ++idx) {
        std::size_t rest = idx;
        bool any = false;
        for (std::size_t i = 0; i < t; ++i) {
            if (m.is_accept(rest % n)) any = true;
            rest /= n;
        }
        if (any) out.accept.push_back(idx);
    }
    validate(out);
    return out;
}

// Exact MCQFA simulation: tensor each real unitary with itself
// so amplitudes become pair products, add a compensation state, and collect
// the accept diagonal (q_j, q_j) entries into the first coordinate at the
// right marker.
inline Afa mcqfa_to_afa(const Mcqfa& m) {
    validate(m);
    const std::size_t n = m.states;
    const std::size_t nn = n * n;
    const ScalarMode mode = m.mode();

    auto extend_tensored = [&](const Matrix& u) {
        Matrix big(nn + 1, nn + 1, mode);
        Matrix uu = kronecker(u, u);
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = 0; j < nn; ++j) big.at(i, j) = uu.at(i, j);
        big.at(nn, nn) = Scalar::one(mode);
        for (std::size_t j = 0; j < nn; ++j) {
            Scalar sum = Scalar::zero(mode);
            for (std::size_t i = 0; i < nn; ++i) sum += big.at(i, j);
            big.at(nn, j) = Scalar::one(mode) - sum;
        }
        return big;
    };

    Afa a;
    a.states = nn + 1;
    a.alphabet = m.alphabet;
    a.start = m.start * n + m.start;
    a.accept = {0};
    for (const auto& [sym, u] : m.transitions) a.transitions[sym] = extend_tensored(u);

    // First row sums the accept diagonal entries, second row everything else.
    Matrix collect(nn + 1, nn + 1, mode);
    for (std::size_t j = 0; j <= nn; ++j) {
        bool diag_accept = j < nn && j % (n + 1) == 0 && m.is_accept(j / (n + 1));
        collect.at(diag_accept ? 0 : 1, j) = Scalar::one(mode);
    }
    a.transitions[kRightMarker] = matmul(collect, a.transitions[kRightMarker]);
    validate(a);
    return a;
}

namespace detail {

// Orthogonal Hermitian basis used to express superoperators with real
// transfer matrices: the n diagonal units, then for each pair j < k the
// symmetric element E_jk + E_kj and the antisymmetric i(E_jk - E_kj).
// The elements are kept unnormalized (squared norms 1 and 2) and the Gram
// factor is divided out of the transfer entries instead, so a machine with
// rational Kraus entries yields a rational GFA.
struct HermitianBasis {
    std::vector<CMatrix> elements;
    std::vector<int> gram;  // squared Frobenius norm of each element
    std::size_t n = 0;

    explicit HermitianBasis(std::size_t n_, ScalarMode mode) : n(n_) {
        const Scalar one = Scalar::one(mode);
        for (std::size_t j = 0; j < n; ++j) {
            CMatrix e(n, n, mode);
            e.re.at(j, j) = one;
            elements.push_back(std::move(e));
            gram.push_back(1);
        }
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                CMatrix sym(n, n, mode);
                sym.re.at(j, k) = one;
                sym.re.at(k, j) = one;
                elements.push_back(std::move(sym));
                gram.push_back(2);
                CMatrix asym(n, n, mode);
                asym.im.at(j, k) = one;
                asym.im.at(k, j) = -one;
                elements.push_back(std::move(asym));
                gram.push_back(2);
            }
    }

    std::size_t diag_coordinate(std::size_t j) const { return j; }
    std::size_t size() const { return elements.size(); }
};

}  // namespace detail

// Expresses each Kraus superoperator in the Hermitian basis, giving an
// n^2-state general automaton with f_G(w) = f_Q(w): the initial vector is
// the coordinate vector of |q_s><q_s| and the final functional reads off
// the accept-state diagonal.
inline Gfa qfa_to_gfa(const Qfa& q, double tol = kDefaultTol) {
    validate(q, tol);
    const std::size_t n = q.states;
    const ScalarMode mode = q.mode();
    detail::HermitianBasis basis(n, mode);
    const std::size_t dim = basis.size();

    Gfa g;
    g.states = dim;
    g.alphabet = q.alphabet;
    for (const auto& [sym, ops] : q.kraus) {
        Matrix transfer(dim, dim, mode);
        for (std::size_t b = 0; b < dim; ++b) {
            // Push the basis element through the channel once per column.
            CMatrix image(n, n, mode);
            for (const CMatrix& k : ops)
                image = image + k * basis.elements[b] * adjoint(k);
            for (std::size_t a = 0; a < dim; ++a) {
                auto [re, im] = trace_of_product(basis.elements[a], image);
                if (!close(im, Scalar::zero(mode), tol))
                    throw InternalError("qfa_to_gfa: non-real transfer entry");
                transfer.at(a, b) =
                    re / Scalar::from_int(basis.gram[a], mode);
            }
        }
        g.transitions[sym] = std::move(transfer);
    }
    g.initial = Vector::basis(dim, basis.diag_coordinate(q.start), mode);
    g.final_functional = Vector(dim, mode);
    for (std::size_t a : q.accept)
        g.final_functional[basis.diag_coordinate(a)] = Scalar::one(mode);
    validate(g);
    return g;
}

// Adds one compensation state to a GFA (affinity only needs unit column
// sums, no scaling) and composes a final collector whose first row is the
// functional, so the final vector is (f_G(w), 1 - f_G(w), 0, ..., 0).
// Exact whenever f_G stays in [0, 1], which holds for GFAs produced by
// qfa_to_gfa.
inline Afa gfa_to_afa(const Gfa& g) {
    validate(g);
    const std::size_t n = g.states;
    const ScalarMode mode = g.mode();

    auto extend = [&](const Matrix& m) {
        Matrix big(n + 1, n + 1, mode);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) big.at(i, j) = m.at(i, j);
        big.at(n, n) = Scalar::one(mode);
        for (std::size_t j = 0; j < n; ++j) {
            Scalar sum = Scalar::zero(mode);
            for (std::size_t i = 0; i < n; ++i) sum += big.at(i, j);
            big.at(n, j) = Scalar::one(mode) - sum;
        }
        return big;
    };

    Afa a;
    a.states = n + 1;
    a.alphabet = g.alphabet;
    a.start = 0;
    a.accept = {0};
    for (const auto& [sym, m] : g.transitions) a.transitions[sym] = extend(m);

    // Left marker: first load the GFA's initial vector (every column of the
    // loader is the affine completion of `initial`), then step with T_cent.
    Matrix loader(n + 1, n + 1, mode);
    Scalar total = entry_sum(g.initial);
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i < n; ++i) loader.at(i, j) = g.initial[i];
        loader.at(n, j) = Scalar::one(mode) - total;
    }
    a.transitions[kLeftMarker] = matmul(a.transitions[kLeftMarker], loader);

    // Right marker: apply T_dollar, then collect through the functional.
    Matrix collect(n + 1, n + 1, mode);
    for (std::size_t j = 0; j <= n; ++j) {
        Scalar f = j < n ? g.final_functional[j] : Scalar::zero(mode);
        collect.at(0, j) = f;
        collect.at(1, j) = Scalar::one(mode) - f;
    }
    a.transitions[kRightMarker] = matmul(collect, a.transitions[kRightMarker]);
    validate(a);
    return a;
}

}  // namespace afalab
