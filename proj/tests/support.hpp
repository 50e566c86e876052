// Seeded random generators shared by the property tests. Everything here is
// deterministic for a fixed seed.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "afalab/linalg.hpp"
#include "afalab/machine.hpp"

namespace afalab::testsupport {

using Rng = std::mt19937;

inline Scalar random_rational(Rng& rng, int num_range = 8, int den_max = 8) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_max);
    return Scalar::rational(num(rng), den(rng));
}

// Random affine matrix: free rows plus a compensation last row.
inline Matrix random_affine(Rng& rng, std::size_t n) {
    Matrix m(n, n, ScalarMode::Rational);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = random_rational(rng, 4, 4);
    for (std::size_t j = 0; j < n; ++j) {
        Scalar sum = Scalar::rational(0);
        for (std::size_t i = 0; i + 1 < n; ++i) sum += m.at(i, j);
        m.at(n - 1, j) = Scalar::rational(1) - sum;
    }
    return m;
}

// Random column-stochastic matrix with exact rational entries.
inline Matrix random_stochastic(Rng& rng, std::size_t n) {
    Matrix m(n, n, ScalarMode::Rational);
    std::uniform_int_distribution<int> weight(0, 6);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<int> w(n);
        int total = 0;
        for (std::size_t i = 0; i < n; ++i) total += (w[i] = weight(rng));
        if (total == 0) {
            w[j] = 1;
            total = 1;
        }
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = Scalar::rational(w[i], total);
    }
    return m;
}

// Random rational orthogonal 2x2: a Pythagorean rotation, possibly reflected.
inline Matrix random_orthogonal2(Rng& rng) {
    static const int triples[][2] = {{3, 5}, {4, 5}, {5, 13}, {12, 13}, {8, 17}, {15, 17}};
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_int_distribution<int> flip(0, 1);
    auto [a, c] = triples[pick(rng)];
    Scalar cosv = Scalar::rational(a, c);
    Scalar sinv = Scalar::rational(static_cast<int>(std::round(std::sqrt(double(c) * c - double(a) * a))), c);
    Matrix m(2, 2, ScalarMode::Rational);
    m.at(0, 0) = cosv;
    m.at(0, 1) = -sinv;
    m.at(1, 0) = sinv;
    m.at(1, 1) = cosv;
    if (flip(rng)) {  // reflect: still orthogonal
        m.at(0, 1) = sinv;
        m.at(1, 1) = -cosv;
    }
    return m;
}

inline Vector random_affine_config(Rng& rng, std::size_t n) {
    Vector v(n, ScalarMode::Rational);
    Scalar sum = Scalar::rational(0);
    for (std::size_t i = 0; i + 1 < n; ++i) sum += (v[i] = random_rational(rng, 4, 4));
    v[n - 1] = Scalar::rational(1) - sum;
    return v;
}

inline std::string random_word(Rng& rng, const std::vector<char>& alphabet,
                               std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string w(len(rng), 'x');
    for (char& c : w) c = alphabet[pick(rng)];
    return w;
}

inline Pfa random_pfa(Rng& rng, std::size_t n, const std::vector<char>& alphabet) {
    Pfa p;
    p.states = n;
    p.alphabet = alphabet;
    p.start = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    for (std::size_t s = 0; s < n; ++s)
        if (std::uniform_int_distribution<int>(0, 1)(rng)) p.accept.push_back(s);
    p.transitions[kLeftMarker] = random_stochastic(rng, n);
    p.transitions[kRightMarker] = random_stochastic(rng, n);
    for (char c : alphabet) p.transitions[c] = random_stochastic(rng, n);
    return p;
}

inline Afa random_afa(Rng& rng, std::size_t n, const std::vector<char>& alphabet) {
    Afa a;
    a.states = n;
    a.alphabet = alphabet;
    a.start = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    for (std::size_t s = 0; s < n; ++s)
        if (std::uniform_int_distribution<int>(0, 1)(rng)) a.accept.push_back(s);
    a.transitions[kLeftMarker] = random_affine(rng, n);
    a.transitions[kRightMarker] = random_affine(rng, n);
    for (char c : alphabet) a.transitions[c] = random_affine(rng, n);
    return a;
}

// --- fixed machines used across suites ----------------------------------

// 2-state PFA with f(a^j) = 2^-j; f = 1/2 exactly on "a".
inline Pfa halving_pfa() {
    Pfa p;
    p.states = 2;
    p.alphabet = {'a'};
    p.start = 0;
    p.accept = {0};
    p.transitions[kLeftMarker] = Matrix::identity(2, ScalarMode::Rational);
    p.transitions[kRightMarker] = Matrix::identity(2, ScalarMode::Rational);
    Matrix a(2, 2, ScalarMode::Rational);
    a.at(0, 0) = Scalar::rational(1, 2);
    a.at(1, 0) = Scalar::rational(1, 2);
    a.at(1, 1) = Scalar::rational(1);
    p.transitions['a'] = a;
    validate(p);
    return p;
}

// Parity DFA over {a,b}: accepts iff |w|_a is even, so f is 0/1-valued.
inline Pfa parity_dfa() {
    Pfa p;
    p.states = 2;
    p.alphabet = {'a', 'b'};
    p.start = 0;
    p.accept = {0};
    p.transitions[kLeftMarker] = Matrix::identity(2, ScalarMode::Rational);
    p.transitions[kRightMarker] = Matrix::identity(2, ScalarMode::Rational);
    Matrix swap(2, 2, ScalarMode::Rational);
    swap.at(0, 1) = Scalar::rational(1);
    swap.at(1, 0) = Scalar::rational(1);
    p.transitions['a'] = swap;
    p.transitions['b'] = Matrix::identity(2, ScalarMode::Rational);
    validate(p);
    return p;
}

// The (3/5, 4/5) Pythagorean rotation machine, exact in rationals.
inline Mcqfa rotation_mcqfa() {
    Mcqfa m;
    m.states = 2;
    m.alphabet = {'a'};
    m.start = 0;
    m.accept = {0};
    m.transitions[kLeftMarker] = Matrix::identity(2, ScalarMode::Rational);
    m.transitions[kRightMarker] = Matrix::identity(2, ScalarMode::Rational);
    Matrix r(2, 2, ScalarMode::Rational);
    r.at(0, 0) = Scalar::rational(3, 5);
    r.at(0, 1) = Scalar::rational(-4, 5);
    r.at(1, 0) = Scalar::rational(4, 5);
    r.at(1, 1) = Scalar::rational(3, 5);
    m.transitions['a'] = r;
    validate(m);
    return m;
}

// Wraps a single real matrix as the one-operator Kraus channel of a unary
// QFA with identity end-markers.
inline Qfa unitary_channel_qfa(const Matrix& u) {
    Qfa qf;
    qf.states = u.rows();
    qf.alphabet = {'a'};
    qf.start = 0;
    qf.accept = {0};
    qf.kraus[kLeftMarker] = {CMatrix::identity(qf.states, u.mode())};
    qf.kraus[kRightMarker] = {CMatrix::identity(qf.states, u.mode())};
    qf.kraus['a'] = {CMatrix::from_real(u)};
    validate(qf);
    return qf;
}

}  // namespace afalab::testsupport
