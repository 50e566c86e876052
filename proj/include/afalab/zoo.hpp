// Constructors for the concrete machine families: the unary counting
// machine, the MOD2^k / MOD4^k rotation machines, MOD_p tensor machines,
// and the 2-state unary window machines (LESS / INTERVAL).

#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "afalab/machine.hpp"

namespace afalab {

namespace detail {

inline Matrix scalar_rows2(Scalar a00, Scalar a01, Scalar a10, Scalar a11) {
    Matrix m(2, 2, a00.mode());
    m.at(0, 0) = a00;
    m.at(0, 1) = a01;
    m.at(1, 0) = a10;
    m.at(1, 1) = a11;
    return m;
}

inline Matrix rotation2(double theta) {
    Matrix m(2, 2, ScalarMode::Float64);
    m.at(0, 0) = Scalar::real(std::cos(theta));
    m.at(0, 1) = Scalar::real(-std::sin(theta));
    m.at(1, 0) = Scalar::real(std::sin(theta));
    m.at(1, 1) = Scalar::real(std::cos(theta));
    return m;
}

inline bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace detail

// The general 2-state unary AfA: one letter matrix [[1-q, p], [q, 1-p]],
// an end matrix [[f1, f2], [1-f1, 1-f2]], and a left marker that sends the
// start basis vector to (m, 1-m). Start and accept are both the first state.
inline Afa two_state_unary_afa(const Scalar& p, const Scalar& q, const Scalar& f1,
                               const Scalar& f2, const Scalar& m) {
    for (const Scalar* s : {&p, &q, &f1, &f2, &m})
        if (!s->is_rational())
            throw PreconditionError("two_state_unary_afa: parameters must be rational");
    const Scalar one = Scalar::rational(1);
    const Scalar zero = Scalar::rational(0);
    Afa a;
    a.states = 2;
    a.alphabet = {'a'};
    a.start = 0;
    a.accept = {0};
    a.transitions[kLeftMarker] = detail::scalar_rows2(m, zero, one - m, one);
    a.transitions['a'] = detail::scalar_rows2(one - q, p, q, one - p);
    a.transitions[kRightMarker] = detail::scalar_rows2(f1, f2, one - f1, one - f2);
    validate(a);
    return a;
}

// COUNT_n = { a^n }: the machine holds 2^(n-j) in its first entry after j
// letters, so exactly a^n ends in (1, 0) and is accepted with value 1;
// every other length stays at or below 2/3.
inline Afa count_afa(unsigned long n) {
    if (n < 1) throw PreconditionError("count_afa: n must be >= 1");
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 2, n);
    const Scalar big = Scalar::rational(mpq_class(pw));
    const Scalar one = Scalar::rational(1);
    const Scalar zero = Scalar::rational(0);
    const Scalar half = Scalar::rational(1, 2);
    Afa a;
    a.states = 2;
    a.alphabet = {'a'};
    a.start = 0;
    a.accept = {0};
    a.transitions[kLeftMarker] = detail::scalar_rows2(big, zero, one - big, one);
    a.transitions['a'] = detail::scalar_rows2(half, zero, half, one);
    a.transitions[kRightMarker] = Matrix::identity(2, ScalarMode::Rational);
    validate(a);
    return a;
}

// 2-state MCQFA for the promise problem MOD2^k: rotation by pi/2^(k+1) per
// letter, so each block a^(2^k) advances the state a quarter turn.
inline Mcqfa mod2k_mcqfa(unsigned long k) {
    if (k < 1) throw PreconditionError("mod2k_mcqfa: k must be >= 1");
    double theta = std::numbers::pi / std::pow(2.0, static_cast<double>(k) + 1.0);
    Mcqfa m;
    m.states = 2;
    m.alphabet = {'a'};
    m.start = 0;
    m.accept = {0};
    m.transitions[kLeftMarker] = Matrix::identity(2, ScalarMode::Float64);
    m.transitions['a'] = detail::rotation2(theta);
    m.transitions[kRightMarker] = Matrix::identity(2, ScalarMode::Float64);
    validate(m);
    return m;
}

// 3-state AfA for MOD4^k: the 2x2 rotation embedded directly with a
// compensation third row, no tensoring. On the promise the configuration is
// (1,0,0) after 4j blocks and (0,1,0) after 4j+1 blocks.
inline Afa mod4k_afa(unsigned long k) {
    if (k < 1) throw PreconditionError("mod4k_afa: k must be >= 1");
    double theta = std::numbers::pi / std::pow(2.0, static_cast<double>(k) + 1.0);
    Matrix rot = detail::rotation2(theta);
    Matrix a(3, 3, ScalarMode::Float64);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) a.at(i, j) = rot.at(i, j);
    a.at(2, 2) = Scalar::real(1.0);
    for (std::size_t j = 0; j < 2; ++j)
        a.at(2, j) = Scalar::real(1.0) - a.at(0, j) - a.at(1, j);
    Afa m;
    m.states = 3;
    m.alphabet = {'a'};
    m.start = 0;
    m.accept = {0};
    m.transitions[kLeftMarker] = Matrix::identity(3, ScalarMode::Float64);
    m.transitions['a'] = a;
    m.transitions[kRightMarker] = Matrix::identity(3, ScalarMode::Float64);
    validate(m);
    return m;
}

// Deterministic default rotation multipliers for modp_mcqfa: ceil(8 log2 p)
// draws from [1, p-1]. The seed comes from the caller (the CLI wires it to
// AFALAB_SEED) so sweeps are reproducible.
inline std::vector<unsigned long> modp_default_ks(unsigned long p, unsigned long seed) {
    if (!detail::is_prime(p)) throw PreconditionError("modp: p must be prime");
    std::size_t count = static_cast<std::size_t>(
        std::ceil(8.0 * std::log2(static_cast<double>(p))));
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    std::uniform_int_distribution<unsigned long> pick(1, p - 1);
    std::vector<unsigned long> ks(count);
    for (auto& k : ks) k = pick(rng);
    return ks;
}

// Tensor of 2-state rotation machines with angles 2 pi k_i / p. The accept
// state is the all-components-accepting tuple, so
// f(a^j) = prod_i cos^2(2 pi k_i j / p), which is 1 exactly when p | j.
inline Mcqfa modp_mcqfa(unsigned long p, const std::vector<unsigned long>& ks,
                        std::size_t max_states = 4096) {
    if (!detail::is_prime(p)) throw PreconditionError("modp_mcqfa: p must be prime");
    if (ks.empty()) throw PreconditionError("modp_mcqfa: empty multiplier list");
    for (unsigned long k : ks)
        if (k < 1 || k >= p)
            throw PreconditionError("modp_mcqfa: multiplier out of [1, p-1]");
    if (ks.size() >= 63 || (1ull << ks.size()) > max_states)
        throw PreconditionError("modp_mcqfa: 2^" + std::to_string(ks.size()) +
                                " states exceeds the limit of " +
                                std::to_string(max_states) +
                                "; pass an explicit multiplier list");
    Matrix u(1, 1, ScalarMode::Float64);
    u.at(0, 0) = Scalar::real(1.0);
    for (unsigned long k : ks) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(p);
        u = kronecker(u, detail::rotation2(theta));
    }
    Mcqfa m;
    m.states = u.rows();
    m.alphabet = {'a'};
    m.start = 0;
    m.accept = {0};
    m.transitions[kLeftMarker] = Matrix::identity(m.states, ScalarMode::Float64);
    m.transitions['a'] = std::move(u);
    m.transitions[kRightMarker] = Matrix::identity(m.states, ScalarMode::Float64);
    validate(m);
    return m;
}

namespace detail {

// Debug-only construction check: scan the machine against the intended
// window at cutpoint 3/4.
inline void check_window_machine(const Afa& m, long lo, long hi, long scan_to) {
#ifndef NDEBUG
    const Scalar cut = Scalar::rational(3, 4);
    std::string word;
    for (long j = 0; j <= scan_to; ++j) {
        bool want = j >= lo && j <= hi;
        if ((run_afa(m, word) > cut) != want)
            throw InternalError("window machine disagrees with its target language at length " +
                                std::to_string(j));
        word.push_back('a');
    }
#else
    (void)m;
    (void)lo;
    (void)hi;
    (void)scan_to;
#endif
}

}  // namespace detail

// LESS_n = { a^j : j <= n } at cutpoint 3/4: start at m inside the accept
// window (3/4, 3/2) and shift left by 3/(4(n+1)) per letter, leaving the
// window exactly after the (n+1)-st letter.
inline Afa less_afa(unsigned long n) {
    long den = 4 * (static_cast<long>(n) + 1);
    Scalar p = Scalar::rational(-3, den);
    Scalar m = Scalar::rational(3, 2) - Scalar::rational(3, 2 * den);
    Afa a = two_state_unary_afa(p, -p, Scalar::rational(1), Scalar::rational(0), m);
    detail::check_window_machine(a, 0, static_cast<long>(n), static_cast<long>(n) + 20);
    return a;
}

// INTERVAL_{k,l} = { a^j : k <= j <= l } at cutpoint 3/4: start at
// 3/2 + (k-1) * 3/(4d+8) above the window and shift left by 3/(4d+8), so the
// first entry is exactly 3/2 after k-1 letters and exactly 3/4 after l+1.
inline Afa interval_afa(unsigned long k, unsigned long l) {
    if (!(1 <= k && k < l))
        throw PreconditionError("interval_afa: need 1 <= k < l");
    long d = static_cast<long>(l - k);
    long den = 4 * d + 8;
    Scalar p = Scalar::rational(-3, den);
    Scalar m = Scalar::rational(3, 2) +
               Scalar::rational(3 * (static_cast<long>(k) - 1), den);
    Afa a = two_state_unary_afa(p, -p, Scalar::rational(1), Scalar::rational(0), m);
    detail::check_window_machine(a, static_cast<long>(k), static_cast<long>(l),
                                 static_cast<long>(l + k) + 10);
    return a;
}

}  // namespace afalab
