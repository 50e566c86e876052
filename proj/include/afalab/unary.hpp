// Characterization engine for 2-state unary AfAs at a strict cutpoint.
//
// A 2-state rational unary machine in the standard form (letter matrix
// [[1-q, p], [q, 1-p]], end matrix [[f1, f2], [1-f1, 1-f2]], configuration
// (m, 1-m) after the left marker, accept state e1) has final first entry
//
//   E_j = F + j*C          when p + q = 0   (linear drift), and
//   E_j = F + C * t^j      when p + q != 0  (fixed point r, t = 1-p-q),
//
// and the word a^j is accepted iff acceptance_value(E_j) > lambda. The
// engine solves the crossing structure of E_j against the acceptance
// region exactly in rational arithmetic, expresses the resulting language
// as a catalog entry where possible, and cross-checks everything against
// brute-force machine evaluation. Languages that fall outside the catalog
// are surfaced as OutOfCatalogError, never silently approximated.

#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "afalab/machine.hpp"
#include "afalab/zoo.hpp"

namespace afalab {

// --- acceptance value ----------------------------------------------------

// Value of a final configuration (x, 1-x): x itself inside [0, 1], and the
// folded -x/(1-2x) outside (the two formulas agree: for x > 1 it
// equals x/(2x-1)).
inline Scalar acceptance_value(const Scalar& x) {
    const Scalar zero = Scalar::zero(x.mode());
    const Scalar one = Scalar::one(x.mode());
    if (x >= zero && x <= one) return x;
    return -x / (one - (x + x));
}

// --- catalog entries ------------------------------------------------------

enum class CatalogBase { Empty, All, Less, NotLess, Interval, NotInterval };
enum class Parity { None, Even, Odd };

// A language from the 2-state catalog: a base set, optionally intersected
// with a parity class, optionally complemented as a whole. NotLess(n) and
// NotInterval(k,l) are the complemented bases needed for the parity forms
// like "not-LESS_n intersect EVEN", which cannot be written with an outer
// complement alone.
struct CatalogEntry {
    CatalogBase base = CatalogBase::Empty;
    long n = 0;        // Less / NotLess
    long k = 0, l = 0; // Interval / NotInterval
    Parity parity = Parity::None;
    bool complemented = false;

    void validate() const {
        switch (base) {
            case CatalogBase::Less:
            case CatalogBase::NotLess:
                if (n < 0) throw ValidationError("catalog entry: Less needs n >= 0");
                break;
            case CatalogBase::Interval:
            case CatalogBase::NotInterval:
                if (!(1 <= k && k < l))
                    throw ValidationError("catalog entry: Interval needs 1 <= k < l");
                break;
            case CatalogBase::All:
                break;  // parity filters on All are stored as (All, parity)
            default:
                if (parity != Parity::None)
                    throw ValidationError("catalog entry: Empty carries no parity filter");
                break;
        }
    }

    bool member(long j) const {
        bool in_base;
        switch (base) {
            case CatalogBase::Empty: in_base = false; break;
            case CatalogBase::All: in_base = true; break;
            case CatalogBase::Less: in_base = j <= n; break;
            case CatalogBase::NotLess: in_base = j > n; break;
            case CatalogBase::Interval: in_base = k <= j && j <= l; break;
            default: in_base = j < k || j > l; break;
        }
        bool in_parity = parity == Parity::None ||
                         ((j % 2 == 0) == (parity == Parity::Even));
        bool inner = in_base && in_parity;
        return complemented ? !inner : inner;
    }

    // Index beyond which membership is 2-periodic.
    long stabilization() const {
        switch (base) {
            case CatalogBase::Less:
            case CatalogBase::NotLess: return n + 1;
            case CatalogBase::Interval:
            case CatalogBase::NotInterval: return l + 1;
            default: return 0;
        }
    }

    std::string str() const {
        std::ostringstream out;
        if (complemented) out << "~(";
        switch (base) {
            case CatalogBase::Empty: out << "EMPTY"; break;
            case CatalogBase::All: out << "ALL"; break;
            case CatalogBase::Less: out << "LESS(" << n << ")"; break;
            case CatalogBase::NotLess: out << "NOT_LESS(" << n << ")"; break;
            case CatalogBase::Interval: out << "INTERVAL(" << k << "," << l << ")"; break;
            default: out << "NOT_INTERVAL(" << k << "," << l << ")"; break;
        }
        if (parity == Parity::Even) out << " & EVEN";
        if (parity == Parity::Odd) out << " & ODD";
        if (complemented) out << ")";
        return out.str();
    }
};

// --- membership traces ----------------------------------------------------

// Tail pattern of an eventually 2-periodic membership sequence: for
// j >= from, member(j) = (j even ? even_bit : odd_bit). A constant tail has
// equal bits. Indefinite tails mark traces with no analytic certificate.
struct TailCertificate {
    bool definite = false;
    std::size_t from = 0;
    bool even_bit = false;
    bool odd_bit = false;

    bool constant() const { return even_bit == odd_bit; }
    bool bit_at(std::size_t j) const { return j % 2 == 0 ? even_bit : odd_bit; }
};

struct MembershipTrace {
    std::vector<bool> prefix;  // memberships of a^0 .. a^L
    TailCertificate tail;

    std::size_t max_len() const { return prefix.empty() ? 0 : prefix.size() - 1; }

    bool member(std::size_t j) const {
        if (j < prefix.size()) return prefix[j];
        if (!tail.definite)
            throw PreconditionError("membership trace has an indefinite tail");
        return tail.bit_at(j);
    }

    void check_consistency() const {
        if (!tail.definite) return;
        if (tail.from >= prefix.size())
            throw InternalError("definite tail must start inside the prefix");
        for (std::size_t j = tail.from; j < prefix.size(); ++j)
            if (prefix[j] != tail.bit_at(j))
                throw InternalError("trace prefix disagrees with its tail certificate");
    }
};

// --- parameters and derived quantities -------------------------------------

struct UnaryParams {
    mpq_class p, q, f1, f2, m;
    mpq_class lambda;

    // Derived, valid per regime.
    bool drift = false;   // p + q == 0
    mpq_class r, t, c;    // fixed point, contraction, offset (p + q != 0)
    mpq_class F, C;       // E_j = F + j C  (drift) or F + C t^j (otherwise)
};

inline UnaryParams make_unary_params(mpq_class p, mpq_class q, mpq_class f1,
                                     mpq_class f2, mpq_class m, mpq_class lambda) {
    // mpq arithmetic requires canonical operands; normalize at the boundary.
    for (mpq_class* v : {&p, &q, &f1, &f2, &m, &lambda}) v->canonicalize();
    if (lambda < 0 || lambda >= 1)
        throw PreconditionError("classification cutpoint must lie in [0, 1)");
    UnaryParams u;
    u.p = p;
    u.q = q;
    u.f1 = f1;
    u.f2 = f2;
    u.m = m;
    u.lambda = lambda;
    u.t = 1 - p - q;
    u.drift = (mpq_class(p + q) == 0);
    if (u.drift) {
        u.F = mpq_class(m * (f1 - f2) + f2);
        u.C = mpq_class(p * (f1 - f2));
    } else {
        u.r = mpq_class(p / (p + q));
        u.c = mpq_class(m - u.r);
        u.F = mpq_class(u.r * (f1 - f2) + f2);
        u.C = mpq_class((f1 - f2) * u.c);
    }
    return u;
}

// Parameters of the same machine with the accept state swapped to e2,
// which recognizes the complement boundary-for-boundary.
inline UnaryParams swapped_accept_params(const UnaryParams& u) {
    return make_unary_params(u.q, u.p, mpq_class(1 - u.f2), mpq_class(1 - u.f1),
                             mpq_class(1 - u.m), u.lambda);
}

inline Afa machine_from_params(const UnaryParams& u) {
    return two_state_unary_afa(Scalar::rational(u.p), Scalar::rational(u.q),
                               Scalar::rational(u.f1), Scalar::rational(u.f2),
                               Scalar::rational(u.m));
}

// --- acceptance region in E-space ------------------------------------------

// The set W with: a^j accepted iff E_j in W. Solving f(E) > lambda gives
//   lambda < 1/2 : E < lambda/(2 lambda - 1)  or  E > lambda   (two rays)
//   lambda = 1/2 : E > 1/2                                     (one ray)
//   lambda > 1/2 : lambda < E < lambda/(2 lambda - 1)          (window)
// All boundaries are excluded (strict cutpoint).
struct AcceptanceRegion {
    enum class Kind { TwoRays, RayUp, Window } kind;
    mpq_class lo, hi;

    bool member(const mpq_class& e) const {
        switch (kind) {
            case Kind::TwoRays: return e < lo || e > hi;
            case Kind::RayUp: return e > lo;
            default: return lo < e && e < hi;
        }
    }

    std::vector<mpq_class> boundaries() const {
        if (kind == Kind::RayUp) return {lo};
        if (lo == hi) return {lo};
        return {lo, hi};
    }
};

inline AcceptanceRegion make_region(const mpq_class& lambda) {
    AcceptanceRegion w;
    mpq_class half(1, 2);
    if (lambda == half) {
        w.kind = AcceptanceRegion::Kind::RayUp;
        w.lo = half;
    } else if (lambda < half) {
        w.kind = AcceptanceRegion::Kind::TwoRays;
        w.lo = mpq_class(lambda / (2 * lambda - 1));
        w.hi = lambda;
    } else {
        w.kind = AcceptanceRegion::Kind::Window;
        w.lo = lambda;
        w.hi = mpq_class(lambda / (2 * lambda - 1));
    }
    return w;
}

// --- exact crossing solver --------------------------------------------------

namespace detail {

// Membership bits of a single scalar sequence: bits[i] for i < bits.size(),
// tail_bit from stable_from on. bits.size() == stable_from + 1 always.
struct SeqPattern {
    std::vector<bool> bits;
    std::size_t stable_from = 0;
    bool tail_bit = false;
};

inline constexpr std::size_t kSolverCap = 1u << 20;

inline SeqPattern solve_constant(const mpq_class& e, const AcceptanceRegion& w) {
    SeqPattern s;
    s.tail_bit = w.member(e);
    s.bits = {s.tail_bit};
    return s;
}

// E_i = F + C s^i with s > 0, s != 1, C != 0.
inline SeqPattern solve_geometric(const mpq_class& F, const mpq_class& C,
                                  const mpq_class& s, const AcceptanceRegion& w) {
    if (s <= 0 || s == 1 || C == 0)
        throw InternalError("geometric solver called outside its regime");
    const int side = sgn(C);
    // Distances from the limit/base point to the boundaries.
    mpq_class nearest(-1), farthest(0);
    for (const mpq_class& b : w.boundaries()) {
        mpq_class dist = mpq_class(abs(mpq_class(b - F)));
        if (dist > farthest) farthest = dist;
        if (dist != 0 && (nearest < 0 || dist < nearest)) nearest = dist;
    }
    const bool contracting = s < 1;
    mpq_class probe;
    if (contracting) {
        mpq_class step = nearest > 0 ? mpq_class(nearest / 2) : mpq_class(1);
        probe = mpq_class(F + side * step);
    } else {
        probe = mpq_class(F + side * mpq_class(farthest + 1));
    }
    SeqPattern out;
    out.tail_bit = w.member(probe);
    mpq_class ct = C;
    for (std::size_t i = 0;; ++i) {
        if (i > kSolverCap) throw InternalError("crossing solver exceeded its iteration cap");
        mpq_class mag = mpq_class(abs(ct));
        bool stable = contracting ? (nearest < 0 || mag < nearest) : (mag > farthest);
        if (stable) {
            out.stable_from = i;
            out.bits.push_back(out.tail_bit);
            return out;
        }
        out.bits.push_back(w.member(mpq_class(F + ct)));
        ct *= s;
    }
}

// E_j = F + j C with C != 0.
inline SeqPattern solve_linear(const mpq_class& F, const mpq_class& C,
                               const AcceptanceRegion& w) {
    const int side = sgn(C);
    long stable = 0;
    mpq_class farthest(0);
    for (const mpq_class& b : w.boundaries()) {
        mpq_class dist = mpq_class(abs(mpq_class(b - F)));
        if (dist > farthest) farthest = dist;
        mpq_class cross = mpq_class((b - F) / C);
        if (cross >= 0) {
            mpz_class fl;
            mpz_fdiv_q(fl.get_mpz_t(), cross.get_num().get_mpz_t(),
                       cross.get_den().get_mpz_t());
            long candidate = fl.get_si() + 1;
            if (candidate > stable) stable = candidate;
        }
    }
    SeqPattern out;
    out.stable_from = static_cast<std::size_t>(stable);
    out.tail_bit = w.member(mpq_class(F + side * mpq_class(farthest + 1)));
    mpq_class e = F;
    for (long j = 0; j < stable; ++j) {
        out.bits.push_back(w.member(e));
        e += C;
    }
    out.bits.push_back(out.tail_bit);
    return out;
}

inline bool seq_member(const SeqPattern& s, std::size_t i) {
    return i < s.bits.size() ? s.bits[i] : s.tail_bit;
}

}  // namespace detail

// Exact membership structure of the whole sequence: explicit bits up to
// stable_from, then a 2-periodic (possibly constant) tail.
struct LanguageDescription {
    std::vector<bool> bits;  // j = 0 .. stable_from
    std::size_t stable_from = 0;
    bool even_bit = false, odd_bit = false;

    bool member(std::size_t j) const {
        if (j >= stable_from) return j % 2 == 0 ? even_bit : odd_bit;
        return bits[j];
    }
};

namespace detail {

inline LanguageDescription from_single(const SeqPattern& s) {
    LanguageDescription d;
    d.bits = s.bits;
    d.stable_from = s.stable_from;
    d.even_bit = d.odd_bit = s.tail_bit;
    // A constant tail is parity-blind; make both parities consistent with
    // the last explicit bit.
    return d;
}

inline LanguageDescription interleave(const SeqPattern& even, const SeqPattern& odd) {
    LanguageDescription d;
    d.stable_from = std::max(2 * even.stable_from, 2 * odd.stable_from + 1);
    d.even_bit = even.tail_bit;
    d.odd_bit = odd.tail_bit;
    for (std::size_t j = 0; j <= d.stable_from; ++j)
        d.bits.push_back(j % 2 == 0 ? seq_member(even, j / 2)
                                    : seq_member(odd, (j - 1) / 2));
    return d;
}

}  // namespace detail

// --- classification branches ------------------------------------------------

// The enumerated sub-cases of the linear-drift analysis (plus the two
// constant outcomes of the C = 0 shortcut), and the t-regimes of the
// fixed-point analysis. Coverage over these is asserted by the acceptance
// suite.
enum class DriftBranch {
    ConstantAll,
    ConstantEmpty,
    LtBelowThr,
    LtAtThr,
    LtBetween,
    LtAtLambda,
    LtAboveLambda,
    EqAtOrBelow,
    EqAbove,
    GtAtOrBelow,
    GtInWindow,
    GtAtThr,
    GtAboveThr,
};

enum class TRegime {
    Zero,            // t = 0: constant from length 1
    PosBelowOne,     // 0 < t < 1: one-sided convergence
    AboveOne,        // t > 1: one-sided divergence
    NegAboveMinusOne,// -1 < t < 0: two-sided convergence
    MinusOne,        // t = -1: 2-periodic values
    BelowMinusOne,   // t < -1: two-sided divergence
};

inline constexpr DriftBranch kAllDriftBranches[] = {
    DriftBranch::ConstantAll,  DriftBranch::ConstantEmpty,
    DriftBranch::LtBelowThr,   DriftBranch::LtAtThr,
    DriftBranch::LtBetween,    DriftBranch::LtAtLambda,
    DriftBranch::LtAboveLambda,DriftBranch::EqAtOrBelow,
    DriftBranch::EqAbove,      DriftBranch::GtAtOrBelow,
    DriftBranch::GtInWindow,   DriftBranch::GtAtThr,
    DriftBranch::GtAboveThr,
};

inline constexpr TRegime kAllTRegimes[] = {
    TRegime::Zero,          TRegime::PosBelowOne, TRegime::AboveOne,
    TRegime::NegAboveMinusOne, TRegime::MinusOne, TRegime::BelowMinusOne,
};

struct ClassifyCoverage {
    std::map<DriftBranch, long> drift_branches;
    std::map<TRegime, long> regimes;
};

inline const char* to_string(DriftBranch b) {
    switch (b) {
        case DriftBranch::ConstantAll: return "constant/all";
        case DriftBranch::ConstantEmpty: return "constant/empty";
        case DriftBranch::LtBelowThr: return "lambda<1/2, F below threshold";
        case DriftBranch::LtAtThr: return "lambda<1/2, F at threshold";
        case DriftBranch::LtBetween: return "lambda<1/2, F between";
        case DriftBranch::LtAtLambda: return "lambda<1/2, F at lambda";
        case DriftBranch::LtAboveLambda: return "lambda<1/2, F above lambda";
        case DriftBranch::EqAtOrBelow: return "lambda=1/2, F at or below";
        case DriftBranch::EqAbove: return "lambda=1/2, F above";
        case DriftBranch::GtAtOrBelow: return "lambda>1/2, F at or below lambda";
        case DriftBranch::GtInWindow: return "lambda>1/2, F inside window";
        case DriftBranch::GtAtThr: return "lambda>1/2, F at upper threshold";
        default: return "lambda>1/2, F above upper threshold";
    }
}

inline const char* to_string(TRegime t) {
    switch (t) {
        case TRegime::Zero: return "t = 0";
        case TRegime::PosBelowOne: return "0 < t < 1";
        case TRegime::AboveOne: return "t > 1";
        case TRegime::NegAboveMinusOne: return "-1 < t < 0";
        case TRegime::MinusOne: return "t = -1";
        default: return "t < -1";
    }
}

namespace detail {

inline DriftBranch drift_branch(const UnaryParams& u, const AcceptanceRegion& w) {
    const mpq_class half(1, 2);
    if (u.lambda < half) {
        const mpq_class& thr = w.lo;
        if (u.F < thr) return DriftBranch::LtBelowThr;
        if (u.F == thr) return DriftBranch::LtAtThr;
        if (u.F < u.lambda) return DriftBranch::LtBetween;
        if (u.F == u.lambda) return DriftBranch::LtAtLambda;
        return DriftBranch::LtAboveLambda;
    }
    if (u.lambda == half)
        return u.F <= u.lambda ? DriftBranch::EqAtOrBelow : DriftBranch::EqAbove;
    if (u.F <= u.lambda) return DriftBranch::GtAtOrBelow;
    if (u.F < w.hi) return DriftBranch::GtInWindow;
    if (u.F == w.hi) return DriftBranch::GtAtThr;
    return DriftBranch::GtAboveThr;
}

}  // namespace detail

// Solves the membership sequence of the machine described by `u` exactly,
// recording which analysis branch applied.
inline LanguageDescription analyze_unary(const UnaryParams& u,
                                         ClassifyCoverage* coverage = nullptr) {
    const AcceptanceRegion w = make_region(u.lambda);
    auto constant_outcome = [&](const mpq_class& e) {
        LanguageDescription d = detail::from_single(detail::solve_constant(e, w));
        if (coverage) {
            if (d.even_bit) ++coverage->drift_branches[DriftBranch::ConstantAll];
            else ++coverage->drift_branches[DriftBranch::ConstantEmpty];
        }
        return d;
    };

    if (u.drift) {
        if (u.C == 0) return constant_outcome(u.F);  // includes p = q = 0
        if (coverage) ++coverage->drift_branches[detail::drift_branch(u, w)];
        return detail::from_single(detail::solve_linear(u.F, u.C, w));
    }

    if (u.C == 0) return constant_outcome(u.F);  // started on the fixed point
    TRegime regime;
    LanguageDescription d;
    if (u.t == 0) {
        regime = TRegime::Zero;
        detail::SeqPattern s;
        s.bits = {w.member(mpq_class(u.F + u.C)), w.member(u.F)};
        s.stable_from = 1;
        s.tail_bit = s.bits[1];
        d = detail::from_single(s);
    } else if (u.t == -1) {
        regime = TRegime::MinusOne;
        detail::SeqPattern even = detail::solve_constant(mpq_class(u.F + u.C), w);
        detail::SeqPattern odd = detail::solve_constant(mpq_class(u.F - u.C), w);
        d = detail::interleave(even, odd);
    } else if (u.t > 0) {
        regime = u.t < 1 ? TRegime::PosBelowOne : TRegime::AboveOne;
        d = detail::from_single(detail::solve_geometric(u.F, u.C, u.t, w));
    } else {
        regime = u.t > -1 ? TRegime::NegAboveMinusOne : TRegime::BelowMinusOne;
        mpq_class s = mpq_class(u.t * u.t);
        detail::SeqPattern even = detail::solve_geometric(u.F, u.C, s, w);
        detail::SeqPattern odd =
            detail::solve_geometric(u.F, mpq_class(u.C * u.t), s, w);
        d = detail::interleave(even, odd);
    }
    if (coverage) ++coverage->regimes[regime];
    return d;
}

// --- canonicalization into catalog entries ----------------------------------

namespace detail {

// Tries to express a finite set (given as the sorted member list) as
// base & parity. Returns candidates in preference order.
inline std::vector<CatalogEntry> finite_set_candidates(const std::vector<long>& set) {
    std::vector<CatalogEntry> out;
    if (set.empty()) {
        out.push_back({CatalogBase::Empty});
        return out;
    }
    long lo = set.front(), hi = set.back();
    bool contiguous = hi - lo + 1 == static_cast<long>(set.size());
    if (contiguous) {
        if (lo == 0) {
            out.push_back({CatalogBase::Less, hi});
        } else if (lo < hi) {
            CatalogEntry e{CatalogBase::Interval};
            e.k = lo;
            e.l = hi;
            out.push_back(e);
        }
    }
    bool same_parity = true;
    for (std::size_t i = 0; i < set.size(); ++i)
        if ((set[i] - lo) % 2 != 0 || (i > 0 && set[i] - set[i - 1] != 2))
            same_parity = false;
    if (same_parity) {
        Parity par = lo % 2 == 0 ? Parity::Even : Parity::Odd;
        if (lo == 0 || lo == 1) {
            CatalogEntry e{CatalogBase::Less, hi};
            e.parity = par;
            out.push_back(e);
        } else if (lo < hi) {
            CatalogEntry e{CatalogBase::Interval};
            e.k = lo;
            e.l = hi;
            e.parity = par;
            out.push_back(e);
        }
    }
    if (set.size() == 1) {  // singletons via a one-wide parity window
        long g = lo;
        if (g >= 2) {
            CatalogEntry e{CatalogBase::Interval};
            e.k = g - 1;
            e.l = g + 1;
            e.parity = g % 2 == 0 ? Parity::Even : Parity::Odd;
            out.push_back(e);
        }
    }
    return out;
}

// Candidates for a set that is cofinal in exactly one parity class and
// finite (here: empty) on the other: base & P with an infinite base.
inline std::vector<CatalogEntry> half_infinite_candidates(
    const std::vector<long>& zeros, Parity par) {
    std::vector<CatalogEntry> out;
    if (zeros.empty()) {
        CatalogEntry e{CatalogBase::All};
        e.parity = par;
        out.push_back(e);
        return out;
    }
    long lo = zeros.front(), hi = zeros.back();
    bool step2 = true;
    for (std::size_t i = 1; i < zeros.size(); ++i)
        if (zeros[i] - zeros[i - 1] != 2) step2 = false;
    if (!step2) return out;
    long first = par == Parity::Even ? 0 : 1;
    if (lo == first) {
        // Zeros form the parity prefix: members are the parity suffix.
        CatalogEntry e{CatalogBase::NotLess, hi};
        e.parity = par;
        out.push_back(e);
    } else if (lo < hi) {
        CatalogEntry e{CatalogBase::NotInterval};
        e.k = lo;
        e.l = hi;
        e.parity = par;
        out.push_back(e);
    } else {
        // Single interior zero g >= 2: exclude it with a one-wide window.
        CatalogEntry e{CatalogBase::NotInterval};
        e.k = lo - 1;
        e.l = lo + 1;
        e.parity = par;
        out.push_back(e);
    }
    return out;
}

}  // namespace detail

// Expresses an exact language description as a catalog entry, or nullopt
// when the language lies outside the catalog. Every candidate is verified
// against the description before being returned.
inline std::optional<CatalogEntry> canonicalize_description(const LanguageDescription& d) {
    const long horizon = static_cast<long>(d.stable_from) + 2;
    auto verified = [&](CatalogEntry e, bool complemented) -> std::optional<CatalogEntry> {
        e.complemented = complemented;
        long limit = std::max(horizon, e.stabilization() + 2);
        for (long j = 0; j <= limit; ++j)
            if (e.member(j) != d.member(static_cast<std::size_t>(j))) return std::nullopt;
        e.validate();
        return e;
    };

    for (bool comp : {false, true}) {
        const bool te = d.even_bit ^ comp;
        const bool to = d.odd_bit ^ comp;
        auto t_member = [&](long j) { return d.member(static_cast<std::size_t>(j)) ^ comp; };

        std::vector<CatalogEntry> candidates;
        if (te && to) {
            candidates.push_back({CatalogBase::All});
        } else if (!te && !to) {
            std::vector<long> members;
            for (long j = 0; j <= horizon; ++j)
                if (t_member(j)) members.push_back(j);
            candidates = detail::finite_set_candidates(members);
        } else {
            const Parity par = te ? Parity::Even : Parity::Odd;
            const long first_opp = te ? 1 : 0;
            bool opp_clean = true;
            for (long j = first_opp; j <= horizon; j += 2)
                if (t_member(j)) opp_clean = false;
            if (opp_clean) {
                std::vector<long> zeros;
                for (long j = te ? 0 : 1; j <= horizon; j += 2)
                    if (!t_member(j)) zeros.push_back(j);
                candidates = detail::half_infinite_candidates(zeros, par);
            }
        }
        for (const CatalogEntry& c : candidates)
            if (auto e = verified(c, comp)) return e;
    }
    return std::nullopt;
}

// --- enumeration and matching ------------------------------------------------

namespace detail {

struct ExtractedUnary {
    enum class Kind { Standard, ConstantZero, ConstantOne } kind;
    UnaryParams params;  // valid for Standard
};

// Reads the Eq-form parameters off any 2-state rational unary AfA. The
// accept sets {}, {0,1} collapse to constants; accept {1} maps to the
// swapped parameters.
inline std::optional<ExtractedUnary> extract_unary(const Afa& m, const mpq_class& lambda) {
    if (m.states != 2 || m.alphabet.size() != 1) return std::nullopt;
    if (m.mode() != ScalarMode::Rational) return std::nullopt;
    if (m.accept.empty())
        return ExtractedUnary{ExtractedUnary::Kind::ConstantZero, {}};
    if (m.accept.size() == 2)
        return ExtractedUnary{ExtractedUnary::Kind::ConstantOne, {}};
    const Matrix& a = m.transitions.at(m.alphabet[0]);
    const Matrix& end = m.transitions.at(kRightMarker);
    const Matrix& cent = m.transitions.at(kLeftMarker);
    UnaryParams u = make_unary_params(
        a.at(0, 1).rat(), a.at(1, 0).rat(), end.at(0, 0).rat(), end.at(0, 1).rat(),
        cent.at(0, m.start).rat(), lambda);
    if (m.accept[0] == 1) u = swapped_accept_params(u);
    return ExtractedUnary{ExtractedUnary::Kind::Standard, u};
}

}  // namespace detail

// Brute-force membership of a^0 .. a^L, with an analytic tail certificate
// whenever the machine is a 2-state rational AfA under a strict rational
// cutpoint (the regime the crossing solver covers) and the pattern
// stabilizes within the prefix. The solver bits are checked against the
// machine evaluation on the whole prefix.
inline MembershipTrace enumerate_language(const Afa& m, const CutpointSpec& spec,
                                          std::size_t max_len,
                                          std::optional<double> tol = std::nullopt) {
    if (m.alphabet.size() != 1)
        throw PreconditionError("enumerate requires a unary machine");
    if (max_len < 1) throw PreconditionError("enumerate requires max_len >= 1");

    MembershipTrace trace;
    const Matrix& letter = m.matrix_for(m.alphabet[0]);
    const Matrix& end = m.matrix_for(kRightMarker);
    Vector v = matvec(m.matrix_for(kLeftMarker), Vector::basis(m.states, m.start, m.mode()));
    for (std::size_t j = 0; j <= max_len; ++j) {
        if (j > 0) v = matvec(letter, v);
        Scalar value = afa_weighting(m, matvec(end, v));
        trace.prefix.push_back(accepts_value(value, spec, tol));
    }

    trace.tail.definite = false;
    trace.tail.from = max_len + 1;
    const bool analytic_applies = spec.comparison == Comparison::StrictlyGreater &&
                                  spec.lambda.is_rational() &&
                                  spec.lambda.rat() >= 0 && spec.lambda.rat() < 1;
    if (analytic_applies) {
        if (auto ex = detail::extract_unary(m, spec.lambda.rat())) {
            LanguageDescription d;
            if (ex->kind == detail::ExtractedUnary::Kind::Standard) {
                d = analyze_unary(ex->params);
            } else {
                d.stable_from = 0;
                bool bit = ex->kind == detail::ExtractedUnary::Kind::ConstantOne &&
                           spec.lambda.rat() < 1;
                d.bits = {bit};
                d.even_bit = d.odd_bit = bit;
            }
            for (std::size_t j = 0; j <= max_len; ++j)
                if (d.member(j) != static_cast<bool>(trace.prefix[j]))
                    throw InternalError(
                        "analytic membership disagrees with machine evaluation at length " +
                        std::to_string(j));
            if (d.stable_from <= max_len) {
                trace.tail.definite = true;
                trace.tail.from = d.stable_from;
                trace.tail.even_bit = d.even_bit;
                trace.tail.odd_bit = d.odd_bit;
            }
        }
    }
    trace.check_consistency();
    return trace;
}

// True iff the eventually periodic language of the trace equals the
// language denoted by the entry.
inline bool matches(const MembershipTrace& trace, const CatalogEntry& entry) {
    if (!trace.tail.definite)
        throw PreconditionError("matches requires a definite tail certificate");
    long limit = std::max<long>(static_cast<long>(trace.max_len()),
                                entry.stabilization() + 2);
    for (long j = 0; j <= limit + 1; ++j)
        if (trace.member(static_cast<std::size_t>(j)) != entry.member(j)) return false;
    return true;
}

// --- the classifier -----------------------------------------------------------

// Classifies the language of the 2-state machine described by `params`
// under a strict cutpoint. The solved membership pattern is expressed as a
// catalog entry and cross-validated against brute-force enumeration before
// being returned. A pattern with no catalog expression raises
// OutOfCatalogError carrying the exact bits.
inline CatalogEntry classify(const UnaryParams& params,
                             ClassifyCoverage* coverage = nullptr) {
    LanguageDescription d = analyze_unary(params, coverage);
    std::optional<CatalogEntry> entry = canonicalize_description(d);
    if (!entry) {
        std::ostringstream what;
        what << "language is not a catalog entry: bits ";
        for (std::size_t j = 0; j <= d.stable_from; ++j) what << d.member(j);
        what << " then (even=" << d.even_bit << ", odd=" << d.odd_bit << ") from "
             << d.stable_from << " [p=" << params.p << " q=" << params.q
             << " f1=" << params.f1 << " f2=" << params.f2 << " m=" << params.m
             << " lambda=" << params.lambda << "]";
        throw OutOfCatalogError(what.str());
    }

    // Oracle cross-check on the real machine.
    Afa machine = machine_from_params(params);
    CutpointSpec spec = CutpointSpec::strictly_greater(Scalar::rational(params.lambda));
    std::size_t horizon = std::max<std::size_t>(
        {d.stable_from + 4, static_cast<std::size_t>(entry->stabilization()) + 4, 16});
    MembershipTrace trace = enumerate_language(machine, spec, horizon);
    if (!matches(trace, *entry))
        throw InternalError("classification disagrees with the enumeration oracle");
    return *entry;
}

}  // namespace afalab
