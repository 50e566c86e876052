#include "afalab/zoo.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "afalab/transforms.hpp"

using namespace afalab;

namespace {

Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }

std::string rep(std::size_t n) { return std::string(n, 'a'); }

}  // namespace

TEST(CountAfa, ValuesFromTheVectorTrajectory) {
    Afa c3 = count_afa(3);
    EXPECT_EQ(run_afa(c3, rep(3)), q(1));
    EXPECT_EQ(run_afa(c3, rep(2)), q(2, 3));   // (2, -1)
    EXPECT_EQ(run_afa(c3, rep(1)), q(4, 7));   // (4, -3)
    EXPECT_EQ(run_afa(c3, rep(5)), q(1, 4));   // (1/4, 3/4)
    EXPECT_EQ(run_afa(c3, rep(0)), q(8, 15));  // (8, -7)
}

TEST(CountAfa, OneSidedBoundAwayFromTheMember) {
    for (unsigned long n : {1ul, 3ul, 6ul}) {
        Afa c = count_afa(n);
        for (std::size_t j = 0; j <= 3 * n + 4; ++j) {
            Scalar f = run_afa(c, rep(j));
            if (j == n) EXPECT_EQ(f, q(1));
            else EXPECT_LE(f, q(2, 3));
        }
    }
}

TEST(CountAfa, RejectsZero) { EXPECT_THROW(count_afa(0), PreconditionError); }

TEST(Mod2k, QuarterTurnPerBlock) {
    Mcqfa m1 = mod2k_mcqfa(1);
    EXPECT_NEAR(run_mcqfa(m1, rep(0)).to_double(), 1.0, 1e-12);
    EXPECT_NEAR(run_mcqfa(m1, rep(2)).to_double(), 0.0, 1e-12);
    EXPECT_NEAR(run_mcqfa(m1, rep(4)).to_double(), 1.0, 1e-12);

    Mcqfa m2 = mod2k_mcqfa(2);
    EXPECT_NEAR(run_mcqfa(m2, rep(4)).to_double(), 0.0, 1e-12);
    EXPECT_NEAR(run_mcqfa(m2, rep(8)).to_double(), 1.0, 1e-12);
}

TEST(Mod2k, PromisePattern) {
    for (unsigned long k : {1ul, 2ul, 3ul}) {
        Mcqfa m = mod2k_mcqfa(k);
        std::size_t block = std::size_t{1} << k;
        for (std::size_t j = 0; j <= 8; ++j) {
            double f = run_mcqfa(m, rep(j * block)).to_double();
            EXPECT_NEAR(f, j % 2 == 0 ? 1.0 : 0.0, 1e-9);
        }
    }
}

TEST(Mod4k, ThreeStateEmbeddingSolvesThePromise) {
    Afa m1 = mod4k_afa(1);
    EXPECT_NEAR(run_afa(m1, rep(0)).to_double(), 1.0, 1e-9);
    EXPECT_NEAR(run_afa(m1, rep(2)).to_double(), 0.0, 1e-9);   // one block
    EXPECT_NEAR(run_afa(m1, rep(8)).to_double(), 1.0, 1e-9);   // four blocks

    Afa m2 = mod4k_afa(2);
    EXPECT_NEAR(run_afa(m2, rep(4)).to_double(), 0.0, 1e-9);
    EXPECT_NEAR(run_afa(m2, rep(16)).to_double(), 1.0, 1e-9);
}

TEST(Mod4k, RationalQuarterTurnCaseIsExact) {
    // Block size 1 makes the rotation the 0/+-1 quarter turn, so the same
    // embedding runs in exact rationals: configurations cycle through
    // (1,0,0), (0,1,0), (-1,0,2), (0,-1,2).
    Matrix rot = matrix_from_rows({{q(0), q(-1)}, {q(1), q(0)}});
    Matrix a(3, 3, ScalarMode::Rational);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) a.at(i, j) = rot.at(i, j);
    a.at(2, 2) = q(1);
    for (std::size_t j = 0; j < 2; ++j)
        a.at(2, j) = q(1) - a.at(0, j) - a.at(1, j);
    Afa m;
    m.states = 3;
    m.alphabet = {'a'};
    m.start = 0;
    m.accept = {0};
    m.transitions[kLeftMarker] = Matrix::identity(3, ScalarMode::Rational);
    m.transitions['a'] = a;
    m.transitions[kRightMarker] = Matrix::identity(3, ScalarMode::Rational);
    validate(m);
    EXPECT_EQ(run_afa(m, rep(0)), q(1));
    EXPECT_EQ(run_afa(m, rep(1)), q(0));
    EXPECT_EQ(run_afa(m, rep(2)), q(1, 3));
    EXPECT_EQ(run_afa(m, rep(3)), q(0));
    EXPECT_EQ(run_afa(m, rep(4)), q(1));
    Vector v = final_configuration(m, rep(2));
    EXPECT_EQ(l1_norm(v), q(3));
}

TEST(ModP, FullRotationsAcceptExactly) {
    Mcqfa m = modp_mcqfa(5, {1});
    EXPECT_NEAR(run_mcqfa(m, rep(5)).to_double(), 1.0, 1e-12);
    double c = std::cos(2.0 * std::numbers::pi / 5.0);
    EXPECT_NEAR(run_mcqfa(m, rep(1)).to_double(), c * c, 1e-12);
}

TEST(ModP, ThreeCopiesPushNonMembersBelowHalf) {
    Mcqfa m = modp_mcqfa(7, {1, 2, 3});
    EXPECT_EQ(m.states, 8u);
    for (std::size_t j = 1; j <= 6; ++j)
        EXPECT_LT(run_mcqfa(m, rep(j)).to_double(), 0.5);
    EXPECT_NEAR(run_mcqfa(m, rep(7)).to_double(), 1.0, 1e-9);
}

TEST(ModP, MembershipIffDivisible) {
    Mcqfa m = modp_mcqfa(5, {1, 2});
    for (std::size_t j = 0; j <= 15; ++j) {
        double f = run_mcqfa(m, rep(j)).to_double();
        if (j % 5 == 0) EXPECT_NEAR(f, 1.0, 1e-9);
        else EXPECT_LT(f, 1.0 - 1e-3);
    }
}

TEST(ModP, DefaultMultipliersAreSeededAndSized) {
    auto ks1 = modp_default_ks(5, 1234);
    auto ks2 = modp_default_ks(5, 1234);
    EXPECT_EQ(ks1, ks2);
    EXPECT_EQ(ks1.size(),
              static_cast<std::size_t>(std::ceil(8.0 * std::log2(5.0))));
    for (unsigned long k : ks1) {
        EXPECT_GE(k, 1u);
        EXPECT_LE(k, 4u);
    }
    EXPECT_NE(modp_default_ks(5, 99), ks1);
}

TEST(ModP, GuardsAndValidation) {
    EXPECT_THROW(modp_mcqfa(6, {1}), PreconditionError);       // not prime
    EXPECT_THROW(modp_mcqfa(5, {}), PreconditionError);        // empty list
    EXPECT_THROW(modp_mcqfa(5, {5}), PreconditionError);       // k out of range
    std::vector<unsigned long> many(13, 1);                    // 2^13 states
    EXPECT_THROW(modp_mcqfa(5, many), PreconditionError);
    // The default list for p >= 3 is larger than the tensor guard allows.
    EXPECT_THROW(modp_mcqfa(5, modp_default_ks(5, 1)), PreconditionError);
}

TEST(LessAfa, WindowIsExactlyLessN) {
    const Scalar cut = q(3, 4);
    for (unsigned long n : {0ul, 3ul, 10ul}) {
        Afa m = less_afa(n);
        for (std::size_t j = 0; j <= n + 20; ++j)
            EXPECT_EQ(run_afa(m, rep(j)) > cut, j <= n) << "n=" << n << " j=" << j;
    }
}

TEST(IntervalAfa, BoundaryValuesAreExact) {
    Afa m = interval_afa(3, 7);
    EXPECT_EQ(run_afa(m, rep(2)), q(3, 4));   // first entry exactly 3/2
    EXPECT_EQ(run_afa(m, rep(8)), q(3, 4));   // first entry exactly 3/4
    EXPECT_EQ(run_afa(m, rep(7)), q(7, 8));   // x = 7/4 - 7/8
}

TEST(IntervalAfa, MembershipWindow) {
    Afa m = interval_afa(3, 7);
    const Scalar cut = q(3, 4);
    for (std::size_t j = 0; j <= 20; ++j)
        EXPECT_EQ(run_afa(m, rep(j)) > cut, 3 <= j && j <= 7) << "j=" << j;
    EXPECT_THROW(interval_afa(3, 3), PreconditionError);
    EXPECT_THROW(interval_afa(0, 5), PreconditionError);
}

TEST(TwoStateUnary, IdentityLetterGivesConstantFunction) {
    Afa m = two_state_unary_afa(q(0), q(0), q(1), q(0), q(1));
    for (std::size_t j = 0; j <= 5; ++j) EXPECT_EQ(run_afa(m, rep(j)), q(1));
    Afa m2 = two_state_unary_afa(q(0), q(0), q(2, 3), q(1, 3), q(1, 2));
    Scalar v = run_afa(m2, rep(0));
    for (std::size_t j = 1; j <= 5; ++j) EXPECT_EQ(run_afa(m2, rep(j)), v);
}

TEST(TwoStateUnary, IntervalParametersReproduceTheWindowMachine) {
    Afa window = interval_afa(3, 7);
    Afa direct = two_state_unary_afa(q(-1, 8), q(1, 8), q(1), q(0), q(7, 4));
    for (char s : {kLeftMarker, kRightMarker, 'a'})
        EXPECT_EQ(direct.transitions.at(s), window.transitions.at(s));
}

TEST(TwoStateUnary, FixedPointIsInvariant) {
    // For p+q != 0 the vector (p/(p+q), q/(p+q)) is fixed by the letter.
    Scalar p = q(1, 3), qq = q(1, 4);
    Afa m = two_state_unary_afa(p, qq, q(1), q(0), q(2));
    Scalar r = p / (p + qq);
    Vector fix(2, ScalarMode::Rational);
    fix[0] = r;
    fix[1] = q(1) - r;
    EXPECT_EQ(matvec(m.transitions.at('a'), fix), fix);
}

TEST(TwoStateUnary, LinearDriftTrajectory) {
    // p + q = 0: the first configuration entry after j letters is m + j p.
    Scalar p = q(-1, 8), m0 = q(7, 4);
    Afa m = two_state_unary_afa(p, -p, q(1), q(0), m0);
    for (std::size_t j = 0; j <= 12; ++j) {
        Vector v = final_configuration(m, rep(j));  // $ is the identity here
        EXPECT_EQ(v[0], m0 + Scalar::rational(static_cast<long>(j)) * p);
    }
}
