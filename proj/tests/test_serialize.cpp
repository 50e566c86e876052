#include "afalab/serialize.hpp"

#include <gtest/gtest.h>

#include "afalab/transforms.hpp"
#include "afalab/words.hpp"
#include "afalab/zoo.hpp"
#include "support.hpp"

using namespace afalab;
namespace ts = afalab::testsupport;

namespace {

Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }

}  // namespace

TEST(Serialize, RoundTripIsByteIdentical) {
    std::vector<Machine> machines;
    machines.emplace_back(count_afa(3));
    machines.emplace_back(interval_afa(3, 7));
    machines.emplace_back(mod2k_mcqfa(1));
    {
        ts::Rng rng(11);
        machines.emplace_back(ts::random_pfa(rng, 3, {'a', 'b'}));
    }
    {
        Mcqfa rot = ts::rotation_mcqfa();
        Qfa qf = ts::unitary_channel_qfa(rot.transitions.at('a'));
        machines.emplace_back(qfa_to_gfa(qf));
        machines.emplace_back(std::move(qf));
    }

    for (const Machine& m : machines) {
        std::string once = serialize_machine(m);
        Machine parsed = parse_machine_json(once);
        EXPECT_EQ(serialize_machine(parsed), once);
        // Values survive the round trip.
        for (const std::string& w : words_up_to(machine_alphabet(m), 3))
            EXPECT_TRUE(close(run_value(m, w), run_value(parsed, w), 1e-12));
    }
}

TEST(Serialize, KnownDocumentParses) {
    const std::string doc = R"({
      "accept": [0],
      "alphabet": ["a"],
      "model": "afa",
      "scalar": "rational",
      "start": 0,
      "states": 2,
      "transitions": {
        "$": [["1/1", "0/1"], ["0/1", "1/1"]],
        "^": [["8/1", "0/1"], ["-7/1", "1/1"]],
        "a": [["1/2", "0/1"], ["1/2", "1/1"]]
      }
    })";
    Machine m = parse_machine_json(doc);
    ASSERT_TRUE(std::holds_alternative<Afa>(m));
    EXPECT_EQ(run_value(m, "aaa"), q(1));  // this is count_afa(3)
}

TEST(Serialize, ValidationFailuresNameTheInvariant) {
    // Column sums broken: not affine.
    const std::string bad_affine = R"({
      "accept": [0], "alphabet": ["a"], "model": "afa", "scalar": "rational",
      "start": 0, "states": 2,
      "transitions": {
        "$": [["1/1","0/1"],["0/1","1/1"]],
        "^": [["1/1","0/1"],["0/1","1/1"]],
        "a": [["1/2","0/1"],["1/2","2/1"]]
      }
    })";
    try {
        parse_machine_json(bad_affine);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("affine"), std::string::npos);
    }

    // Missing end-marker.
    const std::string no_marker = R"({
      "accept": [0], "alphabet": ["a"], "model": "pfa", "scalar": "rational",
      "start": 0, "states": 1,
      "transitions": { "a": [["1/1"]], "$": [["1/1"]] }
    })";
    EXPECT_THROW(parse_machine_json(no_marker), ValidationError);
}

TEST(Serialize, ParseErrors) {
    EXPECT_THROW(parse_machine_json("not json"), ParseError);
    EXPECT_THROW(parse_machine_json(R"({"model":"nope"})"), ParseError);
    // Float literal in a rational machine.
    const std::string wrong_mode = R"({
      "accept": [0], "alphabet": ["a"], "model": "pfa", "scalar": "rational",
      "start": 0, "states": 1,
      "transitions": { "a": [[1.0]], "^": [["1/1"]], "$": [["1/1"]] }
    })";
    EXPECT_THROW(parse_machine_json(wrong_mode), ParseError);
    EXPECT_THROW(load_machine_file("/nonexistent/machine.json"), ParseError);
}

TEST(Serialize, ComplexKrausEntriesSurviveAndEvolve) {
    // iX: off-diagonal purely imaginary unitary, a valid one-operator set.
    CMatrix ix(2, 2, ScalarMode::Rational);
    ix.im.at(0, 1) = q(1);
    ix.im.at(1, 0) = q(1);
    Qfa qf;
    qf.states = 2;
    qf.alphabet = {'a'};
    qf.start = 0;
    qf.accept = {0};
    qf.kraus[kLeftMarker] = {CMatrix::identity(2, ScalarMode::Rational)};
    qf.kraus[kRightMarker] = {CMatrix::identity(2, ScalarMode::Rational)};
    qf.kraus['a'] = {ix};
    validate(qf);
    EXPECT_EQ(run_qfa(qf, "a"), q(0));   // population fully swapped
    EXPECT_EQ(run_qfa(qf, "aa"), q(1));  // and swapped back

    std::string text = serialize_machine(Machine(qf));
    Machine back = parse_machine_json(text);
    EXPECT_EQ(serialize_machine(back), text);
    EXPECT_EQ(run_value(back, "a"), q(0));
    EXPECT_EQ(run_value(back, "aa"), q(1));
}

TEST(Serialize, GfaUsesInitialAndFinalArrays) {
    Gfa g;
    g.states = 2;
    g.alphabet = {'a'};
    for (char s : {kLeftMarker, kRightMarker, 'a'})
        g.transitions[s] = Matrix::identity(2, ScalarMode::Rational);
    g.initial = Vector::basis(2, 0, ScalarMode::Rational);
    g.final_functional = Vector::basis(2, 1, ScalarMode::Rational);
    std::string text = serialize_machine(Machine(g));
    EXPECT_NE(text.find("\"initial\""), std::string::npos);
    EXPECT_NE(text.find("\"final\""), std::string::npos);
    EXPECT_EQ(text.find("\"accept\""), std::string::npos);
    Machine back = parse_machine_json(text);
    ASSERT_TRUE(std::holds_alternative<Gfa>(back));
    EXPECT_EQ(run_value(back, "a"), q(0));
}
