// afalab command line: load/serialize machines, run words, convert between
// models, amplify, classify, enumerate, verify equivalences, and build the
// machine zoo.
//
// Exit codes: 0 success, 1 negative result (verify counterexample or
// out-of-catalog language), 2 parse/validation error, 3 unknown symbol,
// 4 unsupported conversion, 5 precondition failure.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "afalab/serialize.hpp"
#include "afalab/transforms.hpp"
#include "afalab/unary.hpp"
#include "afalab/words.hpp"
#include "afalab/zoo.hpp"

namespace {

using namespace afalab;

constexpr int kExitCounterexample = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnknownSymbol = 3;
constexpr int kExitUnsupported = 4;
constexpr int kExitPrecondition = 5;

struct UnsupportedConversion : Error {
    explicit UnsupportedConversion(const std::string& what) : Error(what) {}
};

struct CounterexampleExit : Error {
    explicit CounterexampleExit(const std::string& what) : Error(what) {}
};

Scalar parse_rational_flag(const std::string& text, const char* flag) {
    try {
        return Scalar::parse_rational(text);
    } catch (const ParseError&) {
        throw PreconditionError(std::string(flag) + ": expected a rational like 3/4, got '" +
                                text + "'");
    }
}

void sort_words(std::vector<std::string>& words) {
    std::stable_sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
}

int run_command(const std::string& file, std::vector<std::string> words,
                const std::string& words_file, double tol) {
    if (words.empty() && words_file.empty())
        throw PreconditionError("run needs --word or --words-file");
    Machine m = load_machine_file(file, tol);
    if (!words_file.empty()) {
        std::ifstream in(words_file);
        if (!in) throw ParseError("cannot open words file '" + words_file + "'");
        std::string line;
        while (std::getline(in, line)) words.push_back(line);
    }
    sort_words(words);
    for (const std::string& w : words) {
        std::string value = run_value(m, w, tol).str();
        std::cout << w << "," << value << "\n";
    }
    return 0;
}

int convert_command(const std::string& file, const std::string& to,
                    const std::string& out, double tol) {
    if (to != "afa")
        throw UnsupportedConversion("unsupported conversion target '" + to + "'");
    Machine m = load_machine_file(file, tol);
    std::size_t before = state_count(m);
    Afa result = std::visit(
        [&](auto& concrete) -> Afa {
            using T = std::decay_t<decltype(concrete)>;
            if constexpr (std::is_same_v<T, Pfa>) return pfa_to_afa(concrete);
            else if constexpr (std::is_same_v<T, Mcqfa>) return mcqfa_to_afa(concrete);
            else if constexpr (std::is_same_v<T, Qfa>) return gfa_to_afa(qfa_to_gfa(concrete, tol));
            else if constexpr (std::is_same_v<T, Gfa>) return gfa_to_afa(concrete);
            else throw UnsupportedConversion("machine is already an afa");
        },
        m);
    save_machine_file(out, Machine(result));
    std::cout << before << " -> " << result.states << "\n";
    return 0;
}

int amplify_command(const std::string& file, std::size_t copies,
                    const std::string& out, double tol) {
    Machine m = load_machine_file(file, tol);
    if (!std::holds_alternative<Afa>(m))
        throw PreconditionError("amplify expects an afa machine file");
    Afa amplified = amplify(std::get<Afa>(m), copies);
    save_machine_file(out, Machine(amplified));
    std::cout << amplified.amplified->base_states << "^" << amplified.amplified->copies
              << " -> " << amplified.states << "\n";
    return 0;
}

int classify_command(const std::string& p, const std::string& q, const std::string& f1,
                     const std::string& f2, const std::string& m, const std::string& lambda) {
    UnaryParams u = make_unary_params(
        parse_rational_flag(p, "--p").rat(), parse_rational_flag(q, "--q").rat(),
        parse_rational_flag(f1, "--f1").rat(), parse_rational_flag(f2, "--f2").rat(),
        parse_rational_flag(m, "--m").rat(), parse_rational_flag(lambda, "--lambda").rat());
    try {
        std::cout << classify(u).str() << "\n";
    } catch (const OutOfCatalogError& e) {
        throw CounterexampleExit(e.what());
    }
    return 0;
}

int enumerate_command(const std::string& file, const std::string& lambda,
                      const std::string& comparison, std::size_t max_len, double tol) {
    Machine m = load_machine_file(file, tol);
    if (machine_alphabet(m).size() != 1)
        throw PreconditionError("enumerate requires a unary machine");
    CutpointSpec spec{parse_rational_flag(lambda, "--lambda"), Comparison::StrictlyGreater};
    if (comparison == "ne") spec.comparison = Comparison::NotEqual;
    else if (comparison == "eq") spec.comparison = Comparison::Equal;
    else if (comparison != "gt")
        throw PreconditionError("--comparison must be gt, ne or eq");
    const char letter = machine_alphabet(m)[0];
    std::string word;
    for (std::size_t j = 0; j <= max_len; ++j) {
        Scalar value = run_value(m, word, tol);
        std::cout << j << "," << value.str() << ","
                  << (accepts_value(value, spec, tol) ? 1 : 0) << "\n";
        word.push_back(letter);
    }
    return 0;
}

int sweep_command(const std::string& file, std::size_t max_len, double tol) {
    Machine m = load_machine_file(file, tol);
    if (machine_alphabet(m).size() != 1)
        throw PreconditionError("sweep requires a unary machine");
    const char letter = machine_alphabet(m)[0];
    std::string word;
    for (std::size_t j = 0; j <= max_len; ++j) {
        std::string value = run_value(m, word, tol).str();
        std::cout << j << "," << value << "\n";
        word.push_back(letter);
    }
    return 0;
}

int verify_command(const std::string& file_a, const std::string& file_b,
                   std::size_t max_len, const std::string& mode,
                   const std::string& lambda_text, double tol) {
    Machine a = load_machine_file(file_a, tol);
    Machine b = load_machine_file(file_b, tol);
    std::vector<char> alpha_a = machine_alphabet(a);
    std::vector<char> alpha_b = machine_alphabet(b);
    std::sort(alpha_a.begin(), alpha_a.end());
    std::sort(alpha_b.begin(), alpha_b.end());
    if (alpha_a != alpha_b)
        throw PreconditionError("verify requires machines over the same alphabet");

    Scalar lambda = parse_rational_flag(lambda_text, "--lambda");
    auto agree = [&](const Scalar& va, const Scalar& vb) {
        if (mode == "exact") return close(va, vb, tol);
        if (mode == "cutpoint") {
            CutpointSpec spec{lambda, Comparison::StrictlyGreater};
            return accepts_value(va, spec) == accepts_value(vb, spec);
        }
        if (mode == "cutpoint0") {
            auto is_zero = [&](const Scalar& v) {
                return v.is_rational() ? v.is_zero() : std::fabs(v.to_double()) <= tol;
            };
            return is_zero(va) == is_zero(vb);
        }
        throw PreconditionError("--mode must be exact, cutpoint or cutpoint0");
    };

    std::size_t checked = 0;
    for (const std::string& w : words_up_to(alpha_a, max_len)) {
        Scalar va = run_value(a, w, tol);
        Scalar vb = run_value(b, w, tol);
        if (!agree(va, vb))
            throw CounterexampleExit("counterexample '" + w + "': " + va.str() + " vs " +
                                     vb.str());
        ++checked;
    }
    std::cout << "OK " << checked << " words\n";
    return 0;
}

int zoo_command(const std::string& family, unsigned long n, unsigned long k,
                unsigned long l, unsigned long prime, std::vector<unsigned long> ks,
                const std::string& p, const std::string& q, const std::string& f1,
                const std::string& f2, const std::string& m, const std::string& out) {
    Machine machine;
    if (family == "count") {
        machine = count_afa(n);
    } else if (family == "mod2k") {
        machine = mod2k_mcqfa(k);
    } else if (family == "mod4k") {
        machine = mod4k_afa(k);
    } else if (family == "less") {
        machine = less_afa(n);
    } else if (family == "interval") {
        machine = interval_afa(k, l);
    } else if (family == "modp") {
        if (ks.empty()) {
            unsigned long seed = 0;
            if (const char* env = std::getenv("AFALAB_SEED")) seed = std::strtoul(env, nullptr, 10);
            ks = modp_default_ks(prime, seed);
        }
        machine = modp_mcqfa(prime, ks);
    } else if (family == "unary2") {
        machine = two_state_unary_afa(
            parse_rational_flag(p, "--p"), parse_rational_flag(q, "--q"),
            parse_rational_flag(f1, "--f1"), parse_rational_flag(f2, "--f2"),
            parse_rational_flag(m, "--m"));
    } else {
        throw PreconditionError("unknown family '" + family + "'");
    }
    save_machine_file(out, machine);
    std::cout << family << " " << state_count(machine) << " states -> " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for affine, probabilistic and quantum finite automata"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --tol appear after the subcommand name
    double tol = kDefaultTol;
    app.add_option("--tol", tol, "float-mode tolerance")->capture_default_str();

    std::string file, file_b, out, to = "afa";
    std::vector<std::string> words;
    std::string words_file;
    auto* run = app.add_subcommand("run", "evaluate words, print CSV word,value");
    run->add_option("machine", file)->required();
    run->add_option("--word", words, "word to evaluate (repeatable; empty for epsilon)");
    run->add_option("--words-file", words_file, "file with one word per line");

    auto* convert = app.add_subcommand("convert", "convert a machine to an afa");
    convert->add_option("machine", file)->required();
    convert->add_option("--to", to, "target model")->capture_default_str();
    convert->add_option("-o,--out", out, "output machine file")->required();

    std::size_t copies = 2;
    auto* amp = app.add_subcommand("amplify", "tensor parallel copies of an afa");
    amp->add_option("machine", file)->required();
    amp->add_option("-t,--copies", copies, "number of parallel copies")->required();
    amp->add_option("-o,--out", out, "output machine file")->required();

    std::string p = "0", q = "0", f1 = "1", f2 = "0", mstart = "1", lambda = "1/2";
    auto* cls = app.add_subcommand("classify", "classify a 2-state unary afa");
    cls->add_option("--p", p)->required();
    cls->add_option("--q", q)->required();
    cls->add_option("--f1", f1)->required();
    cls->add_option("--f2", f2)->required();
    cls->add_option("--m", mstart)->required();
    cls->add_option("--lambda", lambda)->required();

    std::size_t max_len = 20;
    std::string comparison = "gt";
    auto* enm = app.add_subcommand("enumerate", "CSV length,value,member for a^0..a^L");
    enm->add_option("machine", file)->required();
    enm->add_option("--lambda", lambda)->required();
    enm->add_option("--comparison", comparison, "gt | ne | eq")->capture_default_str();
    enm->add_option("--max-len", max_len)->capture_default_str();

    auto* swp = app.add_subcommand("sweep", "CSV length,value for a^0..a^L");
    swp->add_option("machine", file)->required();
    swp->add_option("--max-len", max_len)->capture_default_str();

    std::string mode = "exact";
    auto* ver = app.add_subcommand("verify", "compare two machines over all short words");
    ver->add_option("machine-a", file)->required();
    ver->add_option("machine-b", file_b)->required();
    ver->add_option("--max-len", max_len)->capture_default_str();
    ver->add_option("--mode", mode, "exact | cutpoint | cutpoint0")->capture_default_str();
    ver->add_option("--lambda", lambda)->capture_default_str();

    std::string family;
    unsigned long zoo_n = 1, zoo_k = 1, zoo_l = 2, zoo_prime = 2;
    std::vector<unsigned long> zoo_ks;
    auto* zoo = app.add_subcommand("zoo", "build one of the named machine families");
    zoo->add_option("--family", family, "count|mod2k|mod4k|modp|less|interval|unary2")
        ->required();
    zoo->add_option("--n", zoo_n);
    zoo->add_option("--k", zoo_k);
    zoo->add_option("--l", zoo_l);
    zoo->add_option("--prime", zoo_prime);
    zoo->add_option("--ks", zoo_ks, "rotation multipliers (repeatable)");
    zoo->add_option("--p", p);
    zoo->add_option("--q", q);
    zoo->add_option("--f1", f1);
    zoo->add_option("--f2", f2);
    zoo->add_option("--m", mstart);
    zoo->add_option("-o,--out", out, "output machine file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (*run) return run_command(file, words, words_file, tol);
        if (*convert) return convert_command(file, to, out, tol);
        if (*amp) return amplify_command(file, copies, out, tol);
        if (*cls) return classify_command(p, q, f1, f2, mstart, lambda);
        if (*enm) return enumerate_command(file, lambda, comparison, max_len, tol);
        if (*swp) return sweep_command(file, max_len, tol);
        if (*ver) return verify_command(file, file_b, max_len, mode, lambda, tol);
        if (*zoo)
            return zoo_command(family, zoo_n, zoo_k, zoo_l, zoo_prime, zoo_ks, p, q, f1,
                               f2, mstart, out);
    } catch (const CounterexampleExit& e) {
        std::cout << "FAIL " << e.what() << "\n";
        return kExitCounterexample;
    } catch (const UnsupportedConversion& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const UnknownSymbolError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnknownSymbol;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
