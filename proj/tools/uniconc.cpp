// uniconc: command-line front end. JSON (or DOT) goes to stdout, diagnostics to stderr.
// Exit codes: 0 success, 1 analysis failure, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "uniconc/error.hpp"
#include "uniconc/io.hpp"
#include "uniconc/measure.hpp"
#include "uniconc/oracle.hpp"
#include "uniconc/report.hpp"
#include "uniconc/sampling.hpp"

namespace {

using namespace uniconc;

constexpr int kOk = 0;
constexpr int kAnalysisFailure = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ConcurrentSystem load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_any(text.str());
}

Rational parse_precision(double p) {
    if (!(p > 0) || p >= 1) throw InputError("--precision must lie in (0,1)");
    // Round to a power of ten so the interval endpoints stay short exact rationals.
    BigInt den = 1;
    while (to_double(Rational(1, den)) > p * (1 + 1e-9)) den *= 10;
    return Rational(1, den);
}

void emit(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

StateId start_state(const ConcurrentSystem& sys, const std::string& name) {
    return name.empty() ? sys.base_state() : sys.state(name);
}

Json nf_json(const TraceMonoid& m, const NormalForm& nf) {
    Json out = Json::array();
    for (const Clique c : nf.cliques) out.push_back(m.format_clique(c));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform measures on trace-theoretic concurrent systems"};
    app.require_subcommand(1);
    app.fallthrough();

    double precision = 1e-12;
    std::size_t series_order = 10;
    bool expect_irreducible = false;
    app.add_option("--precision", precision, "Width of the root isolating interval")->capture_default_str();
    app.add_option("--series-order", series_order, "Order of the inversion check")->capture_default_str();
    app.add_flag("--expect-irreducible", expect_irreducible, "Exit 1 unless the system is irreducible");

    std::string file;
    auto* check = app.add_subcommand("check", "Validate and classify a system");
    check->add_option("file", file, "Spec or Petri file")->required();

    auto* analyze = app.add_subcommand("analyze", "Full analysis report");
    analyze->add_option("file", file, "Spec or Petri file")->required();

    std::string mode = "mcsc";
    std::string start;
    std::size_t steps = 20;
    std::size_t count = 1;
    std::uint64_t seed = 1;
    auto* sample = app.add_subcommand("sample", "Sample executions");
    sample->add_option("file", file, "Spec or Petri file")->required();
    sample->add_option("--mode", mode, "mcsc or uniform")->check(CLI::IsMember({"mcsc", "uniform"}))->capture_default_str();
    sample->add_option("--start", start, "Start state (default: base)");
    sample->add_option("--steps,--length", steps, "Cliques (mcsc) or letters (uniform)")->capture_default_str();
    sample->add_option("--count", count, "Number of executions")->capture_default_str();
    sample->add_option("--seed", seed, "Seed")->capture_default_str();

    std::size_t max_len = kDefaultOracleCap;
    auto* oracle = app.add_subcommand("oracle", "Brute-force cross-check of all counts");
    oracle->add_option("file", file, "Spec or Petri file")->required();
    oracle->add_option("--max-len", max_len, "Largest execution length")->capture_default_str();

    std::string graph = "dsc";
    auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
    dot->add_option("file", file, "Spec or Petri file")->required();
    dot->add_option("--graph", graph, "dsc, adsc, states or condensation")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        const ConcurrentSystem sys = load(file);
        const SystemClassification cls = classify_system(sys);
        AnalysisOptions options;
        options.precision = parse_precision(precision);
        options.series_order = series_order;
        int code = kOk;
        if (expect_irreducible && !cls.irreducible) {
            std::cerr << "system is not irreducible\n";
            code = kAnalysisFailure;
        }

        if (check->parsed()) {
            Json doc;
            doc["system"] = system_json(sys);
            doc["classification"] = classification_json(sys, cls);
            emit(doc);
        } else if (analyze->parsed()) {
            const Json doc = analysis_report(sys, options);
            emit(doc);
            for (const auto& e : doc["errors"]) std::cerr << e["stage"].get<std::string>() << ": " << e["message"].get<std::string>() << '\n';
            if (!doc["errors"].empty()) code = kAnalysisFailure;
            if (expect_irreducible) {
                const Json& sp = doc["spectral_property"];
                if (sp.is_null() || !sp["verdict"].get<bool>()) {
                    std::cerr << "spectral property violated\n";
                    code = kAnalysisFailure;
                }
            }
        } else if (sample->parsed()) {
            const StateId from = start_state(sys, start);
            const TraceMonoid& m = sys.monoid();
            Json doc;
            doc["mode"] = mode;
            doc["start"] = sys.state_name(from);
            doc["seed"] = seed;
            Json runs = Json::array();
            if (mode == "mcsc") {
                const UniformMeasure measure = build_uniform_measure(sys, options.precision);
                for (std::size_t i = 0; i < count; ++i) {
                    const std::uint64_t s = count == 1 ? seed : Rng::stream(seed, i).next();
                    const SampledExecution ex = sample_mcsc(sys, measure, from, steps, s);
                    Json nodes = Json::array();
                    for (const std::size_t v : ex.nodes) nodes.push_back(measure.dsc.describe(sys, v));
                    runs.push_back(Json{{"trace", m.format_word(ex.trace, " ")}, {"nodes", nodes}});
                }
            } else {
                const UniformSampler sampler(sys, from, steps);
                doc["population"] = sampler.total().str();
                for (std::size_t i = 0; i < count; ++i) {
                    Rng rng = Rng::stream(seed, i);
                    const Word w = sampler.sample(rng);
                    runs.push_back(Json{{"trace", m.format_word(w, " ")}, {"normal_form", nf_json(m, normal_form(m, w))}});
                }
            }
            doc["executions"] = runs;
            emit(doc);
        } else if (oracle->parsed()) {
            const CrossCheckReport rep = cross_check(sys, max_len, max_len);
            Json doc;
            doc["max_len"] = rep.max_n;
            doc["pairs_checked"] = rep.entries.size();
            doc["inversion"] = rep.inversion;
            Json bad = Json::array();
            for (const auto& e : rep.mismatches())
                bad.push_back(Json{{"n", e.n},
                                   {"from", sys.state_name(e.from)},
                                   {"to", sys.state_name(e.to)},
                                   {"oracle", e.oracle.str()},
                                   {"paths", e.paths.str()},
                                   {"series", e.series.str()}});
            doc["mismatches"] = bad;
            doc["pass"] = rep.pass;
            emit(doc);
            if (!rep.pass) code = kAnalysisFailure;
        } else if (dot->parsed()) {
            std::cout << export_dot(sys, parse_dot_graph(graph));
        }
        return code;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_input_error(e.kind()) ? kInputError : kAnalysisFailure;
    }
}
