#include "uniconc/report.hpp"

#include <cmath>
#include <functional>

#include "uniconc/error.hpp"
#include "uniconc/measure.hpp"

namespace uniconc {

namespace {

Json coefficients(const IntPoly& p) {
    Json out = Json::array();
    for (const auto& c : p.coefficients()) out.push_back(c.str());
    return out;
}

Json number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    return x;
}

Json root_json(const CharacteristicRoot& r) {
    Json out;
    if (r.infinite) {
        out["infinite"] = true;
        return out;
    }
    out["lo"] = r.lo.str();
    out["hi"] = r.hi.str();
    out["approx"] = r.approx();
    out["width"] = to_double(r.width());
    out["exact"] = r.exact();
    return out;
}

const char* order_name(RootOrder o) {
    switch (o) {
        case RootOrder::Less: return "less";
        case RootOrder::Equal: return "equal";
        case RootOrder::Greater: return "greater";
    }
    return "?";
}

// Runs one stage; on a library error records it and returns false.
bool stage(Json& errors, const char* name, const std::function<void()>& body) {
    try {
        body();
        return true;
    } catch (const Error& e) {
        errors.push_back(Json{{"stage", name}, {"kind", std::string(to_string(e.kind()))}, {"message", e.what()}});
        return false;
    }
}

}  // namespace

Json system_json(const ConcurrentSystem& sys) {
    const TraceMonoid& m = sys.monoid();
    Json out;
    out["alphabet"] = m.alphabet();
    Json pairs = Json::array();
    for (const auto& [a, b] : m.independent_pairs()) pairs.push_back(Json::array({m.name(a), m.name(b)}));
    out["independence"] = pairs;
    out["states"] = sys.states();
    out["base"] = sys.state_name(sys.base_state());
    return out;
}

Json classification_json(const ConcurrentSystem& sys, const SystemClassification& cls) {
    Json out;
    out["trivial"] = cls.trivial;
    out["accessible"] = cls.accessible;
    out["alive"] = cls.alive;
    out["monoid_irreducible"] = cls.monoid_irreducible;
    out["irreducible"] = cls.irreducible;
    if (cls.unreachable)
        out["unreachable"] = Json::array({sys.state_name(cls.unreachable->first), sys.state_name(cls.unreachable->second)});
    if (cls.dead)
        out["dead"] = Json::array({sys.state_name(cls.dead->first), sys.monoid().name(cls.dead->second)});
    if (!cls.monoid_irreducible) {
        Json comps = Json::array();
        for (const std::uint32_t mask : cls.monoid_components) {
            Json letters = Json::array();
            for (std::size_t a = 0; a < sys.letter_count(); ++a)
                if ((mask >> a) & 1U) letters.push_back(sys.monoid().name(static_cast<Letter>(a)));
            comps.push_back(letters);
        }
        out["monoid_components"] = comps;
    }
    return out;
}

Json analysis_report(const ConcurrentSystem& sys, const AnalysisOptions& options) {
    const TraceMonoid& m = sys.monoid();
    Json doc;
    Json errors = Json::array();
    doc["system"] = system_json(sys);
    doc["classification"] = classification_json(sys, classify_system(sys));

    const PolynomialMatrix mu = mobius_matrix(sys);
    const IntPoly theta = determinant(mu);
    {
        Json poly;
        poly["mobius_monoid"] = coefficients(mobius_polynomial(m));
        Json matrix = Json::array();
        for (const auto& row : mu) {
            Json r = Json::array();
            for (const auto& p : row) r.push_back(coefficients(p));
            matrix.push_back(r);
        }
        poly["mobius_matrix"] = matrix;
        poly["theta"] = coefficients(theta);
        poly["theta_square_free"] = coefficients(square_free_part(theta));
        doc["polynomials"] = poly;
    }

    std::optional<CharacteristicRoot> root;
    stage(errors, "root", [&] { root = characteristic_root(sys, options.precision); });
    doc["root"] = root ? root_json(*root) : Json(nullptr);

    StateCliqueGraph dsc = build_dsc(sys);
    const StateCliqueGraph adsc = build_adsc(sys);
    const std::vector<bool> positive = classify_nodes(sys, dsc);
    {
        const StateCliqueGraph dsc_plus = positive_part(dsc, positive);
        const StateCliqueGraph adsc_plus = positive_part(adsc, positive);
        Json g;
        g["dsc_nodes"] = dsc.size();
        g["dsc_arcs"] = dsc.graph.arc_count();
        g["adsc_nodes"] = adsc.size();
        g["adsc_arcs"] = adsc.graph.arc_count();
        g["dsc_components"] = dsc.condensation.count();
        g["dsc_positive_components"] = dsc_plus.condensation.count();
        g["dsc_positive_terminal"] = dsc_plus.condensation.terminal_count();
        Json terminal = Json::array();
        for (std::size_t c = 0; c < dsc_plus.condensation.count(); ++c) {
            if (!dsc_plus.condensation.terminal[c]) continue;
            Json members = Json::array();
            for (const std::size_t u : dsc_plus.condensation.members[c]) members.push_back(dsc_plus.describe(sys, u));
            terminal.push_back(members);
        }
        g["dsc_positive_terminal_sets"] = terminal;
        stage(errors, "spectral_radius", [&] {
            g["spectral_radius_adsc"] = spectral_radius(adsc.graph);
            g["spectral_radius_adsc_positive"] = spectral_radius(adsc_plus.graph);
        });
        doc["graphs"] = g;
    }

    std::optional<UniformMeasure> measure;
    if (root) stage(errors, "measure", [&] { measure = build_uniform_measure(sys, options.precision); });

    {
        Json nodes = Json::array();
        for (std::size_t i = 0; i < dsc.size(); ++i) {
            Json n;
            n["node"] = dsc.describe(sys, i);
            n["label"] = positive[i] ? "positive" : "null";
            if (measure) {
                n["h"] = measure->h_at(sys, dsc.nodes[i].state, dsc.nodes[i].clique);
                n["g"] = measure->g[i];
            }
            nodes.push_back(n);
        }
        doc["nodes"] = nodes;
    }

    if (measure) {
        Json cocycle;
        Json u;
        for (std::size_t s = 0; s < sys.state_count(); ++s) u[sys.states()[s]] = measure->cocycle.u[s];
        cocycle["u"] = u;
        cocycle["kernel_dimension"] = measure->cocycle.kernel_dimension;
        cocycle["cross_check_gap"] = measure->cocycle.cross_check_gap;
        doc["cocycle"] = cocycle;

        Json tables;
        Json names = Json::array();
        for (const Clique c : m.cliques()) names.push_back(m.format_clique(c));
        tables["cliques"] = names;
        Json f, h;
        for (std::size_t s = 0; s < sys.state_count(); ++s) {
            f[sys.states()[s]] = measure->f[s];
            h[sys.states()[s]] = measure->h[s];
        }
        tables["f"] = f;
        tables["h"] = h;
        doc["tables"] = tables;

        Json chain;
        Json ids = Json::array();
        for (std::size_t i = 0; i < dsc.size(); ++i) ids.push_back(dsc.describe(sys, i));
        chain["nodes"] = ids;
        chain["unreachable"] = measure->chain.unreachable;
        chain["transition"] = measure->chain.transition;
        Json initial;
        for (std::size_t s = 0; s < sys.state_count(); ++s) {
            Json law;
            const auto& members = measure->chain.nodes_of_state[s];
            for (std::size_t k = 0; k < members.size(); ++k)
                law[m.format_clique(dsc.nodes[members[k]].clique)] = measure->chain.initial[s][k];
            initial[sys.states()[s]] = law;
        }
        chain["initial"] = initial;
        doc["mcsc"] = chain;
    } else {
        doc["cocycle"] = nullptr;
        doc["tables"] = nullptr;
        doc["mcsc"] = nullptr;
    }

    {
        Json sp = nullptr;
        if (root)
            stage(errors, "spectral_property", [&] {
                const SpectralPropertyReport rep = spectral_property_report(sys, options.precision);
                sp = Json::object();
                Json letters;
                for (const auto& lr : rep.letters) {
                    Json entry = root_json(lr.root);
                    entry["versus_r"] = order_name(lr.versus_r);
                    entry["numeric"] = number(lr.numeric);
                    letters[m.name(lr.letter)] = entry;
                }
                sp["letters"] = letters;
                sp["verdict"] = rep.verdict;
                sp["witness"] = rep.witness ? Json(m.name(*rep.witness)) : Json(nullptr);
            });
        doc["spectral_property"] = sp;
    }

    {
        Json diag;
        const InversionReport inv = verify_inversion(sys, options.series_order);
        diag["inversion"] = Json{{"order", inv.order}, {"pass", inv.pass}};
        if (measure) {
            const MeasureInvariants mi = check_invariants(sys, *measure);
            diag["invariants"] = Json{{"cocycle_gap", mi.cocycle_gap},  {"h_empty_gap", mi.h_empty_gap},
                                      {"h_min", mi.h_min},              {"h_sum_gap", mi.h_sum_gap},
                                      {"product_gap", mi.product_gap},  {"row_sum_gap", mi.row_sum_gap},
                                      {"pass", mi.pass}};
            stage(errors, "uniqueness", [&] {
                const UniquenessReport ur = uniqueness_diagnostics(sys, *measure);
                diag["uniqueness"] = Json{{"kernel_dimension", ur.kernel_dimension},
                                          {"eigen_residual", ur.eigen_residual},
                                          {"terminal_components", ur.terminal_components},
                                          {"basic_components", ur.basic_components},
                                          {"basic_is_terminal", ur.basic_is_terminal},
                                          {"strict_reach_agrees", ur.strict_reach_agrees},
                                          {"literal_reach_agrees", ur.literal_reach_agrees},
                                          {"pass", ur.pass}};
            });
        }
        doc["diagnostics"] = diag;
    }
    doc["errors"] = errors;
    return doc;
}

}  // namespace uniconc
