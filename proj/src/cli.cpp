#include "permsep/cli.hpp"

#include "permsep/classifier.hpp"
#include "permsep/criteria.hpp"
#include "permsep/error.hpp"
#include "permsep/parallel.hpp"
#include "permsep/simd/jacobi_kernels.hpp"
#include "permsep/states.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace permsep::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr const char* kSchema = "permsep.report/1";

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::string kind_name(ClassKind kind) {
    switch (kind) {
    case ClassKind::Trivial: return "trivial";
    case ClassKind::PartialTranspose: return "pt";
    case ClassKind::Realign: return "realign";
    case ClassKind::Mixed: return "mixed";
    }
    return "?";
}

Json class_json(const CanonicalClass& cls) {
    Json j;
    j["id"] = cls.id();
    j["kind"] = kind_name(cls.kind());
    j["label"] = to_string(cls.label());
    j["description"] = describe(cls.label());
    j["representative"] = cls.representative().map();
    return j;
}

std::string fixed12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

Json runtime_json() {
    Json j;
    j["simd"] = std::string(simd::to_string(simd::active_kernels().isa));
    j["threads"] = thread_count();
    return j;
}

// ------------------------------------------------------------------ classify

struct ClassifyArgs {
    int parties = 0;
    int dim = 2;
    int samples = 5;
    std::uint64_t seed = kDefaultSeed;
    double tol = kDefaultSpectrumTolerance;
    bool oracle = false;
    std::string ensemble = "density";
    std::string format = "table";
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
    if (a.parties < 1 || a.parties > kMaxClassifiedParties) {
        err << "classify: --parties must lie in 1.." << kMaxClassifiedParties << '\n';
        return kUsage;
    }
    const auto t0 = Clock::now();
    const auto classes = enumerate_classes(a.parties);
    const double enumerate_ms = elapsed_ms(t0);

    const std::uint64_t total = factorial(2 * a.parties);
    const std::size_t nontrivial = classes.size() - 1;

    std::optional<OracleGrouping> grouping;
    bool match = true;
    // Density matrices cannot separate a class from its hermitian_partner.
    std::optional<bool> hermitian_match;
    double oracle_ms = 0.0;
    if (a.oracle) {
        const auto t1 = Clock::now();
        const auto ensemble = a.ensemble == "general" ? OracleEnsemble::GeneralMatrices : OracleEnsemble::DensityMatrices;
        try {
            grouping = oracle_grouping(a.parties, {a.dim, a.samples, a.seed, a.tol, ensemble});
        } catch (const InvalidArgument& e) {
            err << "classify: " << e.what() << '\n';
            return kUsage;
        } catch (const ResourceLimit& e) {
            err << "classify: " << e.what() << '\n';
            return kUsage;
        }
        match = same_partition(analytic_partition(a.parties), grouping->group_of);
        if (ensemble == OracleEnsemble::DensityMatrices)
            hermitian_match = same_partition(hermitian_partition(a.parties), grouping->group_of);
        oracle_ms = elapsed_ms(t1);
    }

    std::ostringstream summary;
    summary << (total - 1) << " candidate criteria, " << nontrivial << " non-equivalent non-trivial";

    if (a.format == "json") {
        Json j;
        j["schema"] = kSchema;
        j["command"] = "classify";
        j["inputs"] = {{"parties", a.parties}, {"dim", a.dim},         {"samples", a.samples},
                       {"seed", a.seed},       {"tol", a.tol},         {"oracle", a.oracle},
                       {"ensemble", a.ensemble}};
        j["runtime"] = runtime_json();
        j["permutations"] = total;
        j["candidate_criteria"] = total - 1;
        j["non_equivalent"] = nontrivial;
        j["summary"] = summary.str();
        j["classes"] = Json::array();
        for (const auto& c : classes) {
            Json cj = class_json(c.cls);
            cj["population"] = c.population;
            j["classes"].push_back(std::move(cj));
        }
        if (grouping) {
            j["oracle"] = {{"groups", grouping->group_sizes.size()}, {"group_sizes", grouping->group_sizes},
                           {"match", match}};
            if (hermitian_match) j["oracle"]["hermitian_match"] = *hermitian_match;
        }
        j["timings_ms"] = {{"enumerate", enumerate_ms}, {"oracle", oracle_ms}};
        out << j.dump(2) << '\n';
    } else {
        out << "classify: N=" << a.parties << ", " << total << " index permutations\n";
        out << summary.str() << '\n';
        out << std::left << std::setw(4) << "#" << std::setw(22) << "id" << std::setw(28) << "label" << std::setw(12)
            << "population" << "representative\n";
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const auto& c = classes[i];
            out << std::left << std::setw(4) << i << std::setw(22) << c.cls.id() << std::setw(28)
                << to_string(c.cls.label()) << std::setw(12) << c.population << to_string(c.cls.representative())
                << '\n';
        }
        if (grouping) {
            out << "oracle: " << grouping->group_sizes.size() << " groups (" << a.ensemble << ", d=" << a.dim << ", "
                << a.samples << " samples, seed " << a.seed << ", tol " << a.tol
                << "): " << (match ? "MATCH" : "MISMATCH") << '\n';
            if (hermitian_match) {
                out << "oracle vs classes merged with their ket/bra-exchanged partner: "
                    << (*hermitian_match ? "MATCH" : "MISMATCH") << '\n';
            }
        }
    }
    return match ? kOk : kMismatch;
}

// ------------------------------------------------------------------ evaluate

struct EvaluateArgs {
    std::string state;
    std::string criteria = "all";
    double tol = kDefaultDetectionTolerance;
    std::string format = "table";
};

std::optional<DensityMatrix> load_state(const std::string& path, std::ostream& err) {
    try {
        return read_state(path);
    } catch (const InvalidState& e) {
        err << "invalid state (" << e.invariant() << "): " << e.what() << '\n';
    }
    return std::nullopt;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
    if (!(a.tol > 0.0)) {
        err << "evaluate: --tol must be positive\n";
        return kUsage;
    }
    const auto rho = load_state(a.state, err);
    if (!rho) return kInvalidState;
    const int n = rho->parties();

    std::vector<CanonicalClass> selected;
    const auto catalog = class_catalog(n);
    if (a.criteria == "all" || a.criteria == "pt" || a.criteria == "realign" || a.criteria == "mixed") {
        for (const auto& cls : catalog) {
            if (cls.kind() == ClassKind::Trivial) continue;
            if (a.criteria == "all" || kind_name(cls.kind()) == a.criteria) selected.push_back(cls);
        }
    } else {
        try {
            selected.push_back(parse_class_id(n, a.criteria));
        } catch (const InvalidArgument& e) {
            err << "evaluate: " << e.what() << '\n';
            return kUsage;
        }
    }

    const auto t0 = Clock::now();
    std::vector<std::optional<CriterionVerdict>> verdicts(selected.size());
    parallel_for(selected.size(), [&](std::size_t i) { verdicts[i] = evaluate_class(*rho, selected[i], a.tol); });
    const double evaluate_ms = elapsed_ms(t0);

    if (a.format == "json") {
        Json j;
        j["schema"] = kSchema;
        j["command"] = "evaluate";
        j["inputs"] = {{"state", a.state},
                       {"dims", std::vector<int>(rho->subsystems().dims().begin(), rho->subsystems().dims().end())},
                       {"criteria", a.criteria},
                       {"tol", a.tol}};
        j["runtime"] = runtime_json();
        j["trivial_class"] = class_json(catalog.front());
        j["results"] = Json::array();
        for (const auto& v : verdicts) {
            Json r = class_json(v->criterion);
            r["trace_norm"] = v->value;
            r["detected"] = v->detected;
            j["results"].push_back(std::move(r));
        }
        j["timings_ms"] = {{"evaluate", evaluate_ms}};
        out << j.dump(2) << '\n';
    } else {
        out << std::left << std::setw(22) << "id" << std::setw(28) << "label" << std::setw(18) << "trace norm"
            << "detected\n";
        for (const auto& v : verdicts) {
            out << std::left << std::setw(22) << v->criterion.id() << std::setw(28) << to_string(v->criterion.label())
                << std::setw(18) << fixed12(v->value) << (v->detected ? "yes" : "no") << '\n';
        }
    }
    return kOk;
}

// ------------------------------------------------------------------- witness

int cmd_witness(const std::string& path, double tol, std::ostream& out, std::ostream& err) {
    if (!(tol > 0.0)) {
        err << "witness: --tol must be positive\n";
        return kUsage;
    }
    const auto rho = load_state(path, err);
    if (!rho) return kInvalidState;
    std::vector<std::string> detected_by;
    for (const auto& v : evaluate_all_classes(*rho, tol))
        if (v.detected) detected_by.push_back(to_string(v.criterion.label()));
    if (detected_by.empty()) {
        out << "NOT DETECTED (state may still be entangled)\n";
        return kNotDetected;
    }
    out << "ENTANGLED (detected by: ";
    for (std::size_t i = 0; i < detected_by.size(); ++i) out << (i ? ", " : "") << detected_by[i];
    out << ")\n";
    return kOk;
}

// ----------------------------------------------------------------- gen-state

struct GenArgs {
    std::string name;
    std::string dims = "2,2";
    std::optional<std::uint64_t> seed;
    int rank = 0;
    int terms = 4;
    std::string output;
};

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const int d = std::stoi(item, &used);
        if (used != item.size()) throw InvalidArgument("bad --dims entry '" + item + "'");
        dims.push_back(d);
    }
    return dims;
}

double parse_parameter(const std::string& name, const std::string& value) {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw InvalidArgument("bad parameter for " + name + ": '" + value + "'");
    return x;
}

StateSpec parse_spec(const GenArgs& a) {
    StateSpec spec;
    spec.dims = Subsystems(parse_dims(a.dims));
    spec.seed = a.seed;
    spec.rank = a.rank;
    spec.terms = a.terms;
    const auto colon = a.name.find(':');
    const std::string base = a.name.substr(0, colon);
    const bool has_param = colon != std::string::npos;
    auto param = [&] {
        if (!has_param) throw InvalidArgument(base + " needs a parameter, e.g. " + base + ":0.5");
        return parse_parameter(base, a.name.substr(colon + 1));
    };
    if (base == "werner") {
        spec.kind = StateKind::Werner;
        spec.parameter = param();
        return spec;
    }
    if (base == "isotropic") {
        spec.kind = StateKind::Isotropic;
        spec.parameter = param();
        return spec;
    }
    if (has_param) throw InvalidArgument("state '" + base + "' takes no parameter");
    if (base == "bell") spec.kind = StateKind::Bell;
    else if (base == "ghz") spec.kind = StateKind::Ghz;
    else if (base == "w") spec.kind = StateKind::W;
    else if (base == "mixed") spec.kind = StateKind::MaximallyMixed;
    else if (base == "random") spec.kind = StateKind::RandomMixed;
    else if (base == "random-separable") spec.kind = StateKind::RandomSeparable;
    else if (base == "product") spec.kind = StateKind::ProductPure;
    else throw InvalidArgument("unknown state name '" + a.name + "'");
    return spec;
}

int cmd_gen_state(const GenArgs& a, std::ostream&, std::ostream& err) {
    std::optional<DensityMatrix> rho;
    try {
        rho = generate(parse_spec(a));
    } catch (const std::invalid_argument&) {
        err << "gen-state: malformed number in arguments\n";
        return kUsage;
    } catch (const std::out_of_range&) {
        err << "gen-state: number out of range in arguments\n";
        return kUsage;
    } catch (const Error& e) {
        err << "gen-state: " << e.what() << '\n';
        return kUsage;
    }
    try {
        write_state(*rho, a.output);
    } catch (const Error& e) {
        err << "gen-state: " << e.what() << '\n';
        return kIoError;
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Permutation-of-indices separability criteria for multipartite density matrices", "permsep"};
    app.require_subcommand(1);

    ClassifyArgs classify;
    auto* c = app.add_subcommand("classify", "Enumerate index permutations and reduce them to equivalence classes");
    c->add_option("--parties", classify.parties, "Number of parties N (1..5)")->required();
    c->add_option("--dim", classify.dim, "Subsystem dimension used by the oracle")->capture_default_str();
    c->add_option("--samples", classify.samples, "Random states drawn by the oracle")->capture_default_str();
    c->add_option("--seed", classify.seed, "Oracle seed")->capture_default_str();
    c->add_option("--tol", classify.tol, "Oracle spectrum tolerance")->capture_default_str();
    c->add_flag("--oracle", classify.oracle, "Cross-check classes against singular-value grouping");
    c->add_option("--ensemble", classify.ensemble, "Oracle inputs: density matrices or general complex matrices")
        ->check(CLI::IsMember({"density", "general"}))
        ->capture_default_str();
    c->add_option("--format", classify.format)->check(CLI::IsMember({"json", "table"}))->capture_default_str();

    EvaluateArgs evaluate;
    auto* e = app.add_subcommand("evaluate", "Trace norm of each selected criterion class for a state file");
    e->add_option("--state", evaluate.state, "State JSON file")->required();
    e->add_option("--criteria", evaluate.criteria, "all | pt | realign | mixed | class id such as k1,b1,k3")
        ->capture_default_str();
    e->add_option("--tol", evaluate.tol, "Detection margin over 1")->capture_default_str();
    e->add_option("--format", evaluate.format)->check(CLI::IsMember({"json", "table"}))->capture_default_str();

    std::string witness_state;
    double witness_tol = kDefaultDetectionTolerance;
    auto* w = app.add_subcommand("witness", "Report whether any criterion class detects entanglement");
    w->add_option("--state", witness_state, "State JSON file")->required();
    w->add_option("--tol", witness_tol, "Detection margin over 1")->capture_default_str();

    GenArgs gen;
    auto* g = app.add_subcommand("gen-state", "Write a named or random state to a JSON file");
    g->add_option("--name", gen.name,
                  "bell | ghz | w | werner:p | isotropic:f | mixed | random | random-separable | product")
        ->required();
    g->add_option("--dims", gen.dims, "Comma-separated subsystem dimensions")->capture_default_str();
    g->add_option("--seed", gen.seed, "Seed for random states");
    g->add_option("--rank", gen.rank, "Rank for 'random' (0 = full)")->capture_default_str();
    g->add_option("--terms", gen.terms, "Product terms for 'random-separable'")->capture_default_str();
    g->add_option("-o,--output", gen.output, "Destination file")->required();

    std::vector<std::string> argv_storage{"permsep"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& pe) {
        const int code = app.exit(pe, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*c) return cmd_classify(classify, out, err);
        if (*e) return cmd_evaluate(evaluate, out, err);
        if (*w) return cmd_witness(witness_state, witness_tol, out, err);
        if (*g) return cmd_gen_state(gen, out, err);
    } catch (const InvalidArgument& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << '\n';
        return kIoError;
    }
    return kUsage;
}

} // namespace permsep::cli
