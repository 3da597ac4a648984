// Copyright 2026 The coordcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "CLI11.hpp"
#include "coordcert/dag.hpp"
#include "coordcert/dag_io.hpp"
#include "coordcert/distribution.hpp"
#include "coordcert/format.hpp"
#include "coordcert/inequalities.hpp"
#include "coordcert/inflation.hpp"
#include "coordcert/noise.hpp"
#include "coordcert/opt.hpp"
#include "coordcert/parallel.hpp"
#include "coordcert/quantum.hpp"
#include "coordcert/variant.hpp"
#include "coordcert/witness.hpp"
#include "json.hpp"

namespace coord::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::string output;
    std::string format;
    int precision = kDefaultPrecision;

    int n = 4;
    std::string n_range = "4..10";
    std::string scan_n = "4";
    std::string variant = "trig";
    std::string v_grid = "0.90:1.00:0.001";
    std::string input;
    std::string inflation = "ghz";
    bool quantum = false;
    int bound = 5;
    std::string circuit;
    int dim = 16;
    int trials = 1000;
    std::uint64_t seed = 1;
};

std::vector<int> parse_n_range(const std::string &text) {
    auto parse_int = [&](const std::string &s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            fail(ErrorCode::InvalidArgument, "bad n range '" + text + "', expected N or LO..HI");
        }
        return v;
    };
    std::size_t dots = text.find("..");
    int lo = parse_int(dots == std::string::npos ? text : text.substr(0, dots));
    int hi = dots == std::string::npos ? lo : parse_int(text.substr(dots + 2));
    if (hi < lo) {
        fail(ErrorCode::InvalidArgument, "empty n range '" + text + "'");
    }
    std::vector<int> out;
    for (int n = lo; n <= hi; n++) {
        out.push_back(n);
    }
    return out;
}

std::vector<double> parse_v_grid(const std::string &text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            fail(ErrorCode::InvalidArgument, "bad v grid '" + text + "', expected LO:HI:STEP");
        }
    }
    if (parts.size() == 1) {
        return parts;
    }
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
        fail(ErrorCode::InvalidArgument, "bad v grid '" + text + "', expected LO:HI:STEP with STEP > 0");
    }
    auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    if (steps > 1000000) {
        fail(ErrorCode::InvalidArgument, "v grid has too many points");
    }
    std::vector<double> out;
    for (long k = 0; k <= steps; k++) {
        out.push_back(parts[0] + static_cast<double>(k) * parts[2]);
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes through a sibling temporary file and a rename.
void write_atomically(const std::string &path, const std::string &content) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(ErrorCode::InvalidArgument, "cannot write '" + tmp.string() + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            fail(ErrorCode::InvalidArgument, "write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorCode::InvalidArgument, "cannot move output into '" + path + "'");
    }
}

void require_format(const RunConfig &cfg, std::initializer_list<std::string_view> allowed) {
    for (auto f : allowed) {
        if (cfg.format == f) {
            return;
        }
    }
    std::string list;
    for (auto f : allowed) {
        list += (list.empty() ? "" : ", ") + std::string(f);
    }
    fail(ErrorCode::InvalidArgument, "format '" + cfg.format + "' not supported here; use one of " + list);
}

Json real(double v, int precision) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return std::stod(format_real(v, precision));
}

std::string cmd_gen_dag(RunConfig &cfg) {
    if (cfg.format.empty()) {
        cfg.format = "text";
    }
    require_format(cfg, {"text", "json"});
    CausalDag dag = cfg.quantum ? build_gstar_q(cfg.n) : build_gstar(cfg.n);
    return cfg.format == "json" ? dag_to_json(dag) : dag_to_text(dag);
}

std::string cmd_inflate(RunConfig &cfg) {
    if (cfg.format.empty()) {
        cfg.format = "csv";
    }
    require_format(cfg, {"csv", "json"});
    InflationSpec spec;
    if (cfg.inflation == "cut") {
        spec = build_cut_inflation(cfg.n);
    } else if (cfg.inflation == "ghz") {
        spec = build_ghz_inflation(cfg.n);
    } else {
        fail(ErrorCode::InvalidArgument, "inflation kind must be cut or ghz, got '" + cfg.inflation + "'");
    }
    if (cfg.format == "csv") {
        return inflation_to_csv(spec);
    }
    auto derived = derive_structure(spec);
    Json j;
    j["n"] = spec.n;
    j["kind"] = cfg.inflation;
    Json rows = Json::array();
    for (const auto &r : spec.rows) {
        Json row;
        row["label"] = r.label();
        row["party"] = r.party;
        row["setting"] = r.setting ? Json(*r.setting) : Json(nullptr);
        row["copies"] = r.copies;
        if (spec.has_lambda) {
            row["lambda"] = r.lambda_copy;
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    auto pairs = [&](const std::set<RowPair> &set) {
        Json out = Json::array();
        for (auto [a, b] : set) {
            out.push_back({spec.rows[a].label(), spec.rows[b].label()});
        }
        return out;
    };
    j["injectable_pairs"] = pairs(derived.injectable_pairs);
    j["commuting_pairs"] = pairs(derived.commuting_pairs);
    j["independent_pairs"] = pairs(derived.independent_pairs);
    return j.dump(2) + "\n";
}

std::string cmd_witness(RunConfig &cfg) {
    if (cfg.format.empty()) {
        cfg.format = "csv";
    }
    require_format(cfg, {"csv", "json"});
    auto w = build_witness(cfg.n, parse_variant(cfg.variant));
    if (cfg.format == "csv") {
        return witness_to_csv(w, cfg.precision);
    }
    auto psd = psd_check(w);
    Json j;
    j["n"] = w.n;
    j["variant"] = std::string(variant_name(w.variant));
    Json rows = Json::array();
    for (int i = 0; i < w.entries.rows(); i++) {
        Json row = Json::array();
        for (int k = 0; k < w.entries.cols(); k++) {
            row.push_back(real(w.entries(i, k), cfg.precision));
        }
        rows.push_back(row);
    }
    j["entries"] = rows;
    j["min_eigenvalue"] = real(psd.min_eigenvalue, cfg.precision);
    j["null_vector_residual"] = real(psd.null_vector_residual, cfg.precision);
    return j.dump(2) + "\n";
}

std::string cmd_certify(RunConfig &cfg) {
    if (cfg.format.empty()) {
        cfg.format = "csv";
    }
    require_format(cfg, {"csv", "json"});
    std::string text = read_file(cfg.input);
    std::size_t first = text.find_first_not_of(" \t\r\n");
    Distribution dist = first != std::string::npos && text[first] == '{' ? distribution_from_json(text)
                                                                          : distribution_from_csv(text);
    int n = cfg.n > 0 ? cfg.n : dist.n();
    if (n != dist.n()) {
        fail(ErrorCode::InvalidArity, "distribution has " + std::to_string(dist.n()) + " parties, --n says " +
                                          std::to_string(n));
    }
    Variant variant = parse_variant(cfg.variant);
    auto pairs = adjacent_pairs(n);
    pairs.push_back({1, n});
    auto sides = coordination_sides(correlators(dist, pairs), n, variant);
    std::string verdict = sides.slack() < 0 ? "common cause certified" : "inconclusive";
    if (cfg.format == "json") {
        Json j;
        j["n"] = n;
        j["variant"] = std::string(variant_name(variant));
        j["lhs"] = real(sides.lhs, cfg.precision);
        j["rhs"] = real(sides.rhs, cfg.precision);
        j["slack"] = real(sides.slack(), cfg.precision);
        j["verdict"] = verdict;
        return j.dump(2) + "\n";
    }
    return "n,variant,lhs,rhs,slack,verdict\n" + std::to_string(n) + "," + std::string(variant_name(variant)) + "," +
           format_real(sides.lhs, cfg.precision) + "," + format_real(sides.rhs, cfg.precision) + "," +
           format_real(sides.slack(), cfg.precision) + "," + verdict + "\n";
}

std::string cmd_noise_table(RunConfig &cfg) {
    if (cfg.format.empty()) {
        cfg.format = "csv";
    }
    require_format(cfg, {"csv", "json"});
    Variant variant = parse_variant(cfg.variant);
    std::vector<ThresholdResult> rows;
    for (int n : parse_n_range(cfg.n_range)) {
        rows.push_back(solve_threshold(n, variant));
    }
    return cfg.format == "json" ? thresholds_to_json(rows, cfg.precision) : thresholds_to_csv(rows, cfg.precision);
}

struct ScanPoint {
    int n = 0;
    double v = 0.0;
    GhzStats stats;
    std::optional<InequalitySides> sides;
};

std::string cmd_ghz_scan(RunConfig &cfg, std::ostream &err) {
    if (cfg.format.empty()) {
        cfg.format = "csv";
    }
    require_format(cfg, {"csv", "json"});
    Variant variant = parse_variant(cfg.variant);
    auto ns = parse_n_range(cfg.scan_n);
    auto vs = parse_v_grid(cfg.v_grid);
    std::vector<ScanPoint> points;
    for (int n : ns) {
        for (double v : vs) {
            points.push_back({n, v, {}, std::nullopt});
        }
    }
    parallel_for(points.size(), [&](std::size_t i) {
        auto &p = points[i];
        p.stats = optimal_strategy_stats(p.n, p.v);
        try {
            p.sides = ghz_sides(p.stats, p.n, variant);
        } catch (const Error &e) {
            if (e.code() != ErrorCode::OutOfRegion) {
                throw;
            }
        }
    });

    std::map<int, std::optional<double>> crossing;
    for (std::size_t i = 0; i < points.size(); i++) {
        int n = points[i].n;
        crossing.emplace(n, std::nullopt);
        if (i == 0 || points[i - 1].n != n || crossing[n] || !points[i].sides || !points[i - 1].sides) {
            continue;
        }
        double a = points[i - 1].sides->slack();
        double b = points[i].sides->slack();
        if (a >= 0 && b < 0) {
            crossing[n] = points[i - 1].v + (points[i].v - points[i - 1].v) * a / (a - b);
        }
    }
    int prec = cfg.precision;
    if (cfg.format == "json") {
        Json j;
        j["variant"] = std::string(variant_name(variant));
        Json arr = Json::array();
        for (const auto &p : points) {
            Json o;
            o["n"] = p.n;
            o["v"] = real(p.v, prec);
            o["i_chsh_plus"] = real(p.stats.i_chsh_plus, prec);
            o["i_chsh_minus"] = real(p.stats.i_chsh_minus, prec);
            o["i_same"] = real(p.stats.i_same, prec);
            o["a_rest_mean"] = real(p.stats.a_rest_mean, prec);
            o["in_region"] = p.sides.has_value();
            o["lhs"] = p.sides ? real(p.sides->lhs, prec) : Json(nullptr);
            o["rhs"] = p.sides ? real(p.sides->rhs, prec) : Json(nullptr);
            o["slack"] = p.sides ? real(p.sides->slack(), prec) : Json(nullptr);
            arr.push_back(o);
        }
        j["points"] = arr;
        Json cross = Json::object();
        for (const auto &[n, v] : crossing) {
            cross[std::to_string(n)] = v ? real(*v, prec) : Json(nullptr);
        }
        j["sign_change"] = cross;
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "n,v,i_chsh_plus,i_chsh_minus,i_same,a_rest_mean,in_region,lhs,rhs,slack\n";
    for (const auto &p : points) {
        out << p.n << ',' << format_real(p.v, prec) << ',' << format_real(p.stats.i_chsh_plus, prec) << ','
            << format_real(p.stats.i_chsh_minus, prec) << ',' << format_real(p.stats.i_same, prec) << ','
            << format_real(p.stats.a_rest_mean, prec) << ',' << (p.sides ? "yes" : "no") << ',';
        if (p.sides) {
            out << format_real(p.sides->lhs, prec) << ',' << format_real(p.sides->rhs, prec) << ','
                << format_real(p.sides->slack(), prec);
        } else {
            out << ",,";
        }
        out << '\n';
    }
    for (const auto &[n, v] : crossing) {
        if (v) {
            err << "n=" << n << ": slack changes sign near v=" << format_real(*v, 6) << "\n";
        } else {
            err << "n=" << n << ": no sign change on the grid\n";
        }
    }
    return out.str();
}

struct OptSummary {
    std::size_t circuits = 0;
    std::size_t nsi_failures = 0;
    std::size_t proposition_failures = 0;
    std::size_t marginal_checks = 0;
    std::size_t factorization_checks = 0;
    std::size_t pair_checks = 0;
    std::size_t set_checks = 0;
    std::vector<std::string> messages;
};

std::string cmd_opt_check(RunConfig &cfg, bool &failed) {
    if (cfg.format.empty()) {
        cfg.format = "text";
    }
    require_format(cfg, {"text", "json"});
    if (!cfg.circuit.empty()) {
        Circuit c = circuit_from_text(read_file(cfg.circuit));
        require_valid(c);
        auto nsi = check_nsi(c);
        auto props = check_propositions(c);
        failed = !nsi.ok() || !props.ok();
        if (cfg.format == "json") {
            return outcome_distribution_to_json(assign_probability(c), cfg.precision);
        }
        std::ostringstream out;
        auto classes = classify(c);
        for (const auto &set : classes.embeddable_sets) {
            out << "embeddable";
            for (std::size_t t : set) {
                out << ' ' << c.test(t).id;
            }
            out << '\n';
        }
        for (std::size_t t : classes.non_embeddable) {
            out << "non-embeddable " << c.test(t).id << '\n';
        }
        for (const auto &[outcome, p] : assign_probability(c).probs) {
            out << "P(" << outcome << ") = " << format_real(p, cfg.precision) << '\n';
        }
        for (const auto &f : nsi.failures) {
            out << "NSI failure: " << f << '\n';
        }
        for (const auto &f : props.failures) {
            out << "proposition failure: " << f << '\n';
        }
        return out.str();
    }

    auto corpus = enumerate_circuits(cfg.bound);
    std::vector<NsiReport> nsi(corpus.size());
    std::vector<PropositionReport> props(corpus.size());
    parallel_for(corpus.size(), [&](std::size_t i) {
        nsi[i] = check_nsi(corpus[i]);
        props[i] = check_propositions(corpus[i]);
    });
    OptSummary s;
    s.circuits = corpus.size();
    for (std::size_t i = 0; i < corpus.size(); i++) {
        s.nsi_failures += nsi[i].failures.size();
        s.proposition_failures += props[i].failures.size();
        s.marginal_checks += nsi[i].marginal_checks;
        s.factorization_checks += nsi[i].factorization_checks;
        s.pair_checks += props[i].pair_checks;
        s.set_checks += props[i].set_checks;
        for (const auto &f : nsi[i].failures) {
            s.messages.push_back(f + " in\n" + circuit_to_text(corpus[i]));
        }
        for (const auto &f : props[i].failures) {
            s.messages.push_back(f + " in\n" + circuit_to_text(corpus[i]));
        }
    }
    failed = s.nsi_failures + s.proposition_failures > 0;
    if (cfg.format == "json") {
        Json j;
        j["bound"] = cfg.bound;
        j["circuits"] = s.circuits;
        j["nsi_failures"] = s.nsi_failures;
        j["proposition_failures"] = s.proposition_failures;
        j["marginal_checks"] = s.marginal_checks;
        j["factorization_checks"] = s.factorization_checks;
        j["pair_checks"] = s.pair_checks;
        j["set_checks"] = s.set_checks;
        j["failures"] = s.messages;
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    for (const auto &m : s.messages) {
        out << m;
    }
    out << s.nsi_failures << " NSI failures, ";
    if (s.proposition_failures == 0) {
        out << "Props 1-2 hold on " << s.circuits << " circuits\n";
    } else {
        out << s.proposition_failures << " proposition failures on " << s.circuits << " circuits\n";
    }
    return out.str();
}

std::string cmd_lemma2_probe(RunConfig &cfg) {
    if (cfg.format.empty()) {
        cfg.format = "csv";
    }
    require_format(cfg, {"csv", "json"});
    auto r = lemma2_probe(cfg.dim, cfg.trials, cfg.seed);
    if (cfg.format == "json") {
        Json j;
        j["dim"] = cfg.dim;
        j["trials"] = r.trials;
        j["seed"] = cfg.seed;
        j["max_residual"] = real(r.max_residual, cfg.precision);
        j["max_premise_gap"] = real(r.max_premise_gap, cfg.precision);
        return j.dump(2) + "\n";
    }
    return "dim,trials,seed,max_residual,max_premise_gap\n" + std::to_string(cfg.dim) + "," +
           std::to_string(r.trials) + "," + std::to_string(cfg.seed) + "," +
           format_real(r.max_residual, cfg.precision) + "," + format_real(r.max_premise_gap, cfg.precision) + "\n";
}

void add_common(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("-o,--output", cfg.output, "Write to this file instead of stdout");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--precision", cfg.precision, "Significant digits for reals")->check(CLI::Range(1, 17));
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    CLI::App app{"Common-cause certification toolkit", "coordcert"};
    app.require_subcommand(1);

    auto *gen = app.add_subcommand("gen-dag", "Emit the reference causal structure");
    gen->add_option("--n", cfg.n, "Number of parties")->required();
    gen->add_flag("--quantum", cfg.quantum, "Quantum nodes plus a classical broadcast source");

    auto *inflate = app.add_subcommand("inflate", "Emit an inflation table");
    inflate->add_option("--n", cfg.n, "Number of parties")->required();
    inflate->add_option("--kind", cfg.inflation, "cut or ghz")->capture_default_str();

    auto *witness = app.add_subcommand("witness", "Emit a witness matrix");
    witness->add_option("--n", cfg.n, "Number of parties")->required();
    witness->add_option("--variant", cfg.variant, "trig or alt")->capture_default_str();

    auto *certify = app.add_subcommand("certify", "Evaluate the coordination inequality on a distribution file");
    certify->add_option("input", cfg.input, "Distribution as CSV or JSON")->required();
    certify->add_option("--n", cfg.n, "Expected number of parties (0 to infer)");
    certify->add_option("--variant", cfg.variant, "trig or alt")->capture_default_str();

    auto *noise = app.add_subcommand("noise-table", "Critical white-noise visibilities");
    noise->add_option("--n", cfg.n_range, "Party range LO..HI")->capture_default_str();
    noise->add_option("--variant", cfg.variant, "trig or alt")->capture_default_str();

    auto *scan = app.add_subcommand("ghz-scan", "GHZ game inequality along a visibility grid");
    scan->add_option("--n", cfg.scan_n, "Parties, N or LO..HI")->capture_default_str();
    scan->add_option("--v", cfg.v_grid, "Visibility grid LO:HI:STEP")->capture_default_str();
    scan->add_option("--variant", cfg.variant, "trig or alt")->capture_default_str();

    auto *opt = app.add_subcommand("opt-check", "Check the probability rule over enumerated circuits");
    opt->add_option("--bound", cfg.bound, "Maximum number of preparations")->capture_default_str();
    opt->add_option("--circuit", cfg.circuit, "Analyse one circuit file instead");

    auto *lemma = app.add_subcommand("lemma2-probe", "Randomised check of the commuting-projector lemma");
    lemma->add_option("--dim", cfg.dim, "Hilbert space dimension")->capture_default_str();
    lemma->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
    lemma->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

    for (auto *sub : {gen, inflate, witness, certify, noise, scan, opt, lemma}) {
        add_common(sub, cfg);
    }

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (certify->parsed() && certify->count("--n") == 0) {
        cfg.n = 0;
    }

    try {
        std::string result;
        bool failed = false;
        if (gen->parsed()) {
            result = cmd_gen_dag(cfg);
        } else if (inflate->parsed()) {
            result = cmd_inflate(cfg);
        } else if (witness->parsed()) {
            result = cmd_witness(cfg);
        } else if (certify->parsed()) {
            result = cmd_certify(cfg);
        } else if (noise->parsed()) {
            result = cmd_noise_table(cfg);
        } else if (scan->parsed()) {
            result = cmd_ghz_scan(cfg, err);
        } else if (opt->parsed()) {
            result = cmd_opt_check(cfg, failed);
        } else {
            result = cmd_lemma2_probe(cfg);
        }
        if (cfg.output.empty()) {
            out << result;
        } else {
            write_atomically(cfg.output, result);
        }
        if (failed) {
            err << "error: invariant check failed\n";
            return kExitInternal;
        }
        return kExitOk;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::Internal ? kExitInternal : kExitUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace coord::cli
