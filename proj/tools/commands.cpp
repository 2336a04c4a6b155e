#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mvsk/convexity.hpp"
#include "mvsk/errors.hpp"
#include "mvsk/io.hpp"
#include "mvsk/moments.hpp"
#include "mvsk/objective.hpp"
#include "mvsk/projection.hpp"
#include "mvsk/solver.hpp"
#include "mvsk/sparse.hpp"
#include "mvsk/sweep.hpp"
#include "mvsk/synth.hpp"

namespace mvsk::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
    std::string data_path;
    std::string model_path;
    std::string sweep_path;
    std::string out_path;
    bool prices = false;
    bool simplex = false;
    std::optional<double> cube;
    int grid_s = 10;
    std::string lambda = "1,0,0,0";
    double eta = 0.01;
    int sparse_k = 0;
    bool no_support_heuristic = false;
    bool no_proximity_heuristic = false;
    int proximity_count = 0;
    std::string forbidden_pairs;
    double correlation_threshold = 0.0;
    int max_iter = 2000;
    int jobs = 1;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    bool no_lambda1_filter = false;
    int synth_n = 20;
    int synth_m = 500;
    int volume_resolution = 0;
    std::vector<std::string> select;
};

struct Source {
    ModelFile file;
    std::string description;
};

std::vector<double> parse_numbers(const std::string& text, const char* what) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        std::string cell = text.substr(pos, end - pos);
        cell.erase(0, cell.find_first_not_of(" \t"));
        cell.erase(cell.find_last_not_of(" \t") + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
            throw DomainError(std::string("cannot read ") + what + " '" + text + "'");
        }
        values.push_back(v);
        pos = end + 1;
    }
    return values;
}

LambdaPoint parse_lambda(const std::string& text) {
    const auto v = parse_numbers(text, "lambda");
    if (v.size() != 4) throw DomainError("lambda needs four comma-separated values, got '" + text + "'");
    return LambdaPoint::normalized({v[0], v[1], v[2], v[3]});
}

// Either an inline list "0:1,2:5" or a file with one "i,j" pair per line;
// indices are 0-based.
std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
    std::vector<std::pair<int, int>> pairs;
    if (text.empty()) return pairs;
    std::string inline_list = text;
    if (fs::is_regular_file(text)) {
        std::ifstream in(text);
        if (!in) throw Error("cannot open forbidden-pairs file '" + text + "'");
        inline_list.clear();
        std::string line;
        while (std::getline(in, line)) {
            std::erase_if(line, [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
            if (line.empty() || line[0] == '#') continue;
            std::replace(line.begin(), line.end(), ',', ':');
            inline_list += (inline_list.empty() ? "" : ",") + line;
        }
        if (inline_list.empty()) return pairs;
    }
    std::stringstream ss(inline_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        int a = -1;
        int b = -1;
        const bool ok = colon != std::string::npos &&
                        std::from_chars(item.data(), item.data() + colon, a).ec == std::errc() &&
                        std::from_chars(item.data() + colon + 1, item.data() + item.size(), b).ec == std::errc();
        if (!ok) throw DomainError("cannot read forbidden pair '" + item + "' (expected i:j)");
        pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    return pairs;
}

Domain domain_of(const RunConfig& cfg) { return cfg.cube ? Domain::cube(*cfg.cube) : Domain::simplex(); }

SolverOptions solver_options(const RunConfig& cfg) {
    SolverOptions o;
    o.max_iterations = cfg.max_iter;
    return o;
}

SparseOptions sparse_options(const RunConfig& cfg, const MomentModel& model) {
    SparseOptions o;
    o.k = cfg.sparse_k;
    o.use_support_heuristic = !cfg.no_support_heuristic;
    o.use_proximity_heuristic = !cfg.no_proximity_heuristic;
    o.proximity_count = cfg.proximity_count;
    o.forbidden_pairs = parse_pairs(cfg.forbidden_pairs);
    if (cfg.correlation_threshold > 0.0) {
        for (const auto& p : correlated_pairs(model, cfg.correlation_threshold)) o.forbidden_pairs.push_back(p);
    }
    return o;
}

ModelFile model_from_returns(const ReturnsMatrix& raw) {
    ModelFile f;
    f.model = build_moment_model(raw);
    f.asset_labels = raw.asset_labels;
    f.bounds = compute_data_bounds(raw);
    return f;
}

Source load_source(const RunConfig& cfg) {
    if (!cfg.model_path.empty()) return {read_model(cfg.model_path), "model " + cfg.model_path};
    if (!cfg.data_path.empty()) {
        return {model_from_returns(load_returns_file(cfg.data_path, cfg.prices)), "data " + cfg.data_path};
    }
    const auto raw = synthesize_returns({cfg.synth_n, cfg.synth_m, cfg.seed});
    return {model_from_returns(raw), "synthetic sample (seed " + std::to_string(cfg.seed) + ")"};
}

std::optional<Bounds> bounds_of(const Source& src, const Domain& domain) {
    if (!src.file.bounds) return std::nullopt;
    return src.file.bounds->for_domain(domain);
}

fs::path output_path(const RunConfig& cfg, const std::string& default_name) {
    fs::path p = cfg.out_path.empty() ? fs::path(cfg.out_dir) / default_name : fs::path(cfg.out_path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
}

std::ofstream open_output(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    return out;
}

void write_json(const fs::path& p, const json& j) {
    auto out = open_output(p);
    out << j.dump(1) << '\n';
}

std::string lambda_text(const LambdaPoint& l) {
    return format_double(l[0]) + "," + format_double(l[1]) + "," + format_double(l[2]) + "," + format_double(l[3]);
}

RegionLabel label_of(const LambdaPoint& lambda, const std::optional<Bounds>& bounds) {
    if (bounds) return classify_lambda(lambda, *bounds);
    return evaluate_conditions(lambda, Bounds{}).global ? RegionLabel::GlobalConvex : RegionLabel::Unknown;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out) {
    if (cfg.data_path.empty()) throw Error("moments needs --data");
    const auto raw = load_returns_file(cfg.data_path, cfg.prices);
    const ModelFile f = model_from_returns(raw);
    const auto path = output_path(cfg, "model.json");
    write_model(path.string(), f);
    const double b = cfg.cube.value_or(1.0);
    out << "n = " << f.model.n << ", m = " << f.model.m << '\n'
        << "simplex bounds [" << format_double(f.bounds->simplex.lower) << ", "
        << format_double(f.bounds->simplex.upper) << "]\n"
        << "cube (B = " << format_double(b) << ") bounds [" << format_double(-b * f.bounds->cube_unit_upper) << ", "
        << format_double(b * f.bounds->cube_unit_upper) << "]\n"
        << "wrote " << path.string() << '\n';
    return kSuccess;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const Source src = load_source(cfg);
    const Domain domain = domain_of(cfg);
    const LambdaPoint lambda = parse_lambda(cfg.lambda);
    const auto bounds = bounds_of(src, domain);
    json j;
    j["lambda"] = {lambda[0], lambda[1], lambda[2], lambda[3]};
    j["domain"] = domain.describe();
    const auto c = evaluate_conditions(lambda, bounds.value_or(Bounds{}));
    if (bounds) {
        j["bounds"] = {bounds->lower, bounds->upper};
        j["conditions"] = {{"i", c.flat}, {"ii", c.no_roots}, {"iii", c.below}, {"iv", c.above}};
    } else {
        // Without data bounds only the bound-free certificate means anything.
        j["bounds"] = nullptr;
        j["conditions"] = {{"ii", c.no_roots}};
    }
    j["label"] = to_string(label_of(lambda, bounds));
    if (cfg.volume_resolution > 0) {
        j["volume"]["GlobalConvex"] =
            region_volume(bounds.value_or(Bounds{}), RegionTarget::GlobalConvex, cfg.volume_resolution);
        if (bounds) {
            j["volume"]["DomainConvex"] = region_volume(*bounds, RegionTarget::DomainConvex, cfg.volume_resolution);
        }
    }
    out << j.dump(1) << '\n';
    return kSuccess;
}

json solve_document(const Source& src, const SolveResult& r, const LambdaPoint& lambda, const Domain& domain,
                    const std::optional<Bounds>& bounds, const RunConfig& cfg) {
    json j = solve_result_to_json(r, lambda, domain);
    j["region_label"] = to_string(label_of(lambda, bounds));
    j["data_fingerprint"] = fingerprint_hex(src.file.model);
    j["max_iterations"] = cfg.max_iter;
    j["seed"] = cfg.seed;
    return j;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, bool sparse) {
    const Source src = load_source(cfg);
    const Domain domain = domain_of(cfg);
    const LambdaPoint lambda = parse_lambda(cfg.lambda);
    const MomentEvaluator evaluator(src.file.model);
    const auto opts = solver_options(cfg);
    SolveResult r = solve(evaluator, lambda, domain, opts);
    if (sparse) {
        if (cfg.sparse_k < 1) throw DomainError("solve-sparse needs --sparse-k >= 1");
        r = solve_sparse(evaluator, lambda, domain, sparse_options(cfg, src.file.model), r, opts);
    }
    const auto path = output_path(cfg, sparse ? "solve_sparse.json" : "solve.json");
    const json doc = solve_document(src, r, lambda, domain, bounds_of(src, domain), cfg);
    write_json(path, doc);
    out << doc.dump(1) << '\n';
    return kSuccess;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const Source src = load_source(cfg);
    const Domain domain = domain_of(cfg);
    const MomentEvaluator evaluator(src.file.model);
    const auto grid = build_grid(cfg.grid_s, !cfg.no_lambda1_filter);

    SweepOptions sweep_opts;
    sweep_opts.jobs = cfg.jobs;
    sweep_opts.bounds = bounds_of(src, domain);
    if (cfg.sparse_k > 0) sweep_opts.sparse = sparse_options(cfg, src.file.model);
    SweepResult sweep = scale_values(run_sweep(evaluator, domain, grid, solver_options(cfg), sweep_opts));

    SweepMeta meta;
    meta.eta = cfg.eta;
    meta.data_fingerprint = fingerprint_hex(src.file.model);
    meta.lambda1_filter = !cfg.no_lambda1_filter;
    meta.max_iterations = cfg.max_iter;
    meta.seed = cfg.seed;
    const json doc = sweep_to_json(sweep, meta);

    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);
    write_json(dir / "sweep.json", doc);
    {
        auto csv = open_output(dir / "sweep.csv");
        write_sweep_csv(csv, sweep, cfg.eta);
    }
    const auto superior = superior_set(sweep, cfg.eta);
    {
        std::vector<std::size_t> idx;
        for (const auto& s : superior) idx.push_back(s.index);
        auto csv = open_output(dir / "superior.csv");
        write_trade_off_table(csv, sweep, idx);
    }

    double best = 0.0;
    for (const auto& s : superior) best = std::max(best, s.score);
    const std::size_t failures = sweep.failures();
    out << "source " << src.description << '\n'
        << "domain " << domain.describe() << (cfg.sparse_k > 0 ? ", k = " + std::to_string(cfg.sparse_k) : "") << '\n'
        << "grid points " << sweep.entries.size() << " (s = " << cfg.grid_s << ")\n"
        << "failures " << failures << '\n'
        << "max aggregate " << format_double(best) << '\n'
        << "superior set " << superior.size() << " (eta = " << format_double(cfg.eta) << ")\n"
        << "dominance violations " << doc["non_domination_violations"].size() << '\n'
        << "support sizes";
    for (const auto& [size, freq] : support_histogram(sweep)) out << ' ' << size << ':' << format_double(freq);
    out << '\n';
    for (const auto& e : sweep.entries) {
        if (!e.ok()) out << "failed at lambda " << lambda_text(e.lambda) << ": " << e.error << '\n';
    }
    out << "wrote " << (dir / "sweep.json").string() << ", sweep.csv, superior.csv\n";
    return failures == 0 ? kSuccess : kPartialFailure;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
    const auto raw = synthesize_returns({cfg.synth_n, cfg.synth_m, cfg.seed});
    const auto path = output_path(cfg, "returns.csv");
    {
        auto csv = open_output(path);
        write_returns_csv(csv, raw);
    }
    double max_skew = 0.0;
    for (int i = 0; i < raw.assets(); ++i) max_skew = std::max(max_skew, std::abs(sample_skewness(raw, i)));
    out << "n = " << raw.assets() << ", m = " << raw.samples() << ", seed = " << cfg.seed << '\n'
        << "max |skewness| " << format_double(max_skew) << '\n'
        << "wrote " << path.string() << '\n';
    return kSuccess;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
    if (cfg.sweep_path.empty()) throw Error("report needs --sweep");
    std::ifstream in(cfg.sweep_path);
    if (!in) throw Error("cannot open sweep file '" + cfg.sweep_path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error("sweep file '" + cfg.sweep_path + "' is not valid JSON: " + e.what());
    }
    const auto& results = doc.at("results");

    std::vector<std::size_t> rows;
    if (cfg.select.empty()) {
        for (const auto& s : doc.at("superior_set")) rows.push_back(s.at("index").get<std::size_t>());
    } else {
        for (const auto& text : cfg.select) {
            const LambdaPoint want = parse_lambda(text);
            bool found = false;
            for (std::size_t i = 0; i < results.size() && !found; ++i) {
                const auto& l = results[i].at("lambda");
                bool same = true;
                for (int k = 0; k < 4; ++k) same = same && std::abs(l[k].get<double>() - want[k]) <= 1e-12;
                if (same) {
                    rows.push_back(i);
                    found = true;
                }
            }
            if (!found) throw DomainError("lambda " + text + " is not a grid point of the sweep");
        }
    }

    const auto path = output_path(cfg, "table.csv");
    {
        auto csv = open_output(path);
        csv << kTradeOffHeader << '\n';
        for (std::size_t i : rows) {
            const auto& r = results[i];
            if (r.at("scaled").is_null()) continue;
            for (int k = 0; k < 4; ++k) csv << format_double(r["lambda"][k].get<double>()) << ',';
            for (int k = 0; k < 4; ++k) csv << format_double(r["scaled"][k].get<double>()) << ',';
            csv << r.at("support_size").get<int>() << '\n';
        }
    }
    const auto& meta = doc.at("meta");
    out << "sweep " << cfg.sweep_path << '\n'
        << "domain " << meta.at("domain").get<std::string>() << ", s = " << meta.at("s").get<int>() << '\n'
        << "results " << results.size() << ", failures " << meta.at("failures").get<std::size_t>() << '\n'
        << "superior set " << doc.at("superior_set").size() << '\n'
        << "dominance violations " << doc.at("non_domination_violations").size() << '\n'
        << "support sizes";
    for (const auto& [size, freq] : doc.at("support_histogram").items()) {
        out << ' ' << size << ':' << format_double(freq.get<double>());
    }
    out << '\n' << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
    return kSuccess;
}

void add_source(CLI::App* app, RunConfig& cfg) {
    auto* data = app->add_option("--data", cfg.data_path, "Returns CSV (one asset per row)");
    app->add_flag("--prices", cfg.prices, "Read --data as prices and convert to returns");
    app->add_option("--model", cfg.model_path, "Moment model JSON written by `moments`")->excludes(data);
    app->add_option("--seed", cfg.seed, "Seed of the synthetic sample used when no data is given");
    app->add_option("--n", cfg.synth_n, "Assets of the synthetic sample")->check(CLI::Range(1, kMaxAssets));
    app->add_option("--m", cfg.synth_m, "Samples of the synthetic sample")->check(CLI::PositiveNumber);
}

void add_domain(CLI::App* app, RunConfig& cfg) {
    auto* simplex = app->add_flag("--simplex", cfg.simplex, "Long-only budget domain (default)");
    app->add_option("--cube", cfg.cube, "Box domain [-B, B]^n")->check(CLI::PositiveNumber)->excludes(simplex);
}

void add_output(CLI::App* app, RunConfig& cfg, bool single_file) {
    app->add_option("--out-dir", cfg.out_dir, "Output directory");
    if (single_file) app->add_option("--out", cfg.out_path, "Output file (overrides --out-dir)");
}

void add_sparse(CLI::App* app, RunConfig& cfg) {
    app->add_option("--sparse-k,--max-support", cfg.sparse_k, "Maximum support size")->check(CLI::NonNegativeNumber);
    app->add_flag("--no-support-heuristic", cfg.no_support_heuristic, "Search faces outside the dense support");
    app->add_flag("--no-proximity-heuristic", cfg.no_proximity_heuristic, "Solve every candidate face");
    app->add_option("--proximity-count", cfg.proximity_count, "Faces kept by the proximity heuristic (0 = n)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--forbidden-pairs", cfg.forbidden_pairs, "Asset pairs never held together: 0:1,2:5 or a file of i,j lines");
    app->add_option("--correlation-threshold", cfg.correlation_threshold,
                    "Forbid every pair with |correlation| at or above this value");
}

// Splices the `key = value` lines of a --config file into the argument list
// right after the subcommand name, ahead of the explicit flags. Blank lines,
// '#' comments and [section] headers are skipped; `key = false` drops a flag.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;

    std::ifstream in(path);
    if (!in) throw Error("cannot open config file '" + path + "'");
    std::vector<std::string> injected;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected key = value", path);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        std::replace(key.begin(), key.end(), '_', '-');
        if (value == "true") {
            injected.push_back("--" + key);
        } else if (value != "false") {
            injected.push_back("--" + key);
            injected.push_back(value);
        }
    }
    const auto sub = std::find_if(rest.begin(), rest.end(), [](const std::string& a) { return !a.starts_with("-"); });
    const auto at = sub == rest.end() ? rest.begin() : std::next(sub);
    rest.insert(at, injected.begin(), injected.end());
    return rest;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Pareto fronts of mean-variance-skewness-kurtosis portfolios", "mvsk"};
    app.require_subcommand(1);

    // Options read from --config come first, so the last value given wins.
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    auto with_config = [](CLI::App* sub) {
        sub->add_option("--config", "Read options from a key = value file (flags given later override it)");
        return sub;
    };

    auto* moments = with_config(app.add_subcommand("moments", "Estimate the moment model of a returns file"));
    moments->add_option("--data", cfg.data_path, "Returns CSV (one asset per row)")->required();
    moments->add_flag("--prices", cfg.prices, "Read --data as prices and convert to returns");
    moments->add_option("--cube", cfg.cube, "Also report cube bounds for this B")->check(CLI::PositiveNumber);
    add_output(moments, cfg, true);

    auto* classify = with_config(app.add_subcommand("classify", "Convexity certificate of one lambda"));
    add_source(classify, cfg);
    add_domain(classify, cfg);
    classify->add_option("--lambda", cfg.lambda, "Scalarization weights a,b,c,d (normalized)");
    classify->add_option("--volume-resolution", cfg.volume_resolution, "Also estimate region volumes on this grid")
        ->check(CLI::NonNegativeNumber);

    auto* solve_cmd = with_config(app.add_subcommand("solve", "Minimize one scalarization"));
    auto* sparse_cmd = with_config(app.add_subcommand("solve-sparse", "Minimize one scalarization with |supp| <= k"));
    for (auto* sub : {solve_cmd, sparse_cmd}) {
        add_source(sub, cfg);
        add_domain(sub, cfg);
        add_output(sub, cfg, true);
        sub->add_option("--lambda", cfg.lambda, "Scalarization weights a,b,c,d (normalized)");
        sub->add_option("--max-iter", cfg.max_iter, "Iteration budget")->check(CLI::PositiveNumber);
    }
    add_sparse(sparse_cmd, cfg);

    auto* sweep = with_config(app.add_subcommand("sweep", "Solve every point of a lambda grid"));
    add_source(sweep, cfg);
    add_domain(sweep, cfg);
    add_output(sweep, cfg, false);
    add_sparse(sweep, cfg);
    sweep->add_option("--grid-s", cfg.grid_s, "Grid subdivision s")->check(CLI::PositiveNumber);
    sweep->add_option("--eta", cfg.eta, "Superior-set tolerance in (0, 1)");
    sweep->add_option("--max-iter", cfg.max_iter, "Iteration budget per lambda")->check(CLI::PositiveNumber);
    sweep->add_option("--jobs", cfg.jobs, "Concurrent slices")->check(CLI::PositiveNumber);
    sweep->add_flag("--no-lambda1-filter", cfg.no_lambda1_filter, "Keep grid points with lambda1 = 0");

    auto* synth = with_config(app.add_subcommand("synth", "Write a synthetic returns CSV"));
    synth->add_option("--seed", cfg.seed, "Generator seed");
    synth->add_option("--n", cfg.synth_n, "Assets")->check(CLI::Range(1, kMaxAssets));
    synth->add_option("--m", cfg.synth_m, "Samples")->check(CLI::Range(2, 100'000'000));
    add_output(synth, cfg, true);

    auto* report = with_config(app.add_subcommand("report", "Trade-off table from a sweep JSON"));
    report->add_option("--sweep", cfg.sweep_path, "Sweep JSON written by `sweep`")->required();
    report->add_option("--select", cfg.select, "Grid lambda a,b,c,d to tabulate (repeatable); default: superior set")
        ->delimiter(';')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    add_output(report, cfg, true);

    try {
        const auto expanded = expand_config(args);
        std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageOrIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrIo;
    }

    try {
        if (*moments) return cmd_moments(cfg, out);
        if (*classify) return cmd_classify(cfg, out);
        if (*solve_cmd) return cmd_solve(cfg, out, false);
        if (*sparse_cmd) return cmd_solve(cfg, out, true);
        if (*sweep) return cmd_sweep(cfg, out);
        if (*synth) return cmd_synth(cfg, out);
        if (*report) return cmd_report(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrIo;
    }
    return kUsageOrIo;
}

} // namespace mvsk::cli
