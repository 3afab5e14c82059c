#include "qlat/cli.hpp"

#include "qlat/bounds.hpp"
#include "qlat/counting.hpp"
#include "qlat/covering.hpp"
#include "qlat/errors.hpp"
#include "qlat/lattice_io.hpp"
#include "qlat/report.hpp"
#include "qlat/search.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <ostream>

namespace qlat::cli {

namespace {

struct Config {
    // Empty: text for binom and alpha, json elsewhere.
    std::string format;
    int workers = 1;
    std::uint64_t seed = 0;
    bool timing = false;
    std::string cache;
    std::uint64_t max_level_size = LatticeOptions{}.max_level_size;
    std::uint64_t max_bases = CoveringOptions{}.max_bases;
    std::uint64_t max_nodes = SearchTask{}.max_nodes;
};

struct LatticeArgs {
    std::optional<int> q;
    std::optional<int> n;
    bool boolean = false;
};

void add_lattice_options(CLI::App* cmd, LatticeArgs& la) {
    cmd->add_option("--q", la.q, "field order (prime power)");
    cmd->add_option("--n", la.n, "dimension or ground set size")->required();
    cmd->add_flag("--boolean", la.boolean, "use the Boolean lattice B_n");
}

LatticeSpec spec_of(const LatticeArgs& la) {
    if (la.boolean == la.q.has_value()) throw UsageError("give exactly one of --q and --boolean");
    return la.boolean ? LatticeSpec::boolean(*la.n) : LatticeSpec::linear(*la.q, *la.n);
}

std::string cache_dir(const Config& cfg) {
    if (!cfg.cache.empty()) return cfg.cache;
    if (const char* env = std::getenv("QLAT_CACHE")) return env;
    return {};
}

struct Acquired {
    Lattice lattice;
    std::optional<std::string> cache_file;
};

Acquired acquire(const LatticeArgs& la, const Config& cfg) {
    const LatticeSpec spec = spec_of(la);
    LatticeOptions options;
    options.max_level_size = cfg.max_level_size;
    const std::string dir = cache_dir(cfg);
    if (dir.empty()) return {Lattice::build(spec, options), std::nullopt};
    const auto path = cache_path(dir, spec);
    if (std::filesystem::exists(path)) {
        Lattice lat = load_lattice(path, options);
        if (!(lat.spec() == spec)) throw FormatError("cache file " + path.string() + " holds a different lattice");
        return {std::move(lat), path.string()};
    }
    Lattice lat = Lattice::build(spec, options);
    std::filesystem::create_directories(dir);
    save_lattice(lat, path);
    return {std::move(lat), path.string()};
}

Json envelope(const std::string& command, const Config& cfg) {
    return Json{{"tool_version", kToolVersion},
                {"command", command},
                {"seed", cfg.seed},
                {"caps",
                 Json{{"max_level_size", cfg.max_level_size},
                      {"max_bases", cfg.max_bases},
                      {"max_nodes", cfg.max_nodes}}}};
}

void attach_lattice(Json& j, const Acquired& a) {
    j["lattice"] = to_json(a.lattice);
    j["cache_file"] = a.cache_file ? Json(*a.cache_file) : Json(nullptr);
}

void require_json(const Config& cfg, const std::string& command) {
    if (cfg.format != "json") throw UsageError(command + " supports --format json only");
}

std::map<std::string, long long> collect_params(const std::map<std::string, std::optional<long long>>& raw) {
    std::map<std::string, long long> out;
    for (const auto& [k, v] : raw) {
        if (v) out[k] = *v;
    }
    return out;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact counting, verification and search on Boolean and subspace lattices", "qlat"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--format", cfg.format, "json, csv (tabular reports) or text (binom, alpha)")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for sampled runs");
    app.add_flag("--timing", cfg.timing, "add runtime_ms to reports");
    app.add_option("--cache", cfg.cache, "lattice cache directory (default $QLAT_CACHE)");
    app.add_option("--max-level-size", cfg.max_level_size, "largest lattice level to enumerate")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-bases", cfg.max_bases, "largest covering family")->check(CLI::PositiveNumber);
    app.add_option("--max-nodes", cfg.max_nodes, "search node budget per branch")->check(CLI::PositiveNumber);

    int bn = 0;
    int bk = 0;
    std::optional<int> bq;
    auto* binom_cmd = app.add_subcommand("binom", "binomial C(n,k), or Gaussian binomial [n,k]_q when q is given");
    binom_cmd->add_option("n", bn)->required();
    binom_cmd->add_option("k", bk)->required();
    binom_cmd->add_option("q", bq);

    int aq = 0;
    int an = 0;
    auto* alpha_cmd = app.add_subcommand("alpha", "number of unordered bases of F_q^n");
    alpha_cmd->add_option("q", aq)->required();
    alpha_cmd->add_option("n", an)->required();

    LatticeArgs lattice_args;
    auto* lattice_cmd = app.add_subcommand("lattice", "build or describe a lattice");
    lattice_cmd->require_subcommand(1);
    auto* lattice_build = lattice_cmd->add_subcommand("build", "enumerate and write to the cache");
    auto* lattice_info = lattice_cmd->add_subcommand("info", "sizes and digest");
    add_lattice_options(lattice_build, lattice_args);
    add_lattice_options(lattice_info, lattice_args);

    auto* verify_cmd = app.add_subcommand("verify", "run checks");
    verify_cmd->require_subcommand(1);
    LatticeArgs verify_lattice;
    auto* covering_cmd = verify_cmd->add_subcommand("covering", "covering family sizes and multiplicities");
    add_lattice_options(covering_cmd, verify_lattice);

    std::uint64_t samples = 1000;
    auto* transfer_cmd = verify_cmd->add_subcommand("transfer", "weight transfer identity on random families");
    add_lattice_options(transfer_cmd, verify_lattice);
    transfer_cmd->add_option("--samples", samples);

    std::string theorem_id;
    std::string scope_name;
    std::optional<int> scope_level;
    std::size_t size_cap = 2;
    std::map<std::string, std::optional<long long>> tparams{{"s", {}}, {"k", {}}, {"l", {}}, {"d", {}}};
    auto* theorem_cmd = verify_cmd->add_subcommand("theorem", "check a theorem's inequality over a family space");
    add_lattice_options(theorem_cmd, verify_lattice);
    theorem_cmd->add_option("--id", theorem_id)->required();
    theorem_cmd->add_option("--scope", scope_name,
                            "exhaustive, antichains, complexes, upsets, level, sample or capped");
    theorem_cmd->add_option("--samples", samples);
    theorem_cmd->add_option("--level", scope_level);
    theorem_cmd->add_option("--size-cap", size_cap);
    for (auto& [key, value] : tparams) theorem_cmd->add_option("--" + key, value);

    std::string bound_id;
    std::string construction_kind;
    bool construct = false;
    bool scan = false;
    std::vector<int> scan_qs{2, 3, 4, 5};
    int scan_max_l = 4;
    int scan_extra_n = 8;
    LatticeArgs bound_lattice;
    std::map<std::string, std::optional<long long>> bparams{{"n", {}}, {"s", {}}, {"k", {}}, {"l", {}},
                                                            {"d", {}}, {"r", {}}, {"value_num", {}},
                                                            {"value_den", {}}};
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate a bound, a construction, or the lemma grid");
    bounds_cmd->add_option("--theorem", bound_id, "theorem id, e.g. T1.13 or L4.9");
    bounds_cmd->add_option("--construction", construction_kind,
                           "middle_levels, top_dims, sperner_star, kleitman_sharp or cross_dependent_sharp");
    bounds_cmd->add_flag("--construct", construct, "attach the sharpness construction");
    bounds_cmd->add_flag("--scan", scan, "with --theorem L4.9: the whole (q, l, k, n) grid");
    bounds_cmd->add_option("--qs", scan_qs)->delimiter(',');
    bounds_cmd->add_option("--max-l", scan_max_l);
    bounds_cmd->add_option("--extra-n", scan_extra_n);
    bounds_cmd->add_option("--q", bound_lattice.q);
    bounds_cmd->add_flag("--boolean", bound_lattice.boolean);
    for (auto& [key, value] : bparams) {
        std::string flag = key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        bounds_cmd->add_option("--" + flag, value);
    }

    auto* search_cmd = app.add_subcommand("search", "extremal family search");
    search_cmd->require_subcommand(1);
    auto* max_cmd = search_cmd->add_subcommand("max", "largest family avoiding a configuration");
    LatticeArgs search_lattice;
    std::string forbid;
    std::string mode = "exact";
    std::optional<std::size_t> prune_bound;
    add_lattice_options(max_cmd, search_lattice);
    max_cmd->add_option("--forbid", forbid, "P<k>, Q2, A<k>, <s>-disjoint, balg<d>, qalg<d>")->required();
    max_cmd->add_option("--mode", mode, "exact, branch_bound or sample");
    max_cmd->add_option("--samples", samples);
    max_cmd->add_option("--prune-bound", prune_bound);

    auto* shadow_cmd = app.add_subcommand("shadow", "shadow bounds");
    shadow_cmd->require_subcommand(1);
    auto* shadow_check = shadow_cmd->add_subcommand("check", "every family of k-dimensional subspaces");
    LatticeArgs shadow_lattice;
    int shadow_k = 0;
    add_lattice_options(shadow_check, shadow_lattice);
    shadow_check->add_option("--k", shadow_k)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitError;
    }

    const auto start = std::chrono::steady_clock::now();
    auto finish = [&](Json j, int code) {
        if (cfg.timing) {
            j["runtime_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                                  .count();
        }
        out << dump_canonical(j);
        return code;
    };

    try {
        if (binom_cmd->parsed()) {
            const BigInt v = bq ? gauss_binom(bn, bk, *bq) : binom(bn, bk);
            if (cfg.format == "json") {
                Json j = envelope("binom", cfg);
                j["params"] = Json{{"n", bn}, {"k", bk}, {"q", bq.value_or(0)}};
                j["value"] = to_json(v);
                return finish(j, kExitOk);
            }
            out << v << "\n";
            return kExitOk;
        }
        if (alpha_cmd->parsed()) {
            const BigInt v = alpha(aq, an);
            if (cfg.format == "json") {
                Json j = envelope("alpha", cfg);
                j["params"] = Json{{"q", aq}, {"n", an}};
                j["value"] = to_json(v);
                return finish(j, kExitOk);
            }
            out << v << "\n";
            return kExitOk;
        }
        if (cfg.format == "text") throw UsageError("--format text applies to binom and alpha only");
        if (cfg.format.empty()) cfg.format = "json";

        if (lattice_cmd->parsed()) {
            require_json(cfg, "lattice");
            const Acquired a = acquire(lattice_args, cfg);
            Json j = envelope(lattice_build->parsed() ? "lattice build" : "lattice info", cfg);
            attach_lattice(j, a);
            return finish(j, kExitOk);
        }

        if (covering_cmd->parsed()) {
            const Acquired a = acquire(verify_lattice, cfg);
            CoveringOptions options;
            options.max_bases = cfg.max_bases;
            options.workers = cfg.workers;
            const CoveringReport r = verify_covering(a.lattice, options);
            const int code = r.ok() ? kExitOk : kExitViolation;
            if (cfg.format == "csv") {
                out << "dim,expected_t,min_observed,max_observed\n";
                for (const auto& l : r.per_level) {
                    out << l.dim << ',' << l.expected_t << ',' << l.min_observed << ',' << l.max_observed << '\n';
                }
                return code;
            }
            Json j = envelope("verify covering", cfg);
            attach_lattice(j, a);
            j["report"] = to_json(r);
            return finish(j, code);
        }

        if (transfer_cmd->parsed()) {
            require_json(cfg, "verify transfer");
            const Acquired a = acquire(verify_lattice, cfg);
            const auto r = verify_transfer_sampled(a.lattice, samples, cfg.seed, cfg.workers, cfg.max_bases);
            Json j = envelope("verify transfer", cfg);
            attach_lattice(j, a);
            j["report"] = to_json(r);
            return finish(j, r.ok() ? kExitOk : kExitViolation);
        }

        if (theorem_cmd->parsed()) {
            require_json(cfg, "verify theorem");
            const Acquired a = acquire(verify_lattice, cfg);
            const auto params = collect_params(tparams);
            Scope scope;
            if (!scope_name.empty()) {
                scope.kind = parse_scope(scope_name);
            } else if (theorem_id == "T4.7") {
                scope.kind = Scope::Kind::level;
            } else if (a.lattice.size() > kMaxExhaustiveElements) {
                scope.kind = Scope::Kind::sample;
            }
            scope.samples = samples;
            scope.seed = cfg.seed;
            scope.size_cap = size_cap;
            if (scope.kind == Scope::Kind::level) {
                if (scope_level) {
                    scope.level = *scope_level;
                } else if (params.count("k")) {
                    scope.level = static_cast<int>(params.at("k"));
                } else {
                    throw UsageError("level scope needs --level or --k");
                }
            }
            const TheoremReport r = verify_theorem(theorem_id, a.lattice, scope, params, cfg.workers);
            Json j = envelope("verify theorem", cfg);
            attach_lattice(j, a);
            j["report"] = to_json(r);
            return finish(j, r.ok() ? kExitOk : kExitViolation);
        }

        if (bounds_cmd->parsed()) {
            auto params = collect_params(bparams);
            if (bound_lattice.q) params["q"] = *bound_lattice.q;
            if (bound_lattice.boolean) params["q"] = 0;
            if (scan) {
                if (bound_id != "L4.9") throw UsageError("--scan applies to --theorem L4.9");
                const auto rows = scan_lemma_4_9(scan_qs, scan_max_l, scan_extra_n);
                const bool all = std::all_of(rows.begin(), rows.end(), [](const LemmaRow& r) { return r.holds; });
                const int code = all ? kExitOk : kExitViolation;
                if (cfg.format == "csv") {
                    out << lemma_grid_csv(rows);
                    return code;
                }
                Json j = envelope("bounds", cfg);
                Json list = Json::array();
                for (const auto& r : rows) list.push_back(to_json(r));
                j["rows"] = list;
                j["all_hold"] = all;
                return finish(j, code);
            }
            require_json(cfg, "bounds");
            std::optional<Lattice> lat;
            auto need_lattice = [&]() -> const Lattice& {
                if (!lat) {
                    LatticeArgs la = bound_lattice;
                    if (!params.count("n")) throw UsageError("constructions need --n");
                    la.n = static_cast<int>(params.at("n"));
                    lat.emplace(acquire(la, cfg).lattice);
                }
                return *lat;
            };
            Json j = envelope("bounds", cfg);
            if (!construction_kind.empty()) {
                const auto fams = make_construction(construction_kind, need_lattice(), params);
                BoundReport r;
                r.theorem_id = construction_kind;
                r.params = params;
                r.construction = fams;
                j["lattice"] = to_json(*lat);
                j["report"] = to_json(r);
                return finish(j, kExitOk);
            }
            if (bound_id.empty()) throw UsageError("bounds needs --theorem, --construction or --scan");
            const BoundReport r = bound_by_id(bound_id, params, construct ? &need_lattice() : nullptr);
            if (lat) j["lattice"] = to_json(*lat);
            j["report"] = to_json(r);
            return finish(j, kExitOk);
        }

        if (max_cmd->parsed()) {
            require_json(cfg, "search max");
            const Acquired a = acquire(search_lattice, cfg);
            SearchTask task;
            task.lattice = &a.lattice;
            task.forbid = parse_forbidden(forbid);
            task.mode = parse_search_mode(mode);
            task.samples = samples;
            task.seed = cfg.seed;
            task.workers = cfg.workers;
            task.max_nodes = cfg.max_nodes;
            task.prune_bound = prune_bound;
            const SearchResult r = max_family(task);
            Json j = envelope("search max", cfg);
            attach_lattice(j, a);
            Json t{{"forbid", forbid}, {"mode", to_string(task.mode)}};
            if (task.mode == SearchMode::sample) t["samples"] = samples;
            t["prune_bound"] = prune_bound ? Json(*prune_bound) : Json(nullptr);
            j["task"] = t;
            j["result"] = to_json(r);
            return finish(j, kExitOk);
        }

        if (shadow_check->parsed()) {
            require_json(cfg, "shadow check");
            const Acquired a = acquire(shadow_lattice, cfg);
            Scope scope;
            scope.kind = Scope::Kind::level;
            scope.level = shadow_k;
            const TheoremReport r = verify_theorem("T4.7", a.lattice, scope, {{"k", shadow_k}}, cfg.workers);
            Json j = envelope("shadow check", cfg);
            attach_lattice(j, a);
            j["report"] = to_json(r);
            return finish(j, r.ok() ? kExitOk : kExitViolation);
        }
        throw UsageError("no command given");
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << " (partial " << e.partial() << ")\n";
        return kExitError;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace qlat::cli
