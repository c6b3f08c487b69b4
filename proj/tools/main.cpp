// Command-line surface: generate, validate, evaluate, solve and bound
// instances, run the repair heuristics, and batch-benchmark a directory.
#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "flowsched/bench/bench.hpp"
#include "flowsched/evaluator.hpp"
#include "flowsched/exact/search.hpp"
#include "flowsched/generator.hpp"
#include "flowsched/heuristics/heuristics.hpp"
#include "flowsched/instance_io.hpp"
#include "flowsched/milp/solver.hpp"
#include "flowsched/milp/writer.hpp"
#include "flowsched/models/ctip.hpp"
#include "flowsched/models/tdip.hpp"
#include "flowsched/timegrid.hpp"

using namespace flowsched;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Discretization select_grid(const Instance& inst, const std::string& selector, int budget) {
    if (selector == "rd") return release_deadline_grid(inst);
    if (selector == "unit") return unit_grid(inst);
    if (selector == "conformal") return conformal_closure(inst, release_deadline_grid(inst), budget);
    std::ifstream in(selector);
    if (!in) throw CliError("grid file '" + selector + "' does not exist");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return grid_from_json(text, inst.horizon);
}

milp::MilpLimits make_limits(double time_limit, long node_limit) {
    milp::MilpLimits limits;
    if (time_limit > 0) limits.time_seconds = time_limit;
    if (node_limit > 0) limits.max_nodes = node_limit;
    return limits;
}

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw CliError("cannot write '" + out_path + "'");
    out << text;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run(int argc, char** argv) {
    CLI::App app{"maintenance-aware max total flow over time: exact solvers, bounds, heuristics"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write a random instance");
    std::uint64_t seed = 1;
    GeneratorParams params;
    std::string out_path;
    gen->add_option("--seed", seed);
    gen->add_option("--nodes", params.num_nodes);
    gen->add_option("--arcs", params.num_arcs);
    gen->add_option("--jobs", params.num_jobs);
    gen->add_option("--cap-min", params.cap_min);
    gen->add_option("--cap-max", params.cap_max);
    gen->add_option("--window-min", params.window_min);
    gen->add_option("--window-max", params.window_max);
    gen->add_option("--proc-min", params.proc_min);
    gen->add_option("--proc-max", params.proc_max);
    gen->add_option("--horizon", params.horizon);
    gen->add_option("--storage", params.num_storage);
    gen->add_option("--storage-cap-min", params.storage_cap_min);
    gen->add_option("--storage-cap-max", params.storage_cap_max);
    gen->add_option("--out", out_path);

    // validate
    auto* val = app.add_subcommand("validate", "check instance invariants");
    std::string val_path;
    val->add_option("instance", val_path)->required();

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "exact value of a schedule");
    std::string eval_inst, eval_sched;
    bool eval_full = false;
    eval->add_option("instance", eval_inst)->required();
    eval->add_option("schedule", eval_sched)->required();
    eval->add_flag("--flows", eval_full, "print the full flow solution JSON");

    // solve-exact
    auto* sx = app.add_subcommand("solve-exact", "exhaustive no-storage optimum");
    std::string sx_inst, sx_out;
    long sx_budget = 1000000;
    sx->add_option("instance", sx_inst)->required();
    sx->add_option("--budget", sx_budget);
    sx->add_option("--out", sx_out);

    // oracle
    auto* go = app.add_subcommand("oracle", "brute-force start grid search");
    std::string go_inst, go_out, go_step = "1";
    long go_budget = 1000000;
    go->add_option("instance", go_inst)->required();
    go->add_option("--step", go_step);
    go->add_option("--budget", go_budget);
    go->add_option("--out", go_out);

    // solve-ctip
    auto* ct = app.add_subcommand("solve-ctip", "exact continuous-time model");
    std::string ct_inst, ct_out, ct_warm = "midpoint", ct_export;
    double ct_time = 0;
    long ct_nodes = 0;
    ct->add_option("instance", ct_inst)->required();
    ct->add_option("--time-limit", ct_time, "seconds");
    ct->add_option("--node-limit", ct_nodes);
    ct->add_option("--warm-start", ct_warm, "midpoint | oracle | none | schedule file");
    ct->add_option("--export", ct_export, "write the model (.lp or .mps) and exit");
    ct->add_option("--out", ct_out);

    // bound-ub
    auto* ub = app.add_subcommand("bound-ub", "discretized upper-bound model");
    std::string ub_inst, ub_grid = "rd", ub_export;
    double ub_time = 0;
    long ub_nodes = 0;
    int ub_budget = 10000;
    ub->add_option("instance", ub_inst)->required();
    ub->add_option("--grid", ub_grid, "rd | unit | conformal | grid file");
    ub->add_option("--time-limit", ub_time);
    ub->add_option("--node-limit", ub_nodes);
    ub->add_option("--budget", ub_budget, "conformal closure point budget");
    ub->add_option("--export", ub_export);

    // bound-lb
    auto* lb = app.add_subcommand("bound-lb", "conformal lower-bound model");
    std::string lb_inst, lb_grid = "unit", lb_out;
    double lb_time = 0;
    long lb_nodes = 0;
    int lb_budget = 10000;
    lb->add_option("instance", lb_inst)->required();
    lb->add_option("--grid", lb_grid);
    lb->add_option("--time-limit", lb_time);
    lb->add_option("--node-limit", lb_nodes);
    lb->add_option("--budget", lb_budget);
    lb->add_option("--out", lb_out);

    // heur
    auto* he = app.add_subcommand("heur", "repair-heuristic pipeline");
    std::string he_inst, he_grid = "rd", he_out;
    double he_tau = 0, he_time = 0;
    long he_tau_nodes = 0, he_nodes = 0;
    he->add_option("instance", he_inst)->required();
    he->add_option("--grid", he_grid);
    he->add_option("--snapshots", he_tau, "snapshot time tau in seconds");
    he->add_option("--snapshot-nodes", he_tau_nodes, "snapshot after this many nodes");
    he->add_option("--time-limit", he_time);
    he->add_option("--node-limit", he_nodes);
    he->add_option("--out", he_out, "write the runs as CSV");

    // bench
    auto* be = app.add_subcommand("bench", "batch bounds over an instance directory");
    std::string be_dir, be_out = ".";
    double be_time = 0;
    long be_nodes = 2000;
    be->add_option("dir", be_dir)->required();
    be->add_option("--out", be_out);
    be->add_option("--time-limit", be_time);
    be->add_option("--node-limit", be_nodes);

    CLI11_PARSE(app, argc, argv);

    if (*gen) {
        const auto inst = generate_instance(seed, params);
        write_or_print(instance_to_json(inst), out_path);
        return 0;
    }

    if (*val) {
        Instance inst;
        try {
            inst = load_instance(val_path);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
        std::cout << "ok: " << inst.network.nodes.size() << " nodes, "
                  << inst.network.arcs.size() << " arcs, " << inst.jobs.size() << " jobs\n";
        return 0;
    }

    if (*eval) {
        const auto inst = load_instance(eval_inst);
        const auto sched = load_schedule(eval_sched);
        if (!is_feasible(inst, sched)) throw CliError("schedule is infeasible for the instance");
        const auto sol = evaluate_schedule(inst, sched);
        if (eval_full)
            std::cout << flow_solution_to_json(sol);
        else
            std::cout << sol.value.str() << "\n";
        return 0;
    }

    if (*sx) {
        const auto inst = load_instance(sx_inst);
        const auto r = exact::exact_search_no_storage(inst, sx_budget);
        std::cout << r.value.str() << "\n";
        if (!sx_out.empty()) save_schedule(r.schedule, sx_out);
        return 0;
    }

    if (*go) {
        const auto inst = load_instance(go_inst);
        const auto r = exact::grid_oracle(inst, Rational::parse(go_step), go_budget);
        std::cout << r.value.str() << "\n";
        if (!go_out.empty()) save_schedule(r.schedule, go_out);
        return 0;
    }

    if (*ct) {
        const auto inst = load_instance(ct_inst);
        const auto model = models::build_ctip(inst);
        if (!ct_export.empty()) {
            const bool mps = ct_export.size() > 4 && ct_export.substr(ct_export.size() - 4) == ".mps";
            milp::export_model(model, mps ? milp::ExportFormat::Mps : milp::ExportFormat::Lp,
                               ct_export);
            return 0;
        }
        std::optional<std::vector<Rational>> warm;
        if (ct_warm == "midpoint") {
            warm = models::embed_schedule_ctip(model, inst, models::midpoint_schedule(inst));
        } else if (ct_warm == "oracle") {
            const auto r = exact::grid_oracle(inst, Rational(1, 2));
            warm = models::embed_schedule_ctip(model, inst, r.schedule);
        } else if (ct_warm != "none") {
            warm = models::embed_schedule_ctip(model, inst, load_schedule(ct_warm));
        }
        const auto r = milp::solve_milp(model, make_limits(ct_time, ct_nodes), {}, warm);
        std::cout << "status: " << milp::to_string(r.status) << "\n";
        if (r.incumbent_value) std::cout << "value: " << r.incumbent_value->str() << "\n";
        if (r.best_bound) std::cout << "bound: " << r.best_bound->str() << "\n";
        std::cout << "nodes: " << r.node_count << "\n";
        if (r.incumbent) {
            const auto sched = models::extract_schedule_ctip(model, inst, *r.incumbent);
            if (!ct_out.empty())
                save_schedule(sched, ct_out);
            else
                std::cout << schedule_to_json(sched);
        }
        return 0;
    }

    if (*ub) {
        const auto inst = load_instance(ub_inst);
        const auto grid = select_grid(inst, ub_grid, ub_budget);
        const auto model = models::build_tdip(inst, grid);
        if (!ub_export.empty()) {
            const bool mps = ub_export.size() > 4 && ub_export.substr(ub_export.size() - 4) == ".mps";
            milp::export_model(model, mps ? milp::ExportFormat::Mps : milp::ExportFormat::Lp,
                               ub_export);
            return 0;
        }
        const auto lp = milp::solve_lp(model);
        std::cout << "lp-bound: "
                  << (lp.incumbent_value ? lp.incumbent_value->str() : milp::to_string(lp.status))
                  << "\n";
        std::optional<std::vector<Rational>> warm;
        if (!inst.jobs.empty()) {
            const auto start = models::embed_schedule_tdip(model, inst, grid,
                                                           models::midpoint_schedule(inst));
            if (milp::check_start(model, start).empty()) warm = start;
        }
        const auto r = milp::solve_milp(model, make_limits(ub_time, ub_nodes), {}, warm);
        std::cout << "status: " << milp::to_string(r.status) << "\n";
        if (r.best_bound) std::cout << "mip-bound: " << r.best_bound->str() << "\n";
        if (r.incumbent_value)
            std::cout << "relaxation-incumbent: " << r.incumbent_value->str() << "\n";
        std::cout << "nodes: " << r.node_count << "\n";
        return 0;
    }

    if (*lb) {
        const auto inst = load_instance(lb_inst);
        const auto grid = select_grid(inst, lb_grid, lb_budget);
        const auto model = models::build_tdip_lb(inst, grid);
        const auto r = milp::solve_milp(model, make_limits(lb_time, lb_nodes));
        std::cout << "status: " << milp::to_string(r.status) << "\n";
        if (r.incumbent_value) std::cout << "value: " << r.incumbent_value->str() << "\n";
        if (r.status == milp::SolveStatus::Optimal && !inst.has_storage() &&
            inst.integer_data() && lb_grid == "unit")
            std::cout << "note: unit-grid value is the exact optimum for integer data without "
                         "storage\n";
        if (r.incumbent) {
            const auto sched = models::extract_schedule_tdip_lb(model, inst, grid, *r.incumbent);
            if (!lb_out.empty())
                save_schedule(sched, lb_out);
            else
                std::cout << schedule_to_json(sched);
        }
        return 0;
    }

    if (*he) {
        const auto inst = load_instance(he_inst);
        const auto grid = select_grid(inst, he_grid, 10000);
        heur::PipelineConfig config;
        if (he_tau > 0) config.snapshot_seconds = he_tau;
        if (he_tau_nodes > 0) config.snapshot_nodes = he_tau_nodes;
        if (he_time > 0) config.time_limit = he_time;
        if (he_nodes > 0) config.node_limit = he_nodes;
        const auto result = heur::heuristic_pipeline(inst, grid, config);
        std::ostringstream csv;
        csv << "label,source,value,error\n";
        for (const auto& run : result.runs)
            csv << run.label << "," << run.source << ","
                << (run.value ? run.value->str() : "") << ","
                << (run.error ? *run.error : "") << "\n";
        csv << "MaxOfAll,," << (result.best_value ? result.best_value->str() : "") << ",\n";
        write_or_print(csv.str(), he_out);
        return 0;
    }

    if (*be) {
        namespace fs = std::filesystem;
        std::vector<std::string> paths;
        for (const auto& entry : fs::directory_iterator(be_dir))
            if (entry.path().extension() == ".json") paths.push_back(entry.path().string());
        std::sort(paths.begin(), paths.end());
        if (paths.empty()) throw CliError("no .json instances in '" + be_dir + "'");

        std::vector<bench::BoundRecord> records;
        for (const auto& path : paths) {
            const auto inst = load_instance(path);
            const std::string id = fs::path(path).stem().string();
            const auto limits = make_limits(be_time, be_nodes);

            const auto rd = release_deadline_grid(inst);
            auto timed = [&](auto&& fn) {
                const auto t0 = std::chrono::steady_clock::now();
                auto value = fn();
                return std::make_pair(std::move(value), seconds_since(t0));
            };

            {
                const auto model = models::build_tdip(inst, rd);
                auto [lp, secs] = timed([&] { return milp::solve_lp(model); });
                if (lp.incumbent_value)
                    records.push_back({id, "LP-TDIP(RD)", bench::BoundKind::Upper,
                                       *lp.incumbent_value, secs, milp::to_string(lp.status)});
                auto [mip, secs2] = timed([&] { return milp::solve_milp(model, limits); });
                if (mip.best_bound)
                    records.push_back({id, "UB-TDIP(RD)", bench::BoundKind::Upper,
                                       *mip.best_bound, secs2, milp::to_string(mip.status)});
            }
            if (inst.integer_data()) {
                const auto unit = unit_grid(inst);
                const auto model = models::build_tdip(inst, unit);
                auto [lp, secs] = timed([&] { return milp::solve_lp(model); });
                if (lp.incumbent_value)
                    records.push_back({id, "LP-TDIP(TI)", bench::BoundKind::Upper,
                                       *lp.incumbent_value, secs, milp::to_string(lp.status)});
                auto [mip, secs2] = timed([&] { return milp::solve_milp(model, limits); });
                if (mip.best_bound)
                    records.push_back({id, "UB-TDIP(TI)", bench::BoundKind::Upper,
                                       *mip.best_bound, secs2, milp::to_string(mip.status)});
                auto [lbres, secs3] =
                    timed([&] { return milp::solve_milp(models::build_tdip_lb(inst, unit), limits); });
                if (lbres.incumbent_value)
                    records.push_back({id, "LB1", bench::BoundKind::Lower, *lbres.incumbent_value,
                                       secs3, milp::to_string(lbres.status)});
            }
            {
                heur::PipelineConfig config;
                config.node_limit = be_nodes;
                config.snapshot_nodes = std::max(1L, be_nodes / 2);
                if (be_time > 0) {
                    config.time_limit = be_time;
                    config.snapshot_seconds = be_time / 2;
                }
                auto [pipe, secs] = timed([&] { return heur::heuristic_pipeline(inst, rd, config); });
                for (const auto& run : pipe.runs)
                    if (run.value)
                        records.push_back({id, run.label, bench::BoundKind::Lower, *run.value,
                                           secs, "heuristic"});
                if (pipe.best_value)
                    records.push_back({id, "MaxOfAll", bench::BoundKind::Lower, *pipe.best_value,
                                       secs, "heuristic"});
            }
        }

        fs::create_directories(be_out);
        bench::write_report(records, bench::ReportFormat::Csv, be_out + "/records.csv");
        bench::write_report(records, bench::ReportFormat::Markdown, be_out + "/records.md");

        // profiles: lower bounds gap to best upper bound, per method
        const auto best_ub = bench::best_upper_bounds(records);
        std::map<std::string, std::vector<Rational>> gaps;
        for (const auto& r : records) {
            if (r.kind != bench::BoundKind::Lower) continue;
            auto it = best_ub.find(r.instance_id);
            if (it == best_ub.end() || r.value <= Rational(0)) continue;
            gaps[r.method].push_back(bench::gap_lower(it->second, r.value));
        }
        if (!gaps.empty()) {
            std::ofstream out(be_out + "/profiles.csv");
            out << bench::render_profiles_csv(bench::performance_profile(gaps));
        }
        std::cout << "wrote " << records.size() << " records for " << paths.size()
                  << " instances to " << be_out << "\n";
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
