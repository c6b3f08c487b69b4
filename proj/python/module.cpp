// Python bindings for the main operations. Instances travel as JSON strings
// (the same schema the CLI reads); schedules as {arc: "num/den"} dicts; all
// values come back as exact rational strings plus float conveniences.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;
using namespace flowsched;

namespace {

Instance parse_instance(const std::string& text) { return instance_from_json(text); }

Schedule schedule_from_dict(const std::map<std::string, std::string>& starts) {
    Schedule s;
    for (const auto& [arc, t] : starts) s.starts[arc] = Rational::parse(t);
    return s;
}

std::map<std::string, std::string> schedule_to_dict(const Schedule& s) {
    std::map<std::string, std::string> out;
    for (const auto& [arc, t] : s.starts) out[arc] = t.str();
    return out;
}

Discretization pick_grid(const Instance& inst, const std::string& selector) {
    if (selector == "rd") return release_deadline_grid(inst);
    if (selector == "unit") return unit_grid(inst);
    if (selector == "conformal")
        return conformal_closure(inst, release_deadline_grid(inst), 10000);
    return grid_from_json(selector, inst.horizon);  // JSON array of rationals
}

milp::MilpLimits limits_of(std::optional<long> nodes, std::optional<double> seconds) {
    milp::MilpLimits limits;
    limits.max_nodes = nodes;
    limits.time_seconds = seconds;
    return limits;
}

py::dict result_dict(const milp::MilpResult& r) {
    py::dict d;
    d["status"] = milp::to_string(r.status);
    d["nodes"] = r.node_count;
    if (r.incumbent_value) {
        d["value"] = r.incumbent_value->str();
        d["value_float"] = r.incumbent_value->to_double();
    }
    if (r.best_bound) {
        d["bound"] = r.best_bound->str();
        d["bound_float"] = r.best_bound->to_double();
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_flowsched, m) {
    m.doc() = "exact evaluation, bounds and heuristics for arc-maintenance flow scheduling";

    m.def("validate_instance", [](const std::string& text) {
        // surface violations instead of throwing so callers can inspect them
        try {
            parse_instance(text);
            return std::vector<std::string>{};
        } catch (const std::exception& e) {
            return std::vector<std::string>{e.what()};
        }
    }, py::arg("instance_json"));

    m.def("generate_instance", [](std::uint64_t seed, int nodes, int arcs, int jobs, long horizon,
                                  int storage) {
        GeneratorParams params;
        params.num_nodes = nodes;
        params.num_arcs = arcs;
        params.num_jobs = jobs;
        params.horizon = horizon;
        params.num_storage = storage;
        return instance_to_json(generate_instance(seed, params));
    }, py::arg("seed"), py::arg("nodes") = 4, py::arg("arcs") = 5, py::arg("jobs") = 2,
       py::arg("horizon") = 10, py::arg("storage") = 0);

    m.def("is_feasible", [](const std::string& inst_json,
                            const std::map<std::string, std::string>& starts) {
        return is_feasible(parse_instance(inst_json), schedule_from_dict(starts));
    }, py::arg("instance_json"), py::arg("starts"));

    m.def("evaluate", [](const std::string& inst_json,
                         const std::map<std::string, std::string>& starts) {
        const auto inst = parse_instance(inst_json);
        const auto value = evaluate_schedule(inst, schedule_from_dict(starts)).value;
        py::dict d;
        d["value"] = value.str();
        d["value_float"] = value.to_double();
        return d;
    }, py::arg("instance_json"), py::arg("starts"));

    m.def("solve_exact", [](const std::string& inst_json, long budget) {
        const auto r = exact::exact_search_no_storage(parse_instance(inst_json), budget);
        py::dict d;
        d["value"] = r.value.str();
        d["value_float"] = r.value.to_double();
        d["starts"] = schedule_to_dict(r.schedule);
        return d;
    }, py::arg("instance_json"), py::arg("budget") = 1000000);

    m.def("grid_oracle", [](const std::string& inst_json, const std::string& step, long budget) {
        const auto r = exact::grid_oracle(parse_instance(inst_json), Rational::parse(step), budget);
        py::dict d;
        d["value"] = r.value.str();
        d["starts"] = schedule_to_dict(r.schedule);
        return d;
    }, py::arg("instance_json"), py::arg("step") = "1", py::arg("budget") = 1000000);

    m.def("solve_ctip", [](const std::string& inst_json, std::optional<long> node_limit,
                           std::optional<double> time_limit, const std::string& warm) {
        const auto inst = parse_instance(inst_json);
        const auto model = models::build_ctip(inst);
        std::optional<std::vector<Rational>> start;
        if (warm == "midpoint")
            start = models::embed_schedule_ctip(model, inst, models::midpoint_schedule(inst));
        else if (warm == "oracle")
            start = models::embed_schedule_ctip(
                model, inst, exact::grid_oracle(inst, Rational(1, 2)).schedule);
        const auto r = milp::solve_milp(model, limits_of(node_limit, time_limit), {}, start);
        py::dict d = result_dict(r);
        if (r.incumbent)
            d["starts"] = schedule_to_dict(models::extract_schedule_ctip(model, inst, *r.incumbent));
        return d;
    }, py::arg("instance_json"), py::arg("node_limit") = std::nullopt,
       py::arg("time_limit") = std::nullopt, py::arg("warm") = "midpoint");

    m.def("bound_ub", [](const std::string& inst_json, const std::string& grid,
                         std::optional<long> node_limit, std::optional<double> time_limit) {
        const auto inst = parse_instance(inst_json);
        const auto g = pick_grid(inst, grid);
        const auto model = models::build_tdip(inst, g);
        const auto lp = milp::solve_lp(model);
        const auto mip = milp::solve_milp(model, limits_of(node_limit, time_limit));
        py::dict d = result_dict(mip);
        if (lp.incumbent_value) d["lp_bound"] = lp.incumbent_value->str();
        return d;
    }, py::arg("instance_json"), py::arg("grid") = "rd", py::arg("node_limit") = std::nullopt,
       py::arg("time_limit") = std::nullopt);

    m.def("bound_lb", [](const std::string& inst_json, const std::string& grid,
                         std::optional<long> node_limit, std::optional<double> time_limit) {
        const auto inst = parse_instance(inst_json);
        const auto g = pick_grid(inst, grid);
        const auto model = models::build_tdip_lb(inst, g);
        const auto r = milp::solve_milp(model, limits_of(node_limit, time_limit));
        py::dict d = result_dict(r);
        if (r.incumbent)
            d["starts"] =
                schedule_to_dict(models::extract_schedule_tdip_lb(model, inst, g, *r.incumbent));
        return d;
    }, py::arg("instance_json"), py::arg("grid") = "unit", py::arg("node_limit") = std::nullopt,
       py::arg("time_limit") = std::nullopt);

    m.def("heuristics", [](const std::string& inst_json, const std::string& grid,
                           std::optional<long> snapshot_nodes, std::optional<long> node_limit) {
        const auto inst = parse_instance(inst_json);
        heur::PipelineConfig config;
        config.snapshot_nodes = snapshot_nodes;
        config.node_limit = node_limit;
        const auto result = heur::heuristic_pipeline(inst, pick_grid(inst, grid), config);
        py::list runs;
        for (const auto& run : result.runs) {
            py::dict d;
            d["label"] = run.label;
            d["source"] = run.source;
            if (run.value) d["value"] = run.value->str();
            if (run.schedule) d["starts"] = schedule_to_dict(*run.schedule);
            if (run.error) d["error"] = *run.error;
            runs.append(d);
        }
        py::dict out;
        out["runs"] = runs;
        if (result.best_value) out["max_of_all"] = result.best_value->str();
        return out;
    }, py::arg("instance_json"), py::arg("grid") = "rd", py::arg("snapshot_nodes") = std::nullopt,
       py::arg("node_limit") = std::nullopt);

    m.def("export_model", [](const std::string& inst_json, const std::string& kind,
                             const std::string& grid, const std::string& format) {
        const auto inst = parse_instance(inst_json);
        milp::MilpModel model;
        if (kind == "ctip")
            model = models::build_ctip(inst);
        else if (kind == "tdip")
            model = models::build_tdip(inst, pick_grid(inst, grid));
        else if (kind == "tdip-lb")
            model = models::build_tdip_lb(inst, pick_grid(inst, grid));
        else
            throw std::invalid_argument("kind must be ctip | tdip | tdip-lb");
        return milp::write_model(model,
                                 format == "mps" ? milp::ExportFormat::Mps : milp::ExportFormat::Lp);
    }, py::arg("instance_json"), py::arg("kind") = "ctip", py::arg("grid") = "rd",
       py::arg("format") = "lp");

    m.def("gap_upper", [](const std::string& ub, const std::string& lb) {
        return bench::gap_upper(Rational::parse(ub), Rational::parse(lb)).to_double();
    });
    m.def("gap_lower", [](const std::string& ub, const std::string& lb) {
        return bench::gap_lower(Rational::parse(ub), Rational::parse(lb)).to_double();
    });
    m.def("shifted_geomean", &bench::shifted_geomean, py::arg("values"), py::arg("shift") = 1.0);
}
