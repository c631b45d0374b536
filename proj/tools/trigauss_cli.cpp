// Command-line front end.
//
//   trigauss sweep   --model <opa|aoki|asym> --criteria "DS_MINUS(1,2),..."
//                    [--set key=value ...] [--grid start:stop:step]
//                    [--format csv|json] [--out FILE]
//   trigauss figure  <fig1..fig5> [--format csv|json] [--out FILE]
//   trigauss verify  <opa|aoki|asym> [--grid start:stop:step] [--format text|json]
//                    [--out FILE]
//   trigauss classify --model <opa|aoki|asym> [--set key=value ...]
//                    [--grid start:stop:step] [--format csv|json] [--out FILE]
//
// Exit codes: 0 success, 2 usage error, 3 unsupported parameter regime,
// 4 analytic and propagated covariances disagree beyond the gate.

#include "trigauss/trigauss.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace trigauss;

double parse_number(const std::string& field, std::string_view tok) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw UsageError(field, "expected a number, got '" + std::string(tok) + "'");
    return v;
}

GridSpec parse_grid(const std::string& text) {
    const size_t c1 = text.find(':');
    const size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
        throw UsageError("grid", "expected start:stop:step, got '" + text + "'");
    GridSpec g;
    g.start = parse_number("grid", std::string_view(text).substr(0, c1));
    g.stop = parse_number("grid", std::string_view(text).substr(c1 + 1, c2 - c1 - 1));
    g.step = parse_number("grid", std::string_view(text).substr(c2 + 1));
    return g;
}

void apply_sets(ModelParams& params, const std::vector<std::string>& sets) {
    for (const std::string& kv : sets) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("set", "expected key=value, got '" + kv + "'");
        set_model_field(params, kv.substr(0, eq),
                        parse_number("set", std::string_view(kv).substr(eq + 1)));
    }
}

int with_output(const std::string& path, const std::function<void(std::ostream&)>& emit) {
    if (path.empty()) {
        emit(std::cout);
        return 0;
    }
    std::ofstream ofs(path, std::ios::binary);
    if (!ofs) throw UsageError("out", "cannot open '" + path + "' for writing");
    emit(ofs);
    if (!ofs) throw std::runtime_error("short write to '" + path + "'");
    return 0;
}

void print_verify_text(const GridVerifyReport& r, std::ostream& os) {
    os << "model:        " << model_name(r.kind) << '\n'
       << "grid:         " << r.swept_parameter << " = " << r.grid.start << " .. " << r.grid.stop
       << " step " << r.grid.step << " (" << r.points << " points)\n"
       << "max_abs_diff: " << r.max_abs_diff << " (gate " << kOracleGate << ")\n"
       << "pure:         " << (r.pure ? "yes" : "no") << '\n'
       << "physical:     " << (r.physical ? "yes" : "no") << '\n'
       << "result:       " << (r.pass() ? "PASS" : "FAIL") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tripartite Gaussian state toolkit: covariance models, "
                 "entanglement and steering criteria, propagation cross-checks"};
    app.require_subcommand(1);

    std::string model_arg, grid_arg, criteria_arg, format_arg, out_arg;
    std::vector<std::string> set_args;
    std::string figure_arg, verify_model_arg;

    CLI::App* sweep = app.add_subcommand("sweep", "evaluate criteria over a parameter grid");
    sweep->add_option("--model", model_arg, "model name: opa, aoki or asym")->required();
    sweep->add_option("--set", set_args, "fix a model parameter, key=value (repeatable)");
    sweep->add_option("--grid", grid_arg, "swept-parameter grid as start:stop:step");
    sweep->add_option("--criteria", criteria_arg, "comma-separated list, e.g. DS_MINUS(1,2)")
        ->required();
    sweep->add_option("--format", format_arg, "csv (default) or json");
    sweep->add_option("--out", out_arg, "write to file instead of stdout");

    CLI::App* figure = app.add_subcommand("figure", "emit a preset reference curve set");
    figure->add_option("id", figure_arg, "fig1..fig5")->required();
    figure->add_option("--format", format_arg, "csv (default) or json");
    figure->add_option("--out", out_arg, "write to file instead of stdout");

    CLI::App* verify = app.add_subcommand(
        "verify", "compare closed-form covariances against symplectic propagation");
    verify->add_option("model", verify_model_arg, "opa, aoki or asym")->required();
    verify->add_option("--grid", grid_arg, "override the default grid, start:stop:step");
    verify->add_option("--format", format_arg, "text (default, report + json line) or json");
    verify->add_option("--out", out_arg, "write the json report to a file as well");

    CLI::App* classify = app.add_subcommand("classify", "entanglement class per grid point");
    classify->add_option("--model", model_arg, "model name: opa, aoki or asym")->required();
    classify->add_option("--set", set_args, "fix a model parameter, key=value (repeatable)");
    classify->add_option("--grid", grid_arg, "swept-parameter grid as start:stop:step");
    classify->add_option("--format", format_arg, "csv (default) or json");
    classify->add_option("--out", out_arg, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sweep->parsed()) {
            SweepSpec spec;
            spec.kind = parse_model(model_arg);
            spec.params = default_params(spec.kind);
            apply_sets(spec.params, set_args);
            spec.swept_parameter = default_swept_field(spec.kind);
            spec.grid = grid_arg.empty() ? default_grid(spec.kind) : parse_grid(grid_arg);
            spec.criteria = parse_criteria(criteria_arg);
            spec.format = format_arg.empty() ? OutputFormat::CSV : parse_format(format_arg);
            return with_output(out_arg, [&](std::ostream& os) { run_sweep(spec, os); });
        }
        if (figure->parsed()) {
            const FigureId id = parse_figure(figure_arg);
            const OutputFormat fmt =
                format_arg.empty() ? OutputFormat::CSV : parse_format(format_arg);
            return with_output(out_arg, [&](std::ostream& os) { reproduce_figure(id, fmt, os); });
        }
        if (verify->parsed()) {
            const ModelKind kind = parse_model(verify_model_arg);
            GridSpec grid;
            const GridSpec* override_ptr = nullptr;
            if (!grid_arg.empty()) {
                grid = parse_grid(grid_arg);
                override_ptr = &grid;
            }
            bool json_only = false;
            if (!format_arg.empty()) {
                if (format_arg == "json")
                    json_only = true;
                else if (format_arg != "text")
                    throw UsageError("format", "expected text or json, got '" + format_arg + "'");
            }
            const GridVerifyReport rep = verify_grid(kind, override_ptr);
            const std::string json_line = verify_report_json(rep).dump();
            if (!json_only) print_verify_text(rep, std::cout);
            std::cout << json_line << '\n';
            if (!out_arg.empty())
                with_output(out_arg, [&](std::ostream& os) { os << json_line << '\n'; });
            return rep.pass() ? 0 : 4;
        }
        if (classify->parsed()) {
            ClassifySpec spec;
            spec.kind = parse_model(model_arg);
            spec.params = default_params(spec.kind);
            apply_sets(spec.params, set_args);
            spec.swept_parameter = default_swept_field(spec.kind);
            spec.grid = grid_arg.empty() ? default_grid(spec.kind) : parse_grid(grid_arg);
            spec.format = format_arg.empty() ? OutputFormat::CSV : parse_format(format_arg);
            return with_output(out_arg, [&](std::ostream& os) { run_classify(spec, os); });
        }
    } catch (const UsageError& e) {
        std::cerr << "error (" << e.field << "): " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedRegimeError& e) {
        std::cerr << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;  // unreachable given require_subcommand(1)
}
