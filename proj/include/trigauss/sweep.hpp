#pragma once

// Parameter-sweep engine behind the CLI: grid expansion, criterion selection,
// figure presets, oracle verification over grids, classification maps, and
// deterministic CSV / JSON emission.
//
// Number formatting is fixed-point with 12 decimals through std::to_chars, so
// output is locale independent and byte-identical across runs. The emitters
// never recompute anything: every number is a library result passed through.

#include "criteria.hpp"
#include "oracle.hpp"

#include <json.hpp>

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trigauss {

struct UsageError : std::invalid_argument {
    std::string field;  // which part of the request was malformed
    UsageError(std::string field_, const std::string& message)
        : std::invalid_argument(message), field(std::move(field_)) {}
};

inline std::string format_fixed12(double v) {
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::fixed, 12);
    if (res.ec != std::errc())
        throw std::logic_error("format_fixed12: value out of fixed-format range");
    std::string s(buf.data(), res.ptr);
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-')
        s.erase(0, 1);  // a value that rounds to zero prints unsigned
    return s;
}

// start, start+step, ...; stop is included when it lies on the grid to within
// a millionth of a step.
inline std::vector<double> grid_points(const GridSpec& g) {
    if (!std::isfinite(g.start) || !std::isfinite(g.stop) || !std::isfinite(g.step))
        throw UsageError("grid", "grid bounds must be finite");
    if (!(g.step > 0.0)) throw UsageError("grid", "grid step must be positive");
    if (g.stop < g.start) throw UsageError("grid", "grid start must not exceed stop");
    const double count = (g.stop - g.start) / g.step;
    if (count > 1e6) throw UsageError("grid", "grid would have more than 1e6 points");
    const long n = static_cast<long>(std::floor(count + 1e-6));
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) pts.push_back(g.start + static_cast<double>(i) * g.step);
    return pts;
}

// ------------------------------------------------------- criterion requests

struct CriterionRequest {
    CriterionLabel label{};
    std::vector<int> indices;
};

inline const char* criterion_label_name(CriterionLabel l) {
    switch (l) {
        case CriterionLabel::DS_PLUS: return "DS_PLUS";
        case CriterionLabel::DS_MINUS: return "DS_MINUS";
        case CriterionLabel::REID_PAIR: return "REID_PAIR";
        case CriterionLabel::VLF_PAIR: return "VLF_PAIR";
        case CriterionLabel::VLF_SINGLE: return "VLF_SINGLE";
        case CriterionLabel::STEER3_ONE: return "STEER3_ONE";
        case CriterionLabel::STEER3_PAIR: return "STEER3_PAIR";
    }
    throw std::logic_error("unknown criterion label");
}

inline size_t criterion_arity(CriterionLabel l) {
    switch (l) {
        case CriterionLabel::DS_PLUS:
        case CriterionLabel::DS_MINUS:
        case CriterionLabel::REID_PAIR:
        case CriterionLabel::VLF_PAIR: return 2;
        case CriterionLabel::VLF_SINGLE:
        case CriterionLabel::STEER3_ONE:
        case CriterionLabel::STEER3_PAIR: return 1;
    }
    throw std::logic_error("unknown criterion label");
}

inline std::string criterion_name(const CriterionRequest& c) {
    std::string s = criterion_label_name(c.label);
    s += '(';
    for (size_t i = 0; i < c.indices.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c.indices[i]);
    }
    s += ')';
    return s;
}

namespace detail {
inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}
}  // namespace detail

// Accepts e.g. "DS_MINUS(1,2), VLF_SINGLE(3)". REID_PAIR takes
// (steered, steerer); the other two-index criteria take an unordered pair.
inline std::vector<CriterionRequest> parse_criteria(std::string_view text) {
    static const std::pair<std::string_view, CriterionLabel> kNames[] = {
        {"DS_PLUS", CriterionLabel::DS_PLUS},       {"DS_MINUS", CriterionLabel::DS_MINUS},
        {"REID_PAIR", CriterionLabel::REID_PAIR},   {"VLF_PAIR", CriterionLabel::VLF_PAIR},
        {"VLF_SINGLE", CriterionLabel::VLF_SINGLE}, {"STEER3_ONE", CriterionLabel::STEER3_ONE},
        {"STEER3_PAIR", CriterionLabel::STEER3_PAIR},
    };
    std::vector<CriterionRequest> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = pos;
        int depth = 0;
        while (end < text.size() && (text[end] != ',' || depth > 0)) {
            if (text[end] == '(') ++depth;
            if (text[end] == ')') --depth;
            ++end;
        }
        const std::string_view item = detail::trim(text.substr(pos, end - pos));
        pos = end + 1;
        if (item.empty()) continue;
        const size_t open = item.find('(');
        if (open == std::string_view::npos || item.back() != ')')
            throw UsageError("criteria", "expected NAME(modes...), got '" + std::string(item) + "'");
        const std::string_view name = detail::trim(item.substr(0, open));
        CriterionRequest req;
        bool known = false;
        for (const auto& [n, label] : kNames)
            if (name == n) {
                req.label = label;
                known = true;
                break;
            }
        if (!known)
            throw UsageError("criteria", "unknown criterion '" + std::string(name) + "'");
        std::string_view args = item.substr(open + 1, item.size() - open - 2);
        while (!args.empty()) {
            const size_t comma = args.find(',');
            const std::string_view tok = detail::trim(args.substr(0, comma));
            args = comma == std::string_view::npos ? std::string_view{} : args.substr(comma + 1);
            int mode = 0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), mode);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || mode < 1 || mode > 3)
                throw UsageError("criteria", "mode index must be 1, 2 or 3 in '" + std::string(item) + "'");
            req.indices.push_back(mode);
        }
        if (req.indices.size() != criterion_arity(req.label))
            throw UsageError("criteria", std::string(criterion_label_name(req.label)) + " takes " +
                                             std::to_string(criterion_arity(req.label)) +
                                             " mode index(es)");
        if (req.indices.size() == 2 && req.indices[0] == req.indices[1])
            throw UsageError("criteria", "mode indices must be distinct in '" + std::string(item) + "'");
        out.push_back(std::move(req));
    }
    if (out.empty()) throw UsageError("criteria", "at least one criterion is required");
    return out;
}

inline CriterionResult evaluate_criterion(const CovarianceMatrix& cov, const CriterionRequest& c) {
    switch (c.label) {
        case CriterionLabel::DS_PLUS: return duan_simon(cov, c.indices[0], c.indices[1], Sign::plus);
        case CriterionLabel::DS_MINUS:
            return duan_simon(cov, c.indices[0], c.indices[1], Sign::minus);
        case CriterionLabel::REID_PAIR: return reid_epr(cov, c.indices[0], c.indices[1]);
        case CriterionLabel::VLF_PAIR: return vlf_pairwise(cov, c.indices[0], c.indices[1]);
        case CriterionLabel::VLF_SINGLE: return vlf_single(cov, c.indices[0]);
        case CriterionLabel::STEER3_ONE: return steering3_one_from_two(cov, c.indices[0]);
        case CriterionLabel::STEER3_PAIR: return steering3_two_from_one(cov, c.indices[0]);
    }
    throw std::logic_error("unknown criterion label");
}

// ------------------------------------------------------------ model binding

enum class ModelKind { opa, aoki, asymmetric };

inline ModelKind parse_model(std::string_view s) {
    if (s == "opa") return ModelKind::opa;
    if (s == "aoki") return ModelKind::aoki;
    if (s == "asym" || s == "asymmetric") return ModelKind::asymmetric;
    throw UsageError("model", "unknown model '" + std::string(s) + "' (expected opa, aoki or asym)");
}

inline const char* model_name(ModelKind k) {
    switch (k) {
        case ModelKind::opa: return "opa";
        case ModelKind::aoki: return "aoki";
        case ModelKind::asymmetric: return "asym";
    }
    throw std::logic_error("unknown model kind");
}

inline ModelParams default_params(ModelKind k) {
    switch (k) {
        case ModelKind::opa: return OpaParams{};
        case ModelKind::aoki: return AokiParams{};
        case ModelKind::asymmetric: return AsymmetricParams{};
    }
    throw std::logic_error("unknown model kind");
}

inline GridSpec default_grid(ModelKind k) {
    switch (k) {
        case ModelKind::opa: return default_opa_grid();
        case ModelKind::aoki: return default_aoki_grid();
        case ModelKind::asymmetric: return default_asymmetric_grid();
    }
    throw std::logic_error("unknown model kind");
}

inline const char* default_swept_field(ModelKind k) {
    switch (k) {
        case ModelKind::opa: return "kt";
        case ModelKind::aoki: return "r";
        case ModelKind::asymmetric: return "t";
    }
    throw std::logic_error("unknown model kind");
}

inline void set_model_field(ModelParams& m, const std::string& key, double value) {
    if (auto* p = std::get_if<OpaParams>(&m)) {
        if (key == "kt") { p->kt = value; return; }
    } else if (auto* p = std::get_if<AokiParams>(&m)) {
        if (key == "r") { p->r = value; return; }
        if (key == "mu") { p->mu = value; return; }
        if (key == "nu") { p->nu = value; return; }
    } else if (auto* p = std::get_if<AsymmetricParams>(&m)) {
        if (key == "kappa1") { p->kappa1 = value; return; }
        if (key == "kappa2") { p->kappa2 = value; return; }
        if (key == "t") { p->t = value; return; }
    }
    throw UsageError("set", "model has no parameter named '" + key + "'");
}

inline nlohmann::ordered_json params_json(const ModelParams& m) {
    nlohmann::ordered_json j;
    if (const auto* p = std::get_if<OpaParams>(&m)) {
        j["kt"] = p->kt;
    } else if (const auto* p = std::get_if<AokiParams>(&m)) {
        j["r"] = p->r;
        j["mu"] = p->mu;
        j["nu"] = p->nu;
    } else if (const auto* p = std::get_if<AsymmetricParams>(&m)) {
        j["kappa1"] = p->kappa1;
        j["kappa2"] = p->kappa2;
        j["t"] = p->t;
    }
    return j;
}

// ------------------------------------------------------------ sweep running

enum class OutputFormat { CSV, JSON };

inline OutputFormat parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::CSV;
    if (s == "json") return OutputFormat::JSON;
    throw UsageError("format", "unknown format '" + std::string(s) + "' (expected csv or json)");
}

struct SweepSpec {
    ModelKind kind = ModelKind::aoki;
    ModelParams params = AokiParams{};  // fixed fields; the swept one is overwritten per point
    std::string swept_parameter = "r";
    GridSpec grid = default_aoki_grid();
    std::vector<CriterionRequest> criteria;
    OutputFormat format = OutputFormat::CSV;
};

enum class CellKind { axis, value, flag, slack };

// Materialized result table. Rows hold raw doubles; flags are 0/1.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<CellKind> kinds;
    std::vector<std::vector<double>> rows;
};

namespace detail {

// A named axis: grid values plus the recipe turning one value into model
// parameters. Sweeps use a model field directly; figure presets may map the
// axis through a change of variable first.
struct SweepAxis {
    std::string name;
    std::vector<double> points;
    std::function<ModelParams(double)> instantiate;
};

inline SweepTable run_axis(const SweepAxis& axis, const std::vector<CriterionRequest>& criteria) {
    if (criteria.empty()) throw UsageError("criteria", "at least one criterion is required");
    SweepTable t;
    t.columns.push_back(axis.name);
    t.kinds.push_back(CellKind::axis);
    for (const auto& c : criteria) {
        t.columns.push_back(criterion_name(c));
        t.kinds.push_back(CellKind::value);
    }
    for (const auto& c : criteria) {
        t.columns.push_back(criterion_name(c) + "_violated");
        t.kinds.push_back(CellKind::flag);
        t.columns.push_back(criterion_name(c) + "_slack");
        t.kinds.push_back(CellKind::slack);
    }
    t.rows.reserve(axis.points.size());
    for (const double v : axis.points) {
        const CovarianceMatrix cov = model_covariance(axis.instantiate(v));
        std::vector<CriterionResult> results;
        results.reserve(criteria.size());
        for (const auto& c : criteria) results.push_back(evaluate_criterion(cov, c));
        std::vector<double> row;
        row.reserve(t.columns.size());
        row.push_back(v);
        for (const auto& r : results) row.push_back(r.value);
        for (const auto& r : results) {
            row.push_back(r.violated ? 1.0 : 0.0);
            row.push_back(r.bound - r.value);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline SweepAxis sweep_axis(const SweepSpec& s) {
    {
        ModelParams probe = s.params;  // validates the field name up front
        set_model_field(probe, s.swept_parameter, 0.0);
    }
    return {s.swept_parameter, grid_points(s.grid),
            [params = s.params, field = s.swept_parameter](double v) {
                ModelParams m = params;
                set_model_field(m, field, v);
                return m;
            }};
}

inline void write_csv(const SweepTable& t, std::ostream& os) {
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ',';
        os << t.columns[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            if (t.kinds[i] == CellKind::flag)
                os << (row[i] != 0.0 ? '1' : '0');
            else
                os << format_fixed12(row[i]);
        }
        os << '\n';
    }
}

inline void write_json(const SweepTable& t, nlohmann::ordered_json spec, std::ostream& os) {
    spec["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (size_t i = 0; i < row.size(); ++i) {
            if (t.kinds[i] == CellKind::flag)
                jr.push_back(static_cast<int>(row[i]));
            else
                jr.push_back(row[i]);
        }
        rows.push_back(std::move(jr));
    }
    nlohmann::ordered_json top;
    top["spec"] = std::move(spec);
    top["rows"] = std::move(rows);
    os << top.dump(1, ' ') << '\n';
}

inline nlohmann::ordered_json grid_json(const GridSpec& g) {
    nlohmann::ordered_json j;
    j["start"] = g.start;
    j["stop"] = g.stop;
    j["step"] = g.step;
    return j;
}

}  // namespace detail

inline SweepTable run_sweep(const SweepSpec& s) {
    return detail::run_axis(detail::sweep_axis(s), s.criteria);
}

inline void run_sweep(const SweepSpec& s, std::ostream& os) {
    const SweepTable t = run_sweep(s);
    if (s.format == OutputFormat::CSV) {
        detail::write_csv(t, os);
        return;
    }
    nlohmann::ordered_json spec;
    spec["command"] = "sweep";
    spec["model"] = model_name(s.kind);
    spec["parameter"] = s.swept_parameter;
    spec["grid"] = detail::grid_json(s.grid);
    spec["fixed"] = params_json(s.params);
    detail::write_json(t, std::move(spec), os);
}

// ------------------------------------------------------------ figure presets

enum class FigureId { FIG1, FIG2, FIG3, FIG4, FIG5 };

inline FigureId parse_figure(std::string_view s) {
    std::string lower(s);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "fig1") return FigureId::FIG1;
    if (lower == "fig2") return FigureId::FIG2;
    if (lower == "fig3") return FigureId::FIG3;
    if (lower == "fig4") return FigureId::FIG4;
    if (lower == "fig5") return FigureId::FIG5;
    throw UsageError("figure", "unknown figure '" + std::string(s) + "' (expected fig1..fig5)");
}

inline const char* figure_name(FigureId f) {
    switch (f) {
        case FigureId::FIG1: return "fig1";
        case FigureId::FIG2: return "fig2";
        case FigureId::FIG3: return "fig3";
        case FigureId::FIG4: return "fig4";
        case FigureId::FIG5: return "fig5";
    }
    throw std::logic_error("unknown figure id");
}

namespace detail {

// The asymmetric figures plot against zt = zeta*t at kappa1 = 1, kappa2 = 0.6.
inline SweepAxis asym_zt_axis() {
    const AsymmetricParams base{1.0, 0.6, 0.0};
    const double zeta = std::sqrt((base.kappa1 - base.kappa2) * (base.kappa1 + base.kappa2));
    return {"zt", grid_points({0.0, 2.0, 0.01}), [base, zeta](double zt) {
                AsymmetricParams p = base;
                p.t = zt / zeta;
                return ModelParams{p};
            }};
}

inline SweepAxis figure_axis(FigureId id) {
    switch (id) {
        case FigureId::FIG1:
            return {"kt", grid_points(default_opa_grid()),
                    [](double kt) { return ModelParams{OpaParams{kt}}; }};
        case FigureId::FIG2:
            return {"r", grid_points(default_aoki_grid()),
                    [](double r) { return ModelParams{AokiParams{r, 2.0 / 3.0, 0.5}}; }};
        default: return asym_zt_axis();
    }
}

}  // namespace detail

// Criterion sets matching the five reference plots.
inline std::vector<CriterionRequest> figure_criteria(FigureId id) {
    using L = CriterionLabel;
    switch (id) {
        case FigureId::FIG1:
            return {{L::DS_MINUS, {1, 2}}, {L::VLF_PAIR, {1, 2}}, {L::VLF_SINGLE, {1}},
                    {L::STEER3_PAIR, {1}}};
        case FigureId::FIG2:
            return {{L::DS_MINUS, {1, 2}}, {L::VLF_PAIR, {1, 2}}, {L::VLF_SINGLE, {1}}};
        case FigureId::FIG3:
            return {{L::DS_MINUS, {1, 3}}, {L::VLF_SINGLE, {1}}, {L::VLF_SINGLE, {3}},
                    {L::VLF_PAIR, {1, 2}}, {L::VLF_PAIR, {1, 3}}};
        case FigureId::FIG4: return {{L::REID_PAIR, {1, 3}}, {L::REID_PAIR, {3, 1}}};
        case FigureId::FIG5:
            return {{L::STEER3_ONE, {1}}, {L::STEER3_ONE, {2}}, {L::STEER3_ONE, {3}}};
    }
    throw std::logic_error("unknown figure id");
}

inline SweepTable reproduce_figure(FigureId id) {
    return detail::run_axis(detail::figure_axis(id), figure_criteria(id));
}

inline void reproduce_figure(FigureId id, OutputFormat format, std::ostream& os) {
    const SweepTable t = reproduce_figure(id);
    if (format == OutputFormat::CSV) {
        detail::write_csv(t, os);
        return;
    }
    nlohmann::ordered_json spec;
    spec["command"] = "figure";
    spec["figure"] = figure_name(id);
    detail::write_json(t, std::move(spec), os);
}

// ------------------------------------------------------- grid verification

inline constexpr double kOracleGate = 1e-10;

struct GridVerifyReport {
    ModelKind kind = ModelKind::opa;
    GridSpec grid{};
    std::string swept_parameter;
    size_t points = 0;
    double max_abs_diff = 0.0;
    bool pure = true;
    bool physical = true;

    bool pass(double gate = kOracleGate) const {
        return max_abs_diff <= gate && pure && physical;
    }
};

// Runs the analytic-vs-oracle comparison over the model's default grid (or an
// override) and folds the per-point reports.
inline GridVerifyReport verify_grid(ModelKind kind, const GridSpec* grid_override = nullptr) {
    SweepSpec s;
    s.kind = kind;
    s.params = default_params(kind);
    s.swept_parameter = default_swept_field(kind);
    s.grid = grid_override ? *grid_override : default_grid(kind);
    const detail::SweepAxis axis = detail::sweep_axis(s);
    GridVerifyReport rep;
    rep.kind = kind;
    rep.grid = s.grid;
    rep.swept_parameter = s.swept_parameter;
    rep.points = axis.points.size();
    for (const double v : axis.points) {
        const VerifyReport r = verify_model(axis.instantiate(v));
        rep.max_abs_diff = std::max(rep.max_abs_diff, r.max_abs_diff);
        rep.pure = rep.pure && r.pure;
        rep.physical = rep.physical && r.physical;
    }
    return rep;
}

inline nlohmann::ordered_json verify_report_json(const GridVerifyReport& r) {
    nlohmann::ordered_json j;
    j["model"] = model_name(r.kind);
    j["grid"] = detail::grid_json(r.grid);
    j["parameter"] = r.swept_parameter;
    j["points"] = r.points;
    j["max_abs_diff"] = r.max_abs_diff;
    j["pure"] = r.pure;
    j["physical"] = r.physical;
    j["gate"] = kOracleGate;
    j["pass"] = r.pass();
    return j;
}

// --------------------------------------------------------- classification map

struct ClassifySpec {
    ModelKind kind = ModelKind::aoki;
    ModelParams params = AokiParams{};
    std::string swept_parameter = "r";
    GridSpec grid = default_aoki_grid();
    OutputFormat format = OutputFormat::CSV;
};

namespace detail {

inline std::string pair_set_string(const std::set<std::pair<int, int>>& s, const char* sep) {
    std::string out;
    for (const auto& [a, b] : s) {
        if (!out.empty()) out += ';';
        out += std::to_string(a);
        out += sep;
        out += std::to_string(b);
    }
    return out;
}

}  // namespace detail

inline void run_classify(const ClassifySpec& s, std::ostream& os) {
    SweepSpec probe;
    probe.kind = s.kind;
    probe.params = s.params;
    probe.swept_parameter = s.swept_parameter;
    probe.grid = s.grid;
    const detail::SweepAxis axis = detail::sweep_axis(probe);
    const std::array<const char*, 7> columns = {
        axis.name.c_str(),   "bipartite_pairs",        "tripartite",         "t_state",
        "steerable_pairs",   "tripartite_by_pairwise", "tripartite_by_single"};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    const bool csv = s.format == OutputFormat::CSV;
    if (csv) {
        for (size_t i = 0; i < columns.size(); ++i) {
            if (i) os << ',';
            os << columns[i];
        }
        os << '\n';
    }
    for (const double v : axis.points) {
        const StateClass sc = classify(model_covariance(axis.instantiate(v)));
        const std::string bip = detail::pair_set_string(sc.bipartite_pairs, "-");
        const std::string steer = detail::pair_set_string(sc.steerable_pairs, "<-");
        if (csv) {
            os << format_fixed12(v) << ',' << bip << ',' << (sc.tripartite ? '1' : '0') << ','
               << (sc.t_state ? '1' : '0') << ',' << steer << ','
               << (sc.tripartite_by_pairwise ? '1' : '0') << ','
               << (sc.tripartite_by_single ? '1' : '0') << '\n';
        } else {
            nlohmann::ordered_json jr;
            jr[columns[0]] = v;
            jr["bipartite_pairs"] = bip;
            jr["tripartite"] = sc.tripartite;
            jr["t_state"] = sc.t_state;
            jr["steerable_pairs"] = steer;
            jr["tripartite_by_pairwise"] = sc.tripartite_by_pairwise;
            jr["tripartite_by_single"] = sc.tripartite_by_single;
            rows.push_back(std::move(jr));
        }
    }
    if (!csv) {
        nlohmann::ordered_json spec;
        spec["command"] = "classify";
        spec["model"] = model_name(s.kind);
        spec["parameter"] = s.swept_parameter;
        spec["grid"] = detail::grid_json(s.grid);
        spec["fixed"] = params_json(s.params);
        nlohmann::ordered_json top;
        top["spec"] = std::move(spec);
        top["rows"] = std::move(rows);
        os << top.dump(1, ' ') << '\n';
    }
}

}  // namespace trigauss
