#include "drl/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "drl/error.hpp"

namespace drl {

namespace {

struct Overloaded {
    Json operator()(const Gaussian& g) const { return {{"kind", "gaussian"}, {"a", g.a}}; }
    Json operator()(const Dipole& d) const {
        return {{"kind", "dipole"}, {"a", d.a}, {"axis", d.axis}};
    }
    Json operator()(const TensorDipole& d) const { return {{"kind", "tensor_dipole"}, {"a", d.a}}; }
    Json operator()(const LapGaussian& g) const { return {{"kind", "lap_gaussian"}, {"a", g.a}}; }
};

DataPrimitive primitive_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double a = j.value("a", 0.5);
    if (kind == "gaussian") {
        return Gaussian{a};
    }
    if (kind == "dipole") {
        return Dipole{a, j.value("axis", 1)};
    }
    if (kind == "tensor_dipole") {
        return TensorDipole{a};
    }
    if (kind == "lap_gaussian") {
        return LapGaussian{a};
    }
    throw InvalidInput("unknown primitive kind '" + kind +
                       "' (expected gaussian, dipole, tensor_dipole or lap_gaussian)");
}

// Runs a parse step, turning json exceptions into InvalidInput.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw InvalidInput(std::string(what) + ": " + e.what());
    }
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

double parse_number(const std::string& text, int line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    std::size_t end = used;
    while (end < text.size() && (text[end] == ' ' || text[end] == '\r')) {
        ++end;
    }
    if (used == 0 || end != text.size()) {
        std::ostringstream os;
        os << "line " << line << ": '" << text << "' is not a number";
        throw InvalidInput(os.str());
    }
    return v;
}

// JSON has no infinity; unbounded sides are written as null.
Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json to_json(const DataPrimitive& p) { return std::visit(Overloaded{}, p); }

Json to_json(const DataCombo& d) {
    Json terms = Json::array();
    for (const auto& t : d.terms) {
        terms.push_back({{"coeff", t.coeff}, {"prim", to_json(t.prim)}});
    }
    return {{"terms", terms}};
}

Json to_json(const Problem& p) {
    return {{"n", p.n}, {"sigma", p.sigma}, {"u0", to_json(p.u0)}, {"u1", to_json(p.u1)}};
}

DataCombo combo_from_json(const Json& j, int n) {
    return guarded("data combo", [&] {
        std::vector<DataTerm> terms;
        for (const auto& t : j.at("terms")) {
            terms.push_back({t.value("coeff", 1.0), primitive_from_json(t.at("prim"))});
        }
        return build_data(std::move(terms), n);
    });
}

Problem problem_from_json(const Json& j) {
    return guarded("problem", [&] {
        const int n = j.at("n").get<int>();
        const double sigma = j.value("sigma", 2.0);
        const DataCombo u0 = j.contains("u0") ? combo_from_json(j.at("u0"), n) : DataCombo{};
        const DataCombo u1 = j.contains("u1") ? combo_from_json(j.at("u1"), n) : DataCombo{};
        return make_problem(n, sigma, u0, u1);
    });
}

Problem parse_problem(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("malformed problem JSON: ") + e.what());
    }
    return problem_from_json(j);
}

Json to_json(const NormSeries& s) {
    Json pts = Json::array();
    for (const auto& p : s.points) {
        pts.push_back({{"t", p.t}, {"value", p.value}, {"err", p.error}});
    }
    Json j{{"quantity", to_string(s.quantity)}, {"points", pts}};
    if (s.problem) {
        j["problem"] = to_json(*s.problem);
    }
    return j;
}

Json to_json(const FitResult& f) {
    return {{"model", to_string(f.model)},
            {"exponent", f.exponent},
            {"amplitude", f.amplitude},
            {"max_relative_residual", f.max_relative_residual},
            {"t_min", f.t_min},
            {"t_max", f.t_max},
            {"points", f.points}};
}

Json to_json(const GrowthClass& g) {
    return {{"class", to_string(g.kind)},
            {"rate", g.rate},
            {"power_fit", to_json(g.power)},
            {"log_fit", to_json(g.log)},
            {"last_decade_variation", g.last_decade_variation},
            {"tol", g.tol},
            {"bounded_alpha", g.bounded_alpha}};
}

Json to_json(const QuadConfig& cfg) {
    return {{"rel_tol", cfg.rel_tol},
            {"abs_tol", cfg.abs_tol},
            {"max_halfperiods", cfg.max_halfperiods},
            {"panel_order", cfg.panel_order},
            {"tail_sigma_mult", cfg.tail_sigma_mult},
            {"direct_halfperiods", cfg.direct_halfperiods},
            {"euler_terms", cfg.euler_terms},
            {"max_panels", cfg.max_panels}};
}

Json to_json(const VerificationReport& r) {
    Json measured = Json::array();
    for (const auto& m : r.measured) {
        measured.push_back({{"name", m.name}, {"value", m.value}});
    }
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"lower", finite_or_null(c.lower)},
                          {"upper", finite_or_null(c.upper)},
                          {"source", c.source},
                          {"passed", c.passed}});
    }
    return {{"id", r.id},
            {"claim", r.claim},
            {"passed", r.passed},
            {"artifact_finding", r.artifact_finding},
            {"measured", measured},
            {"checks", checks},
            {"diagnostics", r.diagnostics},
            {"runtime_seconds", r.runtime_seconds},
            {"budgets", to_json(r.budgets)}};
}

Json to_json(const SweepRow& row) {
    Json j{{"sigma", row.sigma},
           {"n", row.n},
           {"class", to_string(row.growth.kind)},
           {"alpha", row.growth.power.exponent},
           {"expected", to_string(row.expected)},
           {"match", row.matches},
           {"growth", to_json(row.growth)}};
    if (std::isfinite(row.expected_alpha)) {
        j["expected_alpha"] = row.expected_alpha;
    }
    if (!row.error.empty()) {
        j["error"] = row.error;
    }
    return j;
}

void write_series_csv(std::ostream& os, const NormSeries& s) {
    os << "t,value,err\n";
    for (const auto& p : s.points) {
        os << format_double(p.t) << ',' << format_double(p.value) << ',' << format_double(p.error)
           << '\n';
    }
}

NormSeries read_series_csv(std::istream& is, Quantity quantity) {
    NormSeries s;
    s.quantity = quantity;
    std::string line;
    int line_no = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        if (!header) {
            header = true;
            if (line.rfind("t,", 0) == 0) {
                continue;
            }
        }
        const auto cells = split_csv(line);
        if (cells.size() < 2 || cells.size() > 3) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected 't,value[,err]'";
            throw InvalidInput(msg.str());
        }
        SeriesPoint p;
        p.t = parse_number(cells[0], line_no);
        p.value = parse_number(cells[1], line_no);
        p.error = cells.size() == 3 ? parse_number(cells[2], line_no) : 0.0;
        if (!s.points.empty() && !(p.t > s.points.back().t)) {
            std::ostringstream msg;
            msg << "line " << line_no << ": times must be strictly increasing";
            throw InvalidInput(msg.str());
        }
        s.points.push_back(p);
    }
    return s;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "sigma,n,class,alpha,expected,match\n";
    for (const auto& r : rows) {
        os << format_double(r.sigma) << ',' << r.n << ',' << to_string(r.growth.kind) << ','
           << format_double(r.growth.power.exponent) << ',' << to_string(r.expected) << ','
           << (r.matches ? "yes" : "no") << '\n';
    }
}

void write_report_summary_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
    os << "id,passed,checks,failed_checks,runtime_s\n";
    for (const auto& r : reports) {
        int failed = 0;
        for (const auto& c : r.checks) {
            failed += c.passed ? 0 : 1;
        }
        os << r.id << ',' << (r.passed ? "yes" : "no") << ',' << r.checks.size() << ',' << failed
           << ',' << format_double(r.runtime_seconds) << '\n';
    }
}

} // namespace drl
