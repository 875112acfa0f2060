#include "udw/scan.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "udw/bounds.hpp"
#include "udw/errors.hpp"
#include "udw/fisher.hpp"
#include "udw/oracle.hpp"

namespace udw {

namespace {

const std::set<std::string> numeric_names{
    "L", "delta", "R", "T", "omega_a", "omega_b", "omega", "mass", "epsilon", "r_a", "alpha_a", "pz_a",
    "r_b", "alpha_b", "pz_b", "lambda_b", "v", "delta_k_sq", "cases", "seed"};
const std::set<std::string> option_names{"kind", "path", "regulator"};

const std::vector<std::pair<Subcommand, std::string>> subcommand_names{
    {Subcommand::ICalc, "icalc"},   {Subcommand::Estimate, "estimate"}, {Subcommand::SMax, "smax"},
    {Subcommand::Fisher, "fisher"}, {Subcommand::Bound, "bound"},       {Subcommand::Scan, "scan"},
    {Subcommand::OracleCheck, "oracle-check"}, {Subcommand::Figure, "figure"}};

const std::vector<std::string> ipair_columns{"re_i_pp", "im_i_pp", "re_i_pm", "im_i_pm"};

std::vector<std::string> result_columns(Subcommand s) {
    std::vector<std::string> c;
    auto add = [&](std::initializer_list<const char*> names) {
        for (const char* n : names) c.emplace_back(n);
    };
    switch (s) {
        case Subcommand::OracleCheck:
            add({"case", "n_modes", "mismatch", "tolerance", "truncation_delta", "pass", "error"});
            return c;
        case Subcommand::ICalc:
            c = ipair_columns;
            break;
        case Subcommand::Fisher:
            c = ipair_columns;
            add({"s", "s_max", "qfi_exact", "qfi_leading", "variance_bound", "purity"});
            break;
        case Subcommand::Bound:
            c = ipair_columns;
            add({"s_max", "bound", "decay_scale", "eta_t", "eta_x", "eta_y", "eta_z", "decaying"});
            break;
        default:
            c = ipair_columns;
            add({"s", "s_max", "bound"});
            break;
    }
    add({"path", "est_abs_error", "error"});
    return c;
}

double param(const std::map<std::string, double>& p, const std::string& k, double def) {
    const auto it = p.find(k);
    return it == p.end() ? def : it->second;
}

std::string option(const ScanConfig& c, const std::string& k, const std::string& def) {
    const auto it = c.options.find(k);
    return it == c.options.end() ? def : it->second;
}

// Absolute physical inputs of one grid point.
struct Physical {
    ProfileKind kind;
    double L, delta, R, T, wa, wb;
    FieldSpec field;
};

Physical physical(const std::map<std::string, double>& p, const ScanConfig& c) {
    Physical x;
    x.kind = profile_kind_from_string(option(c, "kind", "pointlike"));
    const double u = c.unit_T;
    x.L = param(p, "L", 0.0) * u;
    x.delta = param(p, "delta", 0.0) * u;
    x.R = c.unit_R > 0.0 ? c.unit_R : param(p, "R", 0.5) * u;
    x.T = param(p, "T", 1.0) * u;
    const double w = param(p, "omega", 0.0);
    x.wa = param(p, "omega_a", w) / u;
    x.wb = param(p, "omega_b", w) / u;
    x.field.mass = param(p, "mass", 0.0) / u;
    x.field.epsilon = param(p, "epsilon", x.field.epsilon);
    const std::string reg = option(c, "regulator", "sp");
    if (reg == "eps") x.field.regulator = Regulator::FiniteEpsilon;
    else if (reg != "sp") throw InvalidArgument("regulator must be sp or eps");
    return x;
}

IPair compute_ipair(const Physical& x, const std::string& path, const KernelTolerance& tol) {
    const bool massless = x.field.mass == 0.0;
    std::string p = path;
    if (p == "auto") {
        if (x.kind == ProfileKind::CompactBump) p = "shell";
        else if (!massless) p = "fourier";
        else p = x.kind == ProfileKind::Pointlike ? "closed_form" : "radial";
    }
    const auto [a, b] = pair_geometry(x.kind, x.L, x.delta, x.R, x.T, x.wa, x.wb);
    if (p == "fourier") return ipair_fourier(a, b, x.field, tol);
    if (!massless) throw InvalidArgument("path '" + p + "' is massless only");
    if (p == "closed_form") {
        if (x.kind != ProfileKind::Pointlike) throw InvalidArgument("closed_form path needs pointlike profiles");
        return ipair_pointlike(x.L, x.delta, x.T, x.wa, x.wb);
    }
    if (p == "radial") {
        if (x.kind != ProfileKind::GaussianSmeared) throw InvalidArgument("radial path needs gaussian profiles");
        return ipair_gaussian(x.L, x.delta, x.R, x.T, x.wa, x.wb, tol);
    }
    if (p == "shell") return ipair_shell(a, b, tol);
    if (p == "spectral_shell") return ipair_spectral_shell(a, b, tol);
    throw InvalidArgument("unknown path '" + path + "'");
}

// Bound for the point, or nullopt-like empty report when none applies.
bool point_bound(const Physical& x, const std::map<std::string, double>& p, BoundReport& rep) {
    const SpacetimeVector z(-x.delta, 0.0, 0.0, -x.L);
    switch (x.kind) {
        case ProfileKind::Pointlike:
            rep = bound_pointlike(x.T, x.delta, 0.0, x.L);
            return true;
        case ProfileKind::GaussianSmeared: {
            const double v = param(p, "v", 0.0);
            if (v != 0.0) {
                if (!(z.t < 0.0 && is_timelike(z))) return false;
                rep = bound_boosted(Eigen::Vector3d(0.0, 0.0, v), x.T, x.R, 3, z);
                return true;
            }
            try {
                rep = optimize_eta(x.T, x.R, z, 3, x.field.mass).second;
                return true;
            } catch (const EmptyAdmissibleSet&) {
                return false;
            }
        }
        case ProfileKind::CompactBump:
            return false;
    }
    return false;
}

TwoLevelState state(const std::map<std::string, double>& p, const char* suffix, TwoLevelState def) {
    const std::string s(suffix);
    TwoLevelState st{param(p, "r_" + s, def.r), param(p, "alpha_" + s, def.alpha), param(p, "pz_" + s, def.pz)};
    st.validate();
    return st;
}

std::vector<Cell> evaluate(Subcommand sub, const std::map<std::string, double>& p, const ScanConfig& c) {
    const Physical x = physical(p, c);
    const IPair ip = compute_ipair(x, option(c, "path", "auto"), c.tol);
    std::vector<Cell> row{ip.i_pp.real(), ip.i_pp.imag(), ip.i_pm.real(), ip.i_pm.imag()};
    const TwoLevelState sender = state(p, "a", {1.0, 0.0, 0.0});
    const TwoLevelState receiver = state(p, "b", TwoLevelState::ground());
    const Mat2 sigma = sigma_two_level(sender, ip);
    const double s = estimator_s(sigma, receiver);
    switch (sub) {
        case Subcommand::ICalc:
            break;
        case Subcommand::Fisher: {
            const QfiReport q = fisher_consistency(param(p, "lambda_b", 1.0), sigma, receiver.density_matrix());
            row.insert(row.end(), {s, s_max(ip), q.exact, q.leading, q.variance_bound, q.purity});
            break;
        }
        case Subcommand::Bound: {
            row.push_back(s_max(ip));
            BoundReport rep;
            if (point_bound(x, p, rep)) {
                row.insert(row.end(), {rep.value, rep.decay_scale, rep.eta(0), rep.eta(1), rep.eta(2), rep.eta(3),
                                       static_cast<long long>(rep.decaying)});
            } else {
                row.resize(row.size() + 7);
            }
            break;
        }
        default: {
            row.insert(row.end(), {s, s_max(ip)});
            BoundReport rep;
            row.push_back(point_bound(x, p, rep) ? Cell(rep.value) : Cell());
            break;
        }
    }
    row.insert(row.end(), {to_string(ip.path), ip.est_abs_error, std::string()});
    return row;
}

std::vector<Cell> error_row(std::size_t width, const std::string& kind) {
    std::vector<Cell> row(width);
    row.back() = kind;
    return row;
}

Table run_oracle(const ScanConfig& c, bool parallel) {
    Table t;
    t.columns = result_columns(Subcommand::OracleCheck);
    const int count = static_cast<int>(param(c.params, "cases", 30.0));
    const auto seed = static_cast<std::uint64_t>(param(c.params, "seed", 1.0));
    const std::vector<OracleCase> cases = random_oracle_cases(count, seed);
    const std::vector<OracleReport> reps = run_oracle_batch(cases, parallel);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const OracleReport& r = reps[i];
        t.rows.push_back({static_cast<long long>(i), static_cast<long long>(cases[i].modes.modes.size()), r.mismatch,
                          r.tolerance, r.dyson.truncation_checked ? Cell(r.dyson.truncation_delta) : Cell(),
                          static_cast<long long>(r.pass), r.pass ? std::string() : std::string("OracleMismatch")});
    }
    return t;
}

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

double number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) config_error(path, "expected a number");
    return j.get<double>();
}

Axis parse_axis(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) config_error(path, "expected an object");
    Axis a;
    if (!j.contains("name") || !j["name"].is_string()) config_error(path + ".name", "expected a string");
    a.name = j["name"].get<std::string>();
    if (!numeric_names.count(a.name)) config_error(path + ".name", "unknown parameter '" + a.name + "'");
    if (j.contains("values")) {
        if (!j["values"].is_array() || j["values"].empty()) config_error(path + ".values", "expected a non-empty array");
        for (std::size_t i = 0; i < j["values"].size(); ++i)
            a.values.push_back(number(j["values"][i], path + ".values[" + std::to_string(i) + "]"));
        return a;
    }
    for (const char* k : {"min", "max", "count"})
        if (!j.contains(k)) config_error(path + "." + k, "missing");
    const double lo = number(j["min"], path + ".min"), hi = number(j["max"], path + ".max");
    if (!j["count"].is_number_integer() || j["count"].get<long long>() < 1)
        config_error(path + ".count", "expected an integer >= 1");
    const int n = j["count"].get<int>();
    const std::string spacing = j.value("spacing", std::string("linear"));
    if (spacing != "linear" && spacing != "log") config_error(path + ".spacing", "expected linear or log");
    if (spacing == "log" && !(lo > 0.0 && hi > 0.0)) config_error(path, "log spacing needs positive bounds");
    for (int i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        a.values.push_back(spacing == "log" ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
    return a;
}

void validate(const ScanConfig& c) {
    if (c.subcommand == Subcommand::OracleCheck) {
        if (param(c.params, "cases", 30.0) < 1.0) config_error("params.cases", "must be >= 1");
        return;
    }
    bool has_l = c.params.count("L") > 0;
    for (const Axis& a : c.axes) has_l = has_l || a.name == "L";
    if (!has_l) config_error("params.L", "required for " + to_string(c.subcommand));
    const std::string kind = option(c, "kind", "pointlike");
    try {
        profile_kind_from_string(kind);
    } catch (const InvalidArgument& e) {
        config_error("params.kind", e.what());
    }
    if (std::abs(param(c.params, "v", 0.0)) >= 1.0) config_error("params.v", "|v| must be below 1");
    if (c.unit_T <= 0.0) config_error("units.T", "must be positive");
    if (c.unit_R < 0.0) config_error("units.R", "must be positive");
}

}  // namespace

Subcommand subcommand_from_string(const std::string& s) {
    for (const auto& [k, n] : subcommand_names)
        if (n == s) return k;
    throw ConfigError("unknown subcommand '" + s + "'");
}

std::string to_string(Subcommand s) {
    for (const auto& [k, n] : subcommand_names)
        if (k == s) return n;
    return "unknown";
}

nlohmann::json ScanConfig::canonical() const {
    nlohmann::json j;
    j["subcommand"] = to_string(subcommand);
    j["preset"] = preset;
    j["params"] = nlohmann::json::object();
    for (const auto& [k, v] : params) j["params"][k] = v;
    for (const auto& [k, v] : options) j["params"][k] = v;
    j["axes"] = nlohmann::json::array();
    for (const Axis& a : axes) j["axes"].push_back({{"name", a.name}, {"values", a.values}});
    j["tolerance"] = {{"abs", tol.abs_tol}, {"rel", tol.rel_tol}};
    j["output"] = {{"path", out}, {"format", format == Format::Csv ? "csv" : "json"}};
    j["threads"] = threads;
    j["units"] = {{"T", unit_T}, {"R", unit_R}};
    return j;
}

std::string ScanConfig::hash() const { return fnv1a_hex(canonical().dump()); }

ScanConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) config_error("config", "expected an object");
    static const std::set<std::string> keys{"subcommand", "preset", "params", "axes", "tolerance",
                                            "output",     "threads", "units"};
    for (const auto& [k, v] : j.items())
        if (!keys.count(k)) config_error(k, "unknown field");
    ScanConfig c;
    if (j.contains("subcommand")) {
        if (!j["subcommand"].is_string()) config_error("subcommand", "expected a string");
        c.subcommand = subcommand_from_string(j["subcommand"].get<std::string>());
    }
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) config_error("preset", "expected a string");
        c.preset = j["preset"].get<std::string>();
    }
    if (j.contains("params")) {
        if (!j["params"].is_object()) config_error("params", "expected an object");
        for (const auto& [k, v] : j["params"].items()) {
            const std::string path = "params." + k;
            if (v.is_string()) {
                if (!option_names.count(k)) config_error(path, "unknown text option");
                c.options[k] = v.get<std::string>();
            } else {
                if (!numeric_names.count(k)) config_error(path, "unknown parameter");
                c.params[k] = number(v, path);
            }
        }
    }
    if (j.contains("axes")) {
        if (!j["axes"].is_array()) config_error("axes", "expected an array");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < j["axes"].size(); ++i) {
            const std::string path = "axes[" + std::to_string(i) + "]";
            Axis a = parse_axis(j["axes"][i], path);
            if (!seen.insert(a.name).second) config_error(path + ".name", "duplicate axis '" + a.name + "'");
            c.axes.push_back(std::move(a));
        }
    }
    if (j.contains("tolerance")) {
        const auto& t = j["tolerance"];
        if (!t.is_object()) config_error("tolerance", "expected an object");
        if (t.contains("abs")) c.tol.abs_tol = number(t["abs"], "tolerance.abs");
        if (t.contains("rel")) c.tol.rel_tol = number(t["rel"], "tolerance.rel");
        if (!(c.tol.abs_tol > 0.0) || !(c.tol.rel_tol > 0.0)) config_error("tolerance", "must be positive");
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        if (!o.is_object()) config_error("output", "expected an object");
        if (o.contains("path")) {
            if (!o["path"].is_string()) config_error("output.path", "expected a string");
            c.out = o["path"].get<std::string>();
        }
        if (o.contains("format")) {
            if (!o["format"].is_string()) config_error("output.format", "expected a string");
            c.format = format_from_string(o["format"].get<std::string>());
        }
    }
    if (j.contains("threads")) {
        if (!j["threads"].is_number_integer() || j["threads"].get<int>() < 0)
            config_error("threads", "expected a non-negative integer");
        c.threads = j["threads"].get<int>();
    }
    if (j.contains("units")) {
        const auto& u = j["units"];
        if (!u.is_object()) config_error("units", "expected an object");
        if (u.contains("T")) c.unit_T = number(u["T"], "units.T");
        if (u.contains("R")) c.unit_R = number(u["R"], "units.R");
    }
    return c;
}

ScanConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(j);
}

void set_param(ScanConfig& c, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) config_error("--set", "expected name=value, got '" + assignment + "'");
    const std::string name = assignment.substr(0, eq), value = assignment.substr(eq + 1);
    if (option_names.count(name)) {
        c.options[name] = value;
        return;
    }
    if (!numeric_names.count(name)) config_error("params." + name, "unknown parameter");
    try {
        std::size_t used = 0;
        c.params[name] = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
        config_error("params." + name, "expected a number");
    }
}

void apply_units(ScanConfig& c, const std::string& spec) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) config_error("units", "expected T=<val>,R=<val>");
        const std::string key = item.substr(0, eq);
        double v = 0.0;
        try {
            std::size_t used = 0;
            v = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            config_error("units." + key, "expected a number");
        }
        if (!(v > 0.0)) config_error("units." + key, "must be positive");
        if (key == "T") c.unit_T = v;
        else if (key == "R") c.unit_R = v;
        else config_error("units." + key, "unknown unit");
    }
}

ScanConfig figure_preset(const std::string& name) {
    ScanConfig c;
    c.subcommand = Subcommand::Figure;
    c.preset = name;
    auto linear = [](std::string n, double lo, double hi, int count) {
        Axis a{std::move(n), {}};
        for (int i = 0; i < count; ++i) a.values.push_back(lo + (hi - lo) * i / (count - 1));
        return a;
    };
    if (name == "fig1") {
        c.options["kind"] = "pointlike";
        c.params = {{"L", 5.0}, {"delta", 0.0}, {"T", 1.0}, {"r_a", 1.0}, {"pz_a", 0.0}};
        c.axes = {{"alpha_a", {0.0, 1.0, 2.0}}, linear("omega", 0.0, 6.0, 241)};
    } else if (name == "fig2") {
        c.options["kind"] = "pointlike";
        c.params = {{"T", 1.0}, {"omega_b", 2.0}};
        c.axes = {{"omega_a", {1.0, 2.0, 3.0, 4.0}}, linear("delta", -8.0, 2.0, 41), linear("L", 0.25, 8.0, 32)};
    } else if (name == "fig3") {
        c.options["kind"] = "gaussian";
        c.params = {{"L", 4.0}, {"delta", 0.0}, {"T", 1.0}};
        Axis r{"R", {}};
        for (int i = 0; i < 40; ++i) r.values.push_back(0.05 * std::pow(4.0 / 0.05, i / 39.0));
        c.axes = {{"omega", {0.0, 1.0, 2.0}}, r};
    } else {
        throw ConfigError("figure: unknown preset '" + name + "' (expected fig1, fig2 or fig3)");
    }
    return c;
}

Table run_scan(const ScanConfig& c, bool parallel) {
    validate(c);
    if (c.subcommand == Subcommand::OracleCheck) return run_oracle(c, parallel);

    Table t;
    for (const Axis& a : c.axes) t.columns.push_back(a.name);
    const std::vector<std::string> rc = result_columns(c.subcommand);
    t.columns.insert(t.columns.end(), rc.begin(), rc.end());

    std::size_t total = 1;
    for (const Axis& a : c.axes) total *= a.values.size();
    t.rows.resize(total);

    auto run_point = [&](std::size_t idx) {
        std::map<std::string, double> p = c.params;
        std::vector<Cell> row;
        std::size_t rem = idx;
        std::vector<double> coords(c.axes.size());
        for (std::size_t k = c.axes.size(); k-- > 0;) {
            const std::size_t n = c.axes[k].values.size();
            coords[k] = c.axes[k].values[rem % n];
            rem /= n;
        }
        for (std::size_t k = 0; k < c.axes.size(); ++k) {
            p[c.axes[k].name] = coords[k];
            row.emplace_back(coords[k]);
        }
        std::vector<Cell> res;
        try {
            res = evaluate(c.subcommand, p, c);
        } catch (const Error& e) {
            res = error_row(rc.size(), e.kind());
        } catch (const std::exception&) {
            res = error_row(rc.size(), "InternalError");
        }
        row.insert(row.end(), res.begin(), res.end());
        t.rows[idx] = std::move(row);
    };

    const long n = static_cast<long>(total);
    if (parallel) {
        const int nt = c.threads > 0 ? c.threads : 0;
        if (nt > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(nt)
            for (long i = 0; i < n; ++i) run_point(static_cast<std::size_t>(i));
        } else {
#pragma omp parallel for schedule(dynamic)
            for (long i = 0; i < n; ++i) run_point(static_cast<std::size_t>(i));
        }
    } else {
        for (long i = 0; i < n; ++i) run_point(static_cast<std::size_t>(i));
    }
    return t;
}

bool has_error_rows(const Table& t) {
    const std::size_t col = t.column("error");
    for (const auto& row : t.rows)
        if (!format_cell(row[col]).empty()) return true;
    return false;
}

}  // namespace udw
