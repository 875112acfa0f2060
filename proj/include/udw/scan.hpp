#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "udw/estimator.hpp"
#include "udw/table.hpp"

namespace udw {

inline constexpr const char* version_string = "0.1.0";

enum class Subcommand { ICalc, Estimate, SMax, Fisher, Bound, Scan, OracleCheck, Figure };
Subcommand subcommand_from_string(const std::string& s);
std::string to_string(Subcommand s);

struct Axis {
    std::string name;
    std::vector<double> values;
};

// Numeric parameters (all in units of T unless units override):
//   L, delta, R, T, omega_a, omega_b, omega (sets both), mass, epsilon,
//   r_a, alpha_a, pz_a (sender), r_b, alpha_b, pz_b (receiver),
//   lambda_b, v (sender speed along the separation), delta_k_sq,
//   cases, seed (oracle-check).
// Text options: kind (pointlike | gaussian | bump), path (auto |
// closed_form | radial | fourier | shell | spectral_shell), regulator
// (sp | eps).
struct ScanConfig {
    Subcommand subcommand = Subcommand::Scan;
    std::string preset;
    std::map<std::string, double> params;
    std::map<std::string, std::string> options;
    std::vector<Axis> axes;
    KernelTolerance tol;
    std::string out = "-";
    Format format = Format::Csv;
    int threads = 0;       // 0: OpenMP default
    double unit_T = 1.0;   // absolute length of one config unit
    double unit_R = 0.0;   // absolute smearing width override (0: none)

    // Canonical JSON form; the hash is FNV-1a of its compact dump.
    nlohmann::json canonical() const;
    std::string hash() const;
};

// Throws ConfigError naming the offending field path.
ScanConfig parse_config(const nlohmann::json& j);
ScanConfig load_config(const std::string& path);
// "name=value" override; numbers go to params, text to options.
void set_param(ScanConfig& c, const std::string& assignment);
// "T=<val>,R=<val>" (either part optional).
void apply_units(ScanConfig& c, const std::string& spec);

ScanConfig figure_preset(const std::string& name);

// Row-major over the axes in declaration order. Failing points become rows
// whose numeric cells are empty and whose error column holds the error kind.
Table run_scan(const ScanConfig& c, bool parallel = true);

bool has_error_rows(const Table& t);

}  // namespace udw
