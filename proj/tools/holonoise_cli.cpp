// Copyright 2026 The holonoise Authors
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

// holonoise: command-line front end.
//
//   holonoise verify
//   holonoise simulate [--config FILE] [flags]
//   holonoise sweep --axis sigma_x --values 0,1e-5,1e-4 [flags]

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holonoise/config.hpp"
#include "holonoise/ensemble.hpp"
#include "holonoise/records.hpp"
#include "holonoise/verify.hpp"

namespace {

using namespace holonoise;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct FlagSpec {
    const char *key;
    const char *help;
};

// Every flag doubles as a config-file key. Units follow the loop geometry:
// lengths in control-parameter units, sigma in (squeezing magnitude)^2.
const std::vector<FlagSpec> kFlags{
    {"lx", "loop I length l_x along x; must exceed pi/4 (default 1)"},
    {"ly", "loop II length l_y along y (default 1)"},
    {"gamma-x", "x-plane OU bandwidth, 1/length (default 5)"},
    {"gamma-y", "y-plane OU bandwidth, 1/length (default 5)"},
    {"sigma-x", "x-plane OU variance of dr_x, r1^2 (default 0)"},
    {"sigma-y", "y-plane OU variance of dr_y, r1^2 (default 0)"},
    {"n", "number of noise realizations (default 20000)"},
    {"seed", "64-bit seed; falls back to $HOLONOISE_SEED, then 42"},
    {"grid-dx", "noise grid spacing, length; 'auto' = min(0.01, 0.1/gamma) (default auto)"},
    {"j", "input basis state 0 or 1 (default 0)"},
    {"mode", "stochastic | systematic (default stochastic)"},
    {"offset-x", "systematic r1 offset on loop I top edge (default 0)"},
    {"offset-y", "systematic r1 offset on loop II top edge (default 0)"},
    {"threads", "worker threads; results do not depend on it (default 1)"},
};

struct RunOptions {
    std::map<std::string, std::string> flag_values;
    std::string config_file;
    std::string out;
    std::string format;
};

void add_run_flags(CLI::App *cmd, RunOptions &opt, const std::string &default_format) {
    for (const FlagSpec &f : kFlags) {
        cmd->add_option_function<std::string>(
            std::string("--") + f.key,
            [&opt, key = std::string(f.key)](const std::string &v) { opt.flag_values[key] = v; },
            f.help);
    }
    cmd->add_option("--config", opt.config_file, "flat key = value file; flags override it");
    cmd->add_option("--out", opt.out, "output file (default stdout)");
    opt.format = default_format;
    cmd->add_option("--format", opt.format, "csv | jsonl (default " + default_format + ")")
        ->check(CLI::IsMember({"csv", "jsonl"}));
}

ExperimentConfig resolve_config(const RunOptions &opt) {
    Settings s;
    if (const char *env = std::getenv("HOLONOISE_SEED"); env && *env) s["seed"] = env;
    if (!opt.config_file.empty()) {
        for (const auto &[k, v] : load_settings(opt.config_file)) s[k] = v;
    }
    for (const auto &[k, v] : opt.flag_values) s[k] = v;
    ExperimentConfig cfg = config_from_settings(s);
    cfg.validate();
    return cfg;
}

RunRecord timed_run(const ExperimentConfig &cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const EnsembleResult r = run_ensemble(cfg);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return make_record(cfg, r, dt);
}

class Output {
  public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
        }
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

  private:
    std::ofstream file_;
};

int cmd_verify(bool flip_orientation) {
    VerifyOptions opt;
    opt.flip_orientation = flip_orientation;
    const auto checks = run_verification(opt);
    bool all = true;
    for (const CheckResult &c : checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(42) << c.name << c.detail
                  << '\n';
        all = all && c.pass;
    }
    std::cout << (all ? "all checks passed" : "verification FAILED") << '\n';
    return all ? kExitOk : kExitFailure;
}

int cmd_simulate(const RunOptions &opt, bool check) {
    const ExperimentConfig cfg = resolve_config(opt);
    const RunRecord rec = timed_run(cfg);
    Output out(opt.out);
    if (opt.format == "csv") {
        write_csv_header(out.stream());
        write_csv_row(out.stream(), csv_row(rec));
    } else {
        write_jsonl(out.stream(), rec);
    }
    if (rec.result.analytic_extrapolated) {
        std::cerr << "warning: sigma-x > " << kSmallNoiseLimit
                  << "; analytic columns are outside the small-noise regime\n";
    }
    return check && !rec.comparison.pass ? kExitFailure : kExitOk;
}

int cmd_sweep(const RunOptions &opt, const std::string &axis, const std::vector<double> &values,
              const std::string &range) {
    SweepSpec spec;
    spec.axis = parse_axis(axis);
    spec.base = resolve_config(opt);
    if (!range.empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(range);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log" && parts[3] != "linear")) {
            throw ConfigError("--range expects start:stop:count[:linear|log]");
        }
        spec.values = axis_range(parse_double(parts[0], "range start"), parse_double(parts[1], "range stop"),
                                 parse_uint(parts[2], "range count"), parts.size() == 4 && parts[3] == "log");
    } else {
        spec.values = values;
    }
    spec.validate();

    Output out(opt.out);
    if (opt.format == "csv") write_csv_header(out.stream());
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        const RunRecord rec = timed_run(spec.point(i));
        if (opt.format == "csv") write_csv_row(out.stream(), csv_row(rec));
        else write_jsonl(out.stream(), rec);
        out.stream().flush();
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Decoherence of the two-loop holonomic Hadamard gate under stochastic squeezing noise"};
    app.set_version_flag("--version", std::string(holonoise::kVersion));
    app.require_subcommand(1);

    bool flip_orientation = false;
    auto *verify = app.add_subcommand("verify", "run structural self-checks; exit 1 on any failure");
    verify->add_flag("--inject-orientation-fault", flip_orientation,
                     "traverse the loops clockwise (negative control)")
        ->group("");

    RunOptions sim_opt;
    bool check = false;
    auto *simulate = app.add_subcommand("simulate", "run one ensemble and emit a record");
    add_run_flags(simulate, sim_opt, "jsonl");
    simulate->add_flag("--check", check, "exit 1 if the Monte Carlo result disagrees with the closed forms");

    RunOptions sweep_opt;
    std::string axis;
    std::vector<double> values;
    std::string range;
    auto *sweep = app.add_subcommand("sweep", "run one ensemble per axis value");
    add_run_flags(sweep, sweep_opt, "csv");
    sweep->add_option("--axis", axis, "sigma_x | gamma_x | l_x | n_realizations")->required();
    auto *values_opt = sweep->add_option("--values", values, "comma-separated axis values")->delimiter(',');
    auto *range_opt = sweep->add_option("--range", range, "start:stop:count[:linear|log]");
    values_opt->excludes(range_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*verify) return cmd_verify(flip_orientation);
        if (*simulate) return cmd_simulate(sim_opt, check);
        if (*sweep) {
            if (values.empty() && range.empty()) {
                std::cerr << "error: sweep needs --values or --range\n" << sweep->help();
                return kExitConfig;
            }
            return cmd_sweep(sweep_opt, axis, values, range);
        }
    } catch (const ConfigError &e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError &e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
