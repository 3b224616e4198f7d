#include "chatterkit/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "chatterkit/instance.hpp"
#include "chatterkit/numerics.hpp"
#include "chatterkit/series_builder.hpp"
#include "chatterkit/series_eval.hpp"
#include "chatterkit/spectral_heat.hpp"

namespace chatterkit::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitVerificationFailure = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

/// Flat key=value configuration ('#' starts a comment). Every key can be
/// overridden by the command-line flag of the same name (dashes for
/// underscores).
std::map<std::string, std::string> load_config(const std::string& path) {
    std::map<std::string, std::string> out;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) out[key] = value;
    }
    return out;
}

struct Settings {
    std::map<std::string, std::string> config;

    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = config.find(key);
        return it == config.end() ? fallback : it->second;
    }
    template <typename T>
    T get_num(const std::string& key, T fallback) const {
        auto it = config.find(key);
        if (it == config.end()) return fallback;
        std::istringstream is(it->second);
        T v{};
        is >> v;
        if (is.fail()) throw std::runtime_error("config: bad numeric value for '" + key + "'");
        return v;
    }
};

ExponentSpec make_exponents(const std::string& kind, const std::string& alpha_file) {
    if (kind == "squares") return ExponentSpec::squares();
    if (kind == "custom") {
        if (alpha_file.empty()) {
            throw std::runtime_error("custom exponents require --alpha-file");
        }
        std::istringstream in(read_file(alpha_file));
        std::vector<std::int64_t> table;
        std::int64_t a;
        while (in >> a) table.push_back(a);
        if (table.empty()) throw std::runtime_error("alpha file '" + alpha_file + "' holds no integers");
        return ExponentSpec::custom(std::move(table));
    }
    throw std::runtime_error("unknown exponents kind '" + kind + "' (squares|custom)");
}

std::vector<std::int64_t> parse_level_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stoll(token));
    }
    return out;
}

std::string dots_path(const std::string& out_path) {
    const std::string suffix = ".csv";
    if (out_path.size() > suffix.size() &&
        out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return out_path.substr(0, out_path.size() - suffix.size()) + ".dots.csv";
    }
    return out_path + ".dots.csv";
}

int cmd_build(const std::string& z1, const std::string& exponents,
              const std::string& alpha_file, std::int64_t K, int precision_bits,
              const std::string& out_path) {
    const ChatterSequence seq =
        SeriesBuilder::run(z1, make_exponents(exponents, alpha_file), K, precision_bits);
    write_file(out_path, seq.to_json_string() + "\n");
    std::cout << "k,1-z_k,p_k,q_k,r_k\n";
    for (std::int64_t k = 1; k <= seq.iterations(); ++k) {
        std::cout << k << ',' << format_scientific(seq.delta(k).to_double(), 3) << ','
                  << seq.p(k) << ',' << seq.q(k) << ',' << seq.r(k) << '\n';
    }
    return kExitOk;
}

int cmd_figure1(const std::string& in_path, const std::string& level_list, std::int64_t samples,
                const std::string& out_path) {
    const ChatterSequence seq = ChatterSequence::from_json_string(read_file(in_path));
    std::vector<std::int64_t> levels = parse_level_list(level_list);
    if (levels.empty()) {
        for (std::int64_t L = std::min<std::int64_t>(2, seq.iterations()); L <= seq.iterations(); ++L) {
            levels.push_back(L);
        }
    }
    for (const std::int64_t L : levels) {
        if (L < 1 || L > seq.iterations()) {
            throw std::runtime_error("figure1: L = " + std::to_string(L) + " exceeds K");
        }
    }
    const int bits = seq.precision_bits();
    const BigFloat one(1L, bits);

    std::ostringstream curve;
    curve << "x,L,value\n";
    for (const std::int64_t L : levels) {
        for (std::int64_t i = 0; i < samples; ++i) {
            const double x = static_cast<double>(i) / static_cast<double>(samples);
            // delta = exp(1 - (1-x)^-2); x = 0 maps to z = 0, x -> 1 to z -> 1.
            const BigFloat t = one - BigFloat(x, bits);
            const BigFloat delta = exp(one - one / (t * t));
            const double value = eval_partial_sum_log(seq, L, log1p(-delta)).value.to_double();
            curve << format_double(x) << ',' << L << ',' << format_double(value) << '\n';
        }
    }
    write_file(out_path, curve.str());

    std::ostringstream dots;
    dots << "L,k,x,value\n";
    for (const std::int64_t L : levels) {
        for (std::int64_t k = 1; k <= L; ++k) {
            const BigFloat rescaled = one - one / sqrt(one - log(seq.delta(k)));
            const double value = eval_partial_sum_log(seq, L, seq.log_z(k)).value.to_double();
            dots << L << ',' << k << ',' << format_double(rescaled.to_double()) << ','
                 << format_double(value) << '\n';
        }
    }
    write_file(dots_path(out_path), dots.str());
    return kExitOk;
}

int cmd_figure2(const std::string& in_path, std::int64_t L, std::int64_t grid,
                const std::string& out_path) {
    const ChatterSequence seq = ChatterSequence::from_json_string(read_file(in_path));
    const std::int64_t level = L > 0 ? L : seq.iterations();
    if (level < 1 || level > seq.iterations()) {
        throw std::runtime_error("figure2: L = " + std::to_string(level) + " exceeds K");
    }
    write_file(out_path, terminal_datum_w(seq, level).sample_csv(grid));
    return kExitOk;
}

void print_report(const OptimalityReport& report, double positivity,
                  const InstanceDiagnostics& diag) {
    std::cout << "sign-law residual:      " << format_double(report.sign_residual) << " ("
              << report.sign_points_checked << " grid points, " << report.sign_points_skipped
              << " in collars)\n";
    std::cout << "variational inequality: min " << format_double(report.vi_min) << " over "
              << report.vi_samples << " samples, floor -" << format_double(report.eps_quad)
              << ", violations " << report.vi_violations << "\n";
    std::cout << "terminal datum:         construction "
              << (report.construction_identity_exact ? "exact" : "BROKEN") << ", recovery "
              << format_double(report.terminal_residual_ulps) << " ulp\n";
    std::cout << "positivity certificate: " << format_double(positivity) << "\n";
    std::cout << "objective value:        " << format_double(diag.objective_value) << "\n";
    std::cout << "interior switches:      " << diag.interior_switch_count << "\n";
    std::cout << "oracle L2 gap:          " << format_double(diag.oracle_l2_gap) << "\n";
}

int cmd_instance(const std::string& in_path, std::int64_t L, double T, int samples,
                 std::int64_t t_grid, std::int64_t vi_samples, std::uint64_t seed,
                 const std::string& out_path) {
    const ChatterSequence seq = ChatterSequence::from_json_string(read_file(in_path));
    const std::int64_t level = L > 0 ? L : seq.iterations();
    const ChatteringInstance inst = build_instance(seq, level, T, samples);
    write_file(out_path, inst.to_json_string() + "\n");

    const OptimalityReport report = verify_optimality(inst, t_grid, vi_samples, seed);
    const double positivity = positivity_certificate(inst);
    print_report(report, positivity, inst.diagnostics);
    return report.pass() ? kExitOk : kExitVerificationFailure;
}

int cmd_verify(const std::string& in_path, std::int64_t t_grid, std::int64_t vi_samples,
               std::uint64_t seed) {
    const ChatteringInstance inst = ChatteringInstance::from_json_string(read_file(in_path));
    const OptimalityReport report = verify_optimality(inst, t_grid, vi_samples, seed);
    const double positivity = positivity_certificate(inst);
    print_report(report, positivity, inst.diagnostics);
    return report.pass() ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("chatterkit");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
    Settings settings;
    // The config file provides defaults; explicit flags win.
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        try {
            if (a == "--config" && i + 1 < argc) {
                settings.config = load_config(argv[i + 1]);
            } else if (a.rfind("--config=", 0) == 0) {
                settings.config = load_config(a.substr(9));
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitInputError;
        }
    }

    CLI::App app{"Constructs sign-changing block-harmonic power series and the"
                 " matching chattering boundary-control instances for the 1-D heat equation"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value configuration file");

    // build
    auto* build = app.add_subcommand("build", "run the series construction and write its JSON");
    std::string z1 = settings.get("z1", "0.5");
    std::string exponents = settings.get("exponents", "squares");
    std::string alpha_file = settings.get("alpha_file", "");
    std::int64_t K = settings.get_num<std::int64_t>("K", 6);
    int precision_bits = settings.get_num<int>("precision_bits", 128);
    std::string build_out = settings.get("out", "sequence.json");
    build->add_option("--z1", z1, "first probe point in (0,1), decimal string");
    build->add_option("--exponents", exponents, "squares|custom");
    build->add_option("--alpha-file", alpha_file, "integer exponent table for custom");
    build->add_option("--K", K, "number of blocks to construct");
    build->add_option("--precision-bits", precision_bits, "working precision");
    build->add_option("--out", build_out, "output sequence JSON path");

    // figure1
    auto* figure1 = app.add_subcommand("figure1", "rescaled partial-sum curves and probe dots (CSV)");
    std::string fig1_in = settings.get("in", "sequence.json");
    std::string fig1_levels = settings.get("L_list", "");
    std::int64_t fig1_samples = settings.get_num<std::int64_t>("samples", 512);
    std::string fig1_out = settings.get("out", "figure1.csv");
    figure1->add_option("--in", fig1_in, "sequence JSON path");
    figure1->add_option("--L", fig1_levels, "comma-separated truncation levels (default 2..K)");
    figure1->add_option("--samples", fig1_samples, "grid points per curve");
    figure1->add_option("--out", fig1_out, "output CSV path (dots CSV derives from it)");

    // figure2
    auto* figure2 = app.add_subcommand("figure2", "terminal datum w on a uniform grid (CSV)");
    std::string fig2_in = settings.get("in", "sequence.json");
    std::int64_t fig2_level = settings.get_num<std::int64_t>("L", 0);
    std::int64_t fig2_grid = settings.get_num<std::int64_t>("grid", 2001);
    std::string fig2_out = settings.get("out", "figure2.csv");
    figure2->add_option("--in", fig2_in, "sequence JSON path");
    figure2->add_option("--L", fig2_level, "truncation level (default K)");
    figure2->add_option("--grid", fig2_grid, "number of grid points");
    figure2->add_option("--out", fig2_out, "output CSV path");

    // instance
    auto* instance = app.add_subcommand("instance", "assemble and verify a chattering instance");
    std::string inst_in = settings.get("in", "sequence.json");
    std::int64_t inst_level = settings.get_num<std::int64_t>("L", 0);
    double T = settings.get_num<double>("T", 1.0);
    int root_samples = settings.get_num<int>("samples", 256);
    std::int64_t t_grid = settings.get_num<std::int64_t>("t_grid", 10000);
    std::int64_t vi_samples = settings.get_num<std::int64_t>("vi_samples", 100);
    std::uint64_t seed = settings.get_num<std::uint64_t>("seed", 1);
    std::string inst_out = settings.get("out", "instance.json");
    instance->add_option("--in", inst_in, "sequence JSON path");
    instance->add_option("--L", inst_level, "truncation level (default K)");
    instance->add_option("--T", T, "horizon, must exceed ln(1/z1)/pi^2");
    instance->add_option("--samples", root_samples, "root-scan samples per interval");
    instance->add_option("--t-grid", t_grid, "verification grid size");
    instance->add_option("--vi-samples", vi_samples, "random admissible controls to test");
    instance->add_option("--seed", seed, "RNG seed for the variational-inequality samples");
    instance->add_option("--out", inst_out, "output instance JSON path");

    // verify
    auto* verify = app.add_subcommand("verify", "re-run verification on a stored instance");
    std::string verify_in = settings.get("in", "instance.json");
    std::int64_t verify_t_grid = settings.get_num<std::int64_t>("t_grid", 10000);
    std::int64_t verify_vi_samples = settings.get_num<std::int64_t>("vi_samples", 100);
    std::uint64_t verify_seed = settings.get_num<std::uint64_t>("seed", 1);
    verify->add_option("--in", verify_in, "instance JSON path");
    verify->add_option("--t-grid", verify_t_grid, "verification grid size");
    verify->add_option("--vi-samples", verify_vi_samples, "random admissible controls to test");
    verify->add_option("--seed", verify_seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (build->parsed()) {
            return cmd_build(z1, exponents, alpha_file, K, precision_bits, build_out);
        }
        if (figure1->parsed()) {
            return cmd_figure1(fig1_in, fig1_levels, fig1_samples, fig1_out);
        }
        if (figure2->parsed()) {
            return cmd_figure2(fig2_in, fig2_level, fig2_grid, fig2_out);
        }
        if (instance->parsed()) {
            return cmd_instance(inst_in, inst_level, T, root_samples, t_grid, vi_samples, seed,
                                inst_out);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_in, verify_t_grid, verify_vi_samples, verify_seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace chatterkit::cli
