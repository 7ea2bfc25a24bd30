#include "chns/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "chns/operators.hpp"
#include "chns/snapshot.hpp"

namespace chns {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
    std::string msg = "config validation failed:";
    for (const auto& e : errors) msg += "\n  - " + e;
    return msg;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

/// Raw "section.key" -> value-text map for the TOML subset used here:
/// [section] headers, key = value, # comments, scalars and flat arrays.
std::map<std::string, std::string> parse_toml(const std::filesystem::path& path,
                                              std::vector<std::string>& errors) {
    std::ifstream in(path);
    if (!in) {
        errors.push_back("cannot open config file " + path.string());
        return {};
    }
    std::map<std::string, std::string> kv;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back("line " + std::to_string(lineno) + ": malformed section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            errors.push_back("line " + std::to_string(lineno) + ": empty key or value");
            continue;
        }
        kv[section.empty() ? key : section + "." + key] = value;
    }
    return kv;
}

/// Typed, error-accumulating reader over the raw map; tracks consumed keys so
/// unknown ones can be reported.
class Reader {
  public:
    Reader(std::map<std::string, std::string> kv, std::vector<std::string>& errors)
        : kv_(std::move(kv)), errors_(errors) {}

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    double number(const std::string& key, double fallback) {
        auto raw = take(key);
        if (!raw) return fallback;
        return parse_number(key, *raw).value_or(fallback);
    }

    long integer(const std::string& key, long fallback) {
        auto v = number(key, static_cast<double>(fallback));
        if (std::abs(v - std::llround(v)) > 1e-9) {
            errors_.push_back(key + " must be an integer");
            return fallback;
        }
        return static_cast<long>(std::llround(v));
    }

    std::optional<double> number_opt(const std::string& key) {
        auto raw = take(key);
        if (!raw) return std::nullopt;
        return parse_number(key, *raw);
    }

    std::string str(const std::string& key, const std::string& fallback) {
        auto raw = take(key);
        if (!raw) return fallback;
        std::string v = *raw;
        if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
            return v.substr(1, v.size() - 2);
        errors_.push_back(key + " must be a quoted string");
        return fallback;
    }

    bool flag(const std::string& key, bool fallback) {
        auto raw = take(key);
        if (!raw) return fallback;
        if (*raw == "true") return true;
        if (*raw == "false") return false;
        errors_.push_back(key + " must be true or false");
        return fallback;
    }

    std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
        auto raw = take(key);
        if (!raw) return fallback;
        std::string v = *raw;
        if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
            errors_.push_back(key + " must be an array like [1, 0, -2]");
            return fallback;
        }
        std::vector<double> out;
        std::string item;
        std::stringstream ss(v.substr(1, v.size() - 2));
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            auto num = parse_number(key, item);
            if (!num) return fallback;
            out.push_back(*num);
        }
        return out;
    }

    void report_unknown() {
        for (const auto& [key, value] : kv_)
            if (!consumed_.count(key)) errors_.push_back("unknown key " + key);
    }

  private:
    std::optional<std::string> take(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        consumed_.insert(key);
        return it->second;
    }

    std::optional<double> parse_number(const std::string& key, const std::string& raw) {
        char* end = nullptr;
        const double v = std::strtod(raw.c_str(), &end);
        if (end == raw.c_str() || *end != '\0') {
            errors_.push_back(key + " must be a number, got '" + raw + "'");
            return std::nullopt;
        }
        return v;
    }

    std::map<std::string, std::string> kv_;
    std::set<std::string> consumed_;
    std::vector<std::string>& errors_;
};

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

RunConfig load_config(const std::filesystem::path& path) {
    std::vector<std::string> errors;
    Reader r(parse_toml(path, errors), errors);
    RunConfig cfg;
    cfg.source_path = path;

    cfg.nx = static_cast<std::size_t>(r.integer("grid.nx", static_cast<long>(cfg.nx)));
    cfg.ny = static_cast<std::size_t>(r.integer("grid.ny", static_cast<long>(cfg.ny)));
    cfg.lx = r.number("grid.lx", cfg.lx);
    cfg.ly = r.number("grid.ly", cfg.ly);

    cfg.nu = r.number("physics.nu", cfg.nu);
    cfg.kernel_type = r.str("physics.kernel", cfg.kernel_type);
    cfg.kernel_sigma = r.number("physics.kernel_sigma", cfg.kernel_sigma);
    cfg.kernel_strength = r.number("physics.kernel_strength", cfg.kernel_strength);
    cfg.synthetic_a = r.flag("physics.synthetic_a", cfg.synthetic_a);
    cfg.synthetic_a_offset = r.number("physics.synthetic_a_offset", cfg.synthetic_a_offset);
    cfg.synthetic_a_amp_x = r.number("physics.synthetic_a_amp_x", cfg.synthetic_a_amp_x);
    cfg.synthetic_a_amp_y = r.number("physics.synthetic_a_amp_y", cfg.synthetic_a_amp_y);
    cfg.synthetic_a_mode_x = r.integer("physics.synthetic_a_mode_x", cfg.synthetic_a_mode_x);
    cfg.synthetic_a_mode_y = r.integer("physics.synthetic_a_mode_y", cfg.synthetic_a_mode_y);
    cfg.potential_coeffs = r.numbers("physics.potential_coeffs", cfg.potential_coeffs);
    cfg.potential_range = r.number("physics.potential_range", cfg.potential_range);

    cfg.dt = r.number("time.dt", cfg.dt);
    cfg.t_final = r.number("time.t_final", cfg.t_final);
    cfg.stabilization = r.number_opt("time.stabilization");
    cfg.record_every = static_cast<std::size_t>(r.integer("time.record_every", 1));

    cfg.phi_preset = r.str("initial.phi", cfg.phi_preset);
    cfg.phi_value = r.number("initial.phi_value", cfg.phi_value);
    cfg.phi_amplitude = r.number("initial.phi_amplitude", cfg.phi_amplitude);
    cfg.stripe_width = r.number("initial.stripe_width", cfg.stripe_width);
    cfg.u_preset = r.str("initial.u", cfg.u_preset);
    cfg.u_amplitude = r.number("initial.u_amplitude", cfg.u_amplitude);

    cfg.targets_mode = r.str("targets.mode", cfg.targets_mode);
    cfg.twin_amplitude = r.number("targets.twin_amplitude", cfg.twin_amplitude);
    cfg.twin_k0 = r.number("targets.twin_k0", cfg.twin_k0);
    cfg.targets_dir = r.str("targets.dir", cfg.targets_dir);

    cfg.max_iters = static_cast<std::size_t>(r.integer("optimizer.max_iters",
                                                       static_cast<long>(cfg.max_iters)));
    cfg.grad_tol = r.number("optimizer.grad_tol", cfg.grad_tol);
    cfg.armijo_c1 = r.number("optimizer.armijo_c1", cfg.armijo_c1);
    cfg.backtrack_rho = r.number("optimizer.backtrack_rho", cfg.backtrack_rho);
    cfg.alpha = r.number("optimizer.alpha", cfg.alpha);
    cfg.beta = r.number("optimizer.beta", cfg.beta);
    cfg.gamma = r.number("optimizer.gamma", cfg.gamma);

    cfg.out_dir = r.str("output.dir", cfg.out_dir);
    cfg.seed = static_cast<std::uint64_t>(r.integer("output.seed", static_cast<long>(cfg.seed)));

    r.report_unknown();

    // Semantic validation; every violation is collected.
    if (!power_of_two(cfg.nx) || cfg.nx < 8)
        errors.push_back("grid.nx must be a power of two >= 8");
    if (!power_of_two(cfg.ny) || cfg.ny < 8)
        errors.push_back("grid.ny must be a power of two >= 8");
    if (!(cfg.lx > 0.0)) errors.push_back("grid.lx must be > 0");
    if (!(cfg.ly > 0.0)) errors.push_back("grid.ly must be > 0");
    if (!(cfg.nu > 0.0)) errors.push_back("physics.nu must be > 0");
    if (cfg.kernel_type != "gaussian" && cfg.kernel_type != "delta")
        errors.push_back("physics.kernel must be \"gaussian\" or \"delta\"");
    if (!(cfg.kernel_sigma > 0.0)) errors.push_back("physics.kernel_sigma must be > 0");
    if (!(cfg.kernel_strength > 0.0)) errors.push_back("physics.kernel_strength must be > 0");
    if (cfg.synthetic_a &&
        cfg.synthetic_a_offset < std::abs(cfg.synthetic_a_amp_x) + std::abs(cfg.synthetic_a_amp_y))
        errors.push_back("physics.synthetic_a_offset must dominate the amplitudes (a >= 0)");
    if (cfg.potential_coeffs.empty() || cfg.potential_coeffs.size() > Potential::max_degree + 1)
        errors.push_back("physics.potential_coeffs must have 1..7 entries (degree <= 6)");
    if (!(cfg.potential_range > 0.0)) errors.push_back("physics.potential_range must be > 0");
    if (!(cfg.dt > 0.0)) errors.push_back("time.dt must be > 0");
    if (!(cfg.t_final > 0.0)) errors.push_back("time.t_final must be > 0");
    if (cfg.dt > 0.0 && cfg.t_final > 0.0) {
        const double n = cfg.t_final / cfg.dt;
        if (std::abs(n - std::llround(n)) > 1e-12 * std::max(1.0, n))
            errors.push_back("time.dt must divide time.t_final");
    }
    if (cfg.stabilization && *cfg.stabilization < 0.0)
        errors.push_back("time.stabilization must be >= 0");
    if (cfg.record_every == 0) errors.push_back("time.record_every must be >= 1");
    if (cfg.phi_preset != "constant" && cfg.phi_preset != "stripe" && cfg.phi_preset != "random")
        errors.push_back("initial.phi must be \"constant\", \"stripe\" or \"random\"");
    if (cfg.u_preset != "zero" && cfg.u_preset != "taylor_green" && cfg.u_preset != "random")
        errors.push_back("initial.u must be \"zero\", \"taylor_green\" or \"random\"");
    if (!(cfg.stripe_width > 0.0)) errors.push_back("initial.stripe_width must be > 0");
    if (cfg.targets_mode != "twin" && cfg.targets_mode != "self" && cfg.targets_mode != "files")
        errors.push_back("targets.mode must be \"twin\", \"self\" or \"files\"");
    if (!(cfg.grad_tol > 0.0)) errors.push_back("optimizer.grad_tol must be > 0");
    if (!(cfg.armijo_c1 > 0.0 && cfg.armijo_c1 < 1.0))
        errors.push_back("optimizer.armijo_c1 must be in (0,1)");
    if (!(cfg.backtrack_rho > 0.0 && cfg.backtrack_rho < 1.0))
        errors.push_back("optimizer.backtrack_rho must be in (0,1)");
    if (cfg.alpha < 0.0) errors.push_back("optimizer.alpha must be >= 0");
    if (cfg.beta < 0.0) errors.push_back("optimizer.beta must be >= 0");
    if (!(cfg.gamma > 0.0)) errors.push_back("optimizer.gamma must be > 0");

    if (cfg.targets_mode == "files") {
        if (cfg.targets_dir.empty()) {
            errors.push_back("targets.dir is required when targets.mode = \"files\"");
        } else if (cfg.dt > 0.0 && cfg.t_final > 0.0) {
            const std::size_t n_states =
                static_cast<std::size_t>(std::llround(cfg.t_final / cfg.dt)) + 1;
            const std::filesystem::path dir = cfg.targets_dir;
            for (std::size_t n = 0; n < n_states; ++n) {
                char name[64];
                std::snprintf(name, sizeof name, "u_d_%06zu.snap", n);
                if (!std::filesystem::exists(dir / name))
                    errors.push_back("targets: missing file " + (dir / name).string());
                std::snprintf(name, sizeof name, "phi_d_%06zu.snap", n);
                if (!std::filesystem::exists(dir / name))
                    errors.push_back("targets: missing file " + (dir / name).string());
                if (errors.size() > 64) break;  // keep the report readable
            }
        }
    }

    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

GridPtr make_grid(const RunConfig& cfg) { return chns::make_grid(cfg.nx, cfg.ny, cfg.lx, cfg.ly); }

Kernel make_kernel(const RunConfig& cfg, const GridPtr& grid) {
    KernelShape shape = GaussianKernelSpec{cfg.kernel_sigma, cfg.kernel_strength};
    if (cfg.kernel_type == "delta") shape = DeltaKernelSpec{};
    std::optional<ScalarField> synthetic;
    if (cfg.synthetic_a) {
        ScalarField a(grid);
        const Grid& g = *grid;
        const double fx = Grid::two_pi() / g.lx() * static_cast<double>(cfg.synthetic_a_mode_x);
        const double fy = Grid::two_pi() / g.ly() * static_cast<double>(cfg.synthetic_a_mode_y);
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i)
                a.at(i, j) = cfg.synthetic_a_offset +
                             cfg.synthetic_a_amp_x * std::cos(fx * g.x(i)) +
                             cfg.synthetic_a_amp_y * std::cos(fy * g.y(j));
        synthetic = std::move(a);
    }
    return build_kernel(shape, grid, std::move(synthetic));
}

Potential make_potential(const RunConfig& cfg) {
    return Potential::from_coefficients(cfg.potential_coeffs, cfg.potential_range);
}

SolverConfig make_solver_config(const RunConfig& cfg) {
    SolverConfig sc;
    sc.nu = cfg.nu;
    sc.dt = cfg.dt;
    sc.t_final = cfg.t_final;
    sc.stabilization = cfg.stabilization;
    sc.record_every = cfg.record_every;
    sc.validate();
    return sc;
}

State make_initial_state(const RunConfig& cfg, const GridPtr& grid) {
    const Grid& g = *grid;
    std::mt19937_64 rng(cfg.seed);

    ScalarField phi(grid, cfg.phi_value);
    if (cfg.phi_preset == "stripe") {
        // Two interfaces so the profile is periodic up to exponential tails.
        const double w = cfg.stripe_width * std::sqrt(2.0);
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const double y = g.y(j);
            const double v = std::tanh((y - 0.25 * g.ly()) / w) -
                             std::tanh((y - 0.75 * g.ly()) / w) - 1.0;
            for (std::size_t i = 0; i < g.nx(); ++i) phi.at(i, j) = v;
        }
    } else if (cfg.phi_preset == "random") {
        phi = random_smooth_scalar(grid, rng);
        phi *= cfg.phi_amplitude;
        for (std::size_t n = 0; n < phi.size(); ++n) phi[n] += cfg.phi_value;
    }

    VectorField u(grid);
    if (cfg.u_preset == "taylor_green") {
        u = taylor_green(grid, cfg.u_amplitude);
    } else if (cfg.u_preset == "random") {
        u = random_solenoidal(grid, rng);
        u *= cfg.u_amplitude;
    }
    return State{leray_project(dealias(u)), dealias(phi), 0.0};
}

Control make_twin_control(const RunConfig& cfg, const GridPtr& grid) {
    const std::size_t n_steps = static_cast<std::size_t>(std::llround(cfg.t_final / cfg.dt));
    std::mt19937_64 rng(cfg.seed ^ 0x7f4a7c15ULL);
    const VectorField shape_a = random_solenoidal(grid, rng, cfg.twin_k0);
    const VectorField shape_b = random_solenoidal(grid, rng, cfg.twin_k0);
    Control u(grid, n_steps, cfg.dt);
    const double pi = 0.5 * Grid::two_pi();
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double t = cfg.dt * static_cast<double>(n);
        const double envelope = std::sin(pi * t / cfg.t_final);
        VectorField slice = shape_a;
        slice *= envelope;
        slice.axpy(0.5 * envelope * std::cos(pi * t / cfg.t_final), shape_b);
        slice *= cfg.twin_amplitude;
        u[n] = std::move(slice);
    }
    return u;
}

OptimizerOptions make_optimizer_options(const RunConfig& cfg) {
    OptimizerOptions o;
    o.max_iters = cfg.max_iters;
    o.grad_tol = cfg.grad_tol;
    o.armijo_c1 = cfg.armijo_c1;
    o.backtrack_rho = cfg.backtrack_rho;
    return o;
}

Problem build_problem(const RunConfig& cfg) {
    GridPtr grid = make_grid(cfg);
    Kernel kernel = make_kernel(cfg, grid);
    Potential potential = make_potential(cfg);
    SolverConfig solver = make_solver_config(cfg);
    State init = make_initial_state(cfg, grid);

    TargetSpec targets;
    targets.alpha = cfg.alpha;
    targets.beta = cfg.beta;
    targets.gamma = cfg.gamma;
    std::optional<Control> twin;

    const std::size_t n_steps = solver.n_steps();
    if (cfg.targets_mode == "twin") {
        twin = make_twin_control(cfg, grid);
        Trajectory traj = solve_forward(init, *twin, solver, kernel, potential);
        TargetSpec from = targets_from_trajectory(traj, cfg.alpha, cfg.beta, cfg.gamma);
        targets.u_d = std::move(from.u_d);
        targets.phi_d = std::move(from.phi_d);
    } else if (cfg.targets_mode == "self") {
        Control zero(grid, n_steps, cfg.dt);
        Trajectory traj = solve_forward(init, zero, solver, kernel, potential);
        TargetSpec from = targets_from_trajectory(traj, cfg.alpha, cfg.beta, cfg.gamma);
        targets.u_d = std::move(from.u_d);
        targets.phi_d = std::move(from.phi_d);
    } else {  // files (existence already validated at load)
        const std::filesystem::path dir = cfg.targets_dir;
        targets.u_d.reserve(n_steps + 1);
        targets.phi_d.reserve(n_steps + 1);
        for (std::size_t n = 0; n <= n_steps; ++n) {
            char name[64];
            std::snprintf(name, sizeof name, "u_d_%06zu.snap", n);
            targets.u_d.push_back(to_vector(load_snapshot(dir / name), grid));
            std::snprintf(name, sizeof name, "phi_d_%06zu.snap", n);
            targets.phi_d.push_back(to_scalar(load_snapshot(dir / name), grid));
        }
    }

    return Problem{cfg,  std::move(grid),    std::move(kernel), std::move(potential),
                   solver, std::move(init), std::move(targets), std::move(twin)};
}

void record_run(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    if (!cfg.source_path.empty() && std::filesystem::exists(cfg.source_path))
        std::filesystem::copy_file(cfg.source_path, out_dir / "config.toml",
                                   std::filesystem::copy_options::overwrite_existing);
    std::ofstream info(out_dir / "run_info.txt");
    info << "seed = " << cfg.seed << "\n";
}

}  // namespace chns
