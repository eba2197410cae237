#include "smectic/config.hpp"

#include "smectic/errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace smectic {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

using KeyMap = std::map<std::string, std::string>;

KeyMap tokenize(const std::string& text) {
    KeyMap out;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("malformed section header at line " +
                                   std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("expected key = value at line " +
                               std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw config_error("empty key or value at line " +
                               std::to_string(lineno));
        out[section.empty() ? key : section + "." + key] = val;
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("invalid number for " + key + ": " + v);
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("invalid integer for " + key + ": " + v);
    }
}

struct Reader {
    const KeyMap& kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    double num(const std::string& k) const {
        auto it = kv.find(k);
        if (it == kv.end()) throw config_error("missing key: " + k);
        return to_double(k, it->second);
    }
    double num(const std::string& k, double dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : to_double(k, it->second);
    }
    long integer(const std::string& k, long dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : to_long(k, it->second);
    }
    std::string str(const std::string& k, const std::string& dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    }
};

} // namespace

Config parse_config_text(const std::string& text) {
    Reader r{tokenize(text)};
    Config c;
    c.text = text;

    int n = int(r.integer("grid.n", 16));
    std::array<int, 3> dims{int(r.integer("grid.n1", n)),
                            int(r.integer("grid.n2", n)),
                            int(r.integer("grid.n3", n))};
    double box = r.num("grid.box", 6.283185307179586);
    std::array<double, 3> boxes{r.num("grid.box1", box), r.num("grid.box2", box),
                                r.num("grid.box3", box)};
    c.grid = make_grid(dims, boxes, int(r.integer("grid.pad", 2)));

    ModelParams& p = c.params;
    p.lambda = r.num("params.lambda");
    p.kappa1 = r.num("params.kappa1");
    p.kappa2 = r.num("params.kappa2");
    p.kappa3 = r.num("params.kappa3");
    p.kappa4 = r.num("params.kappa4");
    p.kappa5 = r.num("params.kappa5");
    p.kappa6 = r.num("params.kappa6");
    p.gamma = r.num("params.gamma");
    p.lambda_p = r.num("params.lambda_p");
    p.alpha1 = r.num("params.alpha1");
    p.alpha4 = r.num("params.alpha4");
    p.alpha5 = r.num("params.alpha5");
    p.tau1 = r.num("params.tau1");
    p.tau2 = r.num("params.tau2");
    p.k1 = r.num("params.k1");
    p.k3 = r.num("params.k3");
    p.k5 = r.num("params.k5");
    p.B0 = r.num("params.B0");
    p.B1 = r.num("params.B1");
    p.eps1 = r.num("params.eps1");
    p.eps2 = r.num("params.eps2");
    std::string mode = r.str("params.normal_mode", "gradient");
    if (mode == "gradient") {
        p.normal_mode = NormalMode::Gradient;
    } else if (mode == "relaxed") {
        p.normal_mode = NormalMode::Relaxed;
    } else {
        throw config_error("normal_mode must be gradient or relaxed");
    }
    p.normal_eps = r.num("params.normal_eps", 0.1);
    validate(p);

    SolverConfig& sc = c.solver;
    sc.dt = r.num("solver.dt", 1e-3);
    sc.t_end = r.num("solver.t_end", 0.0);
    std::string scheme = r.str("solver.scheme", "rk2");
    if (scheme == "euler") {
        sc.scheme = Scheme::ImexEuler;
    } else if (scheme == "rk2") {
        sc.scheme = Scheme::ImexRK2;
    } else {
        throw config_error("scheme must be euler or rk2");
    }
    sc.n_galerkin = int(r.integer("solver.n_galerkin", 0));
    sc.snapshot_stride = int(r.integer("solver.snapshot_stride", 1));
    if (sc.dt <= 0.0) throw config_error("solver.dt must be positive");
    if (sc.t_end < 0.0) throw config_error("solver.t_end must be nonnegative");
    double famp = r.num("solver.forcing_amplitude", 0.0);
    if (famp != 0.0) {
        unsigned long fseed = (unsigned long)r.integer("solver.forcing_seed", 2);
        int fband = int(r.integer("solver.forcing_band", 2));
        sc.forcing = random_solenoidal(c.grid, fseed, fband, famp);
    }

    InitialSpec& in = c.initial;
    in.preset = r.str("initial.preset", "ground");
    in.amplitude = r.num("initial.amplitude", 0.01);
    in.seed = (unsigned long)r.integer("initial.seed", 1);
    in.band = int(r.integer("initial.band", 2));
    in.pitch = {r.num("initial.pitch1", 0.0), r.num("initial.pitch2", 0.0),
                r.num("initial.pitch3", 1.0)};
    return c;
}

Config parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace smectic
