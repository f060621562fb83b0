#include "eurkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eurkit/errors.hpp"

namespace eurkit {

namespace {

double param_num(const std::map<std::string, std::string>& p, const std::string& key, double def) {
    auto it = p.find(key);
    if (it == p.end()) return def;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "parameter " + key + "='" + it->second + "' is not a number");
    }
}

long param_int(const std::map<std::string, std::string>& p, const std::string& key, long def) {
    const double v = param_num(p, key, static_cast<double>(def));
    if (v != std::floor(v)) fail(ErrorCode::ParseError, "parameter " + key + " must be an integer");
    return static_cast<long>(v);
}

std::string param_str(const std::map<std::string, std::string>& p, const std::string& key,
                      const std::string& def) {
    auto it = p.find(key);
    return it == p.end() ? def : it->second;
}

std::size_t param_size(const std::map<std::string, std::string>& p, const std::string& key,
                       std::size_t def) {
    const long v = param_int(p, key, static_cast<long>(def));
    if (v < 0) fail(ErrorCode::ParseError, "parameter " + key + " must be >= 0");
    return static_cast<std::size_t>(v);
}

std::vector<cplx> read_complex(const Json& j) {
    if (!j.contains("re") || !j["re"].is_array()) fail(ErrorCode::ParseError, "state needs an 're' array");
    const auto& re = j["re"];
    std::vector<cplx> out(re.size());
    const bool has_im = j.contains("im");
    if (has_im && (!j["im"].is_array() || j["im"].size() != re.size())) {
        fail(ErrorCode::ParseError, "'im' must be an array as long as 're'");
    }
    for (std::size_t i = 0; i < re.size(); ++i) {
        out[i] = {re[i].get<double>(), has_im ? j["im"][i].get<double>() : 0.0};
    }
    return out;
}

void write_complex(Json& j, const std::vector<cplx>& v) {
    Json re = Json::array(), im = Json::array();
    for (const auto& z : v) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
}

Json grid_to_json(const GridWavefunction& g) {
    Json j;
    j["type"] = "grid";
    j["grid"] = {{"x_min", g.grid.x_min}, {"dx", g.grid.dx}, {"n", g.grid.n}};
    write_complex(j, g.values);
    if (!g.breakpoints.empty()) j["breakpoints"] = g.breakpoints;
    return j;
}

GridWavefunction grid_from_json(const Json& j) {
    if (!j.contains("grid")) fail(ErrorCode::ParseError, "grid state needs a 'grid' object");
    const auto& g = j["grid"];
    GridWavefunction psi;
    psi.grid = GridSpec::make(g.at("x_min").get<double>(), g.at("dx").get<double>(),
                              g.at("n").get<std::size_t>());
    psi.values = read_complex(j);
    if (j.contains("breakpoints")) psi.breakpoints = j["breakpoints"].get<std::vector<double>>();
    psi.validate();
    return psi;
}

std::map<std::string, std::string> json_params(const Json& p) {
    std::map<std::string, std::string> out;
    if (p.is_null()) return out;
    if (!p.is_object()) fail(ErrorCode::ParseError, "'params' must be an object");
    for (auto it = p.begin(); it != p.end(); ++it) {
        if (it.value().is_string()) {
            out[it.key()] = it.value().get<std::string>();
        } else if (it.value().is_number()) {
            std::ostringstream os;
            os.precision(17);
            os << it.value().get<double>();
            out[it.key()] = os.str();
        } else {
            fail(ErrorCode::ParseError, "parameter '" + it.key() + "' must be a number or string");
        }
    }
    return out;
}

Json number(double v) { return std::isfinite(v) ? Json(round_sig(v)) : Json(nullptr); }

std::string params_text(const RelationSpec& r) {
    std::ostringstream os;
    bool first = true;
    const Json j = to_json(r)["params"];
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ';';
        first = false;
        os << it.key() << '=';
        if (it.value().is_string()) {
            os << it.value().get<std::string>();
        } else {
            os << format_number(it.value().get<double>());
        }
    }
    return os.str();
}

}  // namespace

double round_sig(double v, int digits) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", kOutputDigits, v);
    return buf;
}

Json state_to_json(const AnyState& state) {
    if (const auto* g = std::get_if<GridWavefunction>(&state)) return grid_to_json(*g);
    Json j;
    if (const auto* f = std::get_if<FiniteState>(&state)) {
        j["type"] = "finite";
        write_complex(j, f->amplitudes);
    } else if (const auto* c = std::get_if<CircleState>(&state)) {
        j["type"] = "circle";
        j["m_min"] = c->m_min;
        write_complex(j, c->coefficients);
    } else if (const auto* m = std::get_if<MixtureState>(&state)) {
        j["type"] = "mixture";
        j["weights"] = m->weights;
        j["components"] = Json::array();
        for (const auto& comp : m->components) j["components"].push_back(grid_to_json(comp));
    }
    return j;
}

StateSource state_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type")) fail(ErrorCode::ParseError, "state needs a 'type'");
    const std::string type = j["type"].get<std::string>();
    try {
        if (type == "grid") {
            auto psi = grid_from_json(j);
            return {AnyState{psi}, std::nullopt, describe(AnyState{psi})};
        }
        if (type == "finite") {
            FiniteState f{read_complex(j)};
            f.validate();
            return {AnyState{f}, std::nullopt, describe(AnyState{f})};
        }
        if (type == "circle") {
            CircleState c{j.value("m_min", 0), read_complex(j)};
            c.validate();
            return {AnyState{c}, std::nullopt, describe(AnyState{c})};
        }
        if (type == "mixture") {
            MixtureState m;
            m.weights = j.at("weights").get<std::vector<double>>();
            for (const auto& comp : j.at("components")) m.components.push_back(grid_from_json(comp));
            m.validate();
            return {AnyState{m}, std::nullopt, describe(AnyState{m})};
        }
        if (type == "named") {
            return named_state(j.at("name").get<std::string>(),
                               json_params(j.contains("params") ? j["params"] : Json()));
        }
    } catch (const Json::exception& e) {
        fail(ErrorCode::ParseError, std::string("malformed state: ") + e.what());
    }
    fail(ErrorCode::ParseError, "unknown state type '" + type + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

StateSource load_state_file(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_text_file(path));
    } catch (const Json::exception& e) {
        fail(ErrorCode::ParseError, "'" + path + "' is not valid JSON: " + e.what());
    }
    auto s = state_from_json(j);
    s.descriptor = path + " (" + s.descriptor + ")";
    return s;
}

void save_state_file(const AnyState& state, const std::string& path) {
    write_text_file(path, state_to_json(state).dump(2) + "\n");
}

StateSource named_state(const std::string& name_in, const std::map<std::string, std::string>& p) {
    std::string name = name_in;
    std::map<std::string, std::string> params = p;
    // uniformN shorthand.
    if (name.rfind("uniform", 0) == 0 && name.size() > 7) {
        params.emplace("dim", name.substr(7));
        name = "uniform";
    }
    std::ostringstream desc;
    desc << name;
    for (const auto& [k, v] : params) desc << ',' << k << '=' << v;

    if (name == "box") {
        const double a = param_num(params, "a", 1.0);
        GridSpec g = box_default_grid(a);
        if (params.count("n")) {
            const std::size_t n = param_size(params, "n", g.n);
            g = GridSpec::make(-32.0 * a, 64.0 * a / static_cast<double>(n), n);
        }
        return {AnyState{box_state(a, g)}, std::nullopt, desc.str()};
    }
    if (name == "gaussian") {
        const double sigma = param_num(params, "sigma", 1.0);
        const auto n = param_size(params, "n", kDefaultGridPoints);
        return {AnyState{gaussian_state(sigma, param_num(params, "x0", 0.0),
                                        param_num(params, "k0", 0.0), balanced_grid(n))},
                std::nullopt, desc.str()};
    }
    if (name == "bimodal") {
        const double sigma = param_num(params, "sigma", 1.0);
        const double sep = param_num(params, "x0", 4.0);
        const double w = param_num(params, "weight", 0.5);
        const auto n = param_size(params, "n", kDefaultGridPoints);
        const GridSpec g = balanced_grid(n);
        MixtureState m{{w, 1.0 - w}, {gaussian_state(sigma, -sep, 0.0, g), gaussian_state(sigma, sep, 0.0, g)}};
        m.validate();
        return {AnyState{m}, std::nullopt, desc.str()};
    }
    if (name == "example1") {
        const double L = param_num(params, "L", 1.0);
        const long N = param_int(params, "N", 10);
        return {std::nullopt, example1_density(L, N, example1_default_grid(L, N)), desc.str()};
    }
    if (name == "example2") {
        const double L = param_num(params, "L", 1.0);
        const std::string c = param_str(params, "case", "A");
        if (c != "A" && c != "B") fail(ErrorCode::InvalidSpec, "example2 case must be A or B");
        return {std::nullopt,
                example2_density(c == "A" ? Example2Case::A : Example2Case::B, L,
                                 example2_default_grid(L)),
                desc.str()};
    }
    if (name == "uniform") {
        return {AnyState{uniform_state(param_size(params, "dim", 2))}, std::nullopt, desc.str()};
    }
    if (name == "basis") {
        return {AnyState{basis_state(param_size(params, "dim", 2), param_size(params, "index", 0))},
                std::nullopt, desc.str()};
    }
    if (name == "dft-vector") {
        const auto d = param_size(params, "dim", 2);
        const auto idx = param_size(params, "index", 0);
        if (idx >= d) fail(ErrorCode::InvalidSpec, "index must be < dim");
        const auto f = dft_matrix(d);
        FiniteState v{std::vector<cplx>(d)};
        for (std::size_t i = 0; i < d; ++i) {
            v.amplitudes[i] = f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(idx));
        }
        return {AnyState{v}, std::nullopt, desc.str()};
    }
    if (name == "angular") {
        return {AnyState{angular_eigenstate(static_cast<int>(param_int(params, "m", 0)))},
                std::nullopt, desc.str()};
    }
    if (name == "random") {
        RandomEnsembleSpec spec;
        spec.kind = parse_ensemble_kind(param_str(params, "kind", "finite-haar"));
        spec.dim = param_size(params, "dim", spec.dim);
        spec.grid_points = param_size(params, "n", spec.grid_points);
        spec.smoothness = param_num(params, "smoothness", spec.smoothness);
        spec.m_window = static_cast<int>(param_int(params, "window", spec.m_window));
        spec.components = param_size(params, "components", spec.components);
        spec.seed = static_cast<std::uint64_t>(param_size(params, "seed", 0));
        const auto index = static_cast<std::uint64_t>(param_size(params, "index", 0));
        return {random_state(spec, index), std::nullopt, desc.str()};
    }
    fail(ErrorCode::InvalidSpec, "unknown named state '" + name + "'");
}

StateSource parse_state_arg(const std::string& arg) {
    const std::string prefix = "named:";
    if (arg.rfind(prefix, 0) != 0) return load_state_file(arg);
    std::string rest = arg.substr(prefix.size());
    std::map<std::string, std::string> params;
    std::string name;
    std::stringstream ss(rest);
    std::string item;
    bool first = true;
    while (std::getline(ss, item, ',')) {
        if (first) {
            name = item;
            first = false;
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            fail(ErrorCode::ParseError, "expected key=value in '" + item + "'");
        }
        params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    if (name.empty()) fail(ErrorCode::ParseError, "missing state name after 'named:'");
    return named_state(name, params);
}

Json to_json(const RelationSpec& r) {
    Json p = Json::object();
    for (const auto& info : relation_parameters(r.id)) {
        const auto& k = info.name;
        if (k == "delta_x") p[k] = number(r.delta_x);
        else if (k == "delta_k") p[k] = number(r.delta_k);
        else if (k == "align_x") p[k] = bin_alignment_name(r.align_x);
        else if (k == "align_k") p[k] = bin_alignment_name(r.align_k);
        else if (k == "alpha") p[k] = number(r.alpha);
        else if (k == "beta") p[k] = number(r.beta);
        else if (k == "s") p[k] = number(r.s);
        else if (k == "L") p[k] = number(r.L);
        else if (k == "nu") p[k] = number(r.nu);
        else if (k == "n_bins") p[k] = r.n_bins;
        else if (k == "mub_count") p[k] = r.mub_count;
        else if (k == "side") p[k] = side_name(r.side);
        else if (k == "basis") p[k] = basis_choice_name(r.basis);
    }
    return {{"id", relation_name(r.id)}, {"params", p}, {"tol", number(r.tol)}};
}

Json to_json(const BoundReport& r) {
    Json diag = Json::object();
    for (const auto& [k, v] : r.diagnostics) diag[k] = number(v);
    Json subs = Json::array();
    for (const auto& s : r.sub_checks) {
        subs.push_back({{"name", s.name},
                        {"lhs", number(s.lhs)},
                        {"rhs", number(s.rhs)},
                        {"margin", number(s.margin)},
                        {"tol", number(s.tol)},
                        {"sense", sense_name(s.sense)},
                        {"satisfied", s.satisfied}});
    }
    return {{"relation", to_json(r.relation)},
            {"lhs", number(r.lhs)},
            {"rhs", number(r.rhs)},
            {"margin", number(r.margin)},
            {"sense", sense_name(r.sense)},
            {"satisfied", r.satisfied},
            {"tol", number(r.tol)},
            {"state", r.state_descriptor},
            {"diagnostics", diag},
            {"sub_checks", subs}};
}

Json to_json(const StressSummary& s) {
    Json ens = {{"kind", ensemble_kind_name(s.ensemble.kind)}, {"seed", s.ensemble.seed}};
    switch (s.ensemble.kind) {
        case EnsembleKind::finite_haar: ens["dim"] = s.ensemble.dim; break;
        case EnsembleKind::grid_smooth:
            ens["smoothness"] = number(s.ensemble.smoothness);
            ens["grid_points"] = s.ensemble.grid_points;
            break;
        case EnsembleKind::circle_window: ens["m_window"] = s.ensemble.m_window; break;
        case EnsembleKind::mixture:
            ens["components"] = s.ensemble.components;
            ens["grid_points"] = s.ensemble.grid_points;
            break;
    }
    return {{"relation", to_json(s.relation)},
            {"ensemble", ens},
            {"trials", s.trials},
            {"violations", s.violations},
            {"errors", s.errors},
            {"min_margin", number(s.min_margin)},
            {"argmin_index", s.argmin_index},
            {"argmin_state", s.argmin_descriptor},
            {"error_messages", s.error_messages}};
}

Json to_json(const ProbeResult& p) {
    Json params = Json::array();
    for (double v : p.best_params) params.push_back(number(v));
    return {{"relation", to_json(p.relation)},
            {"family", probe_family_name(p.family.family)},
            {"best_lhs", number(p.best_lhs)},
            {"rhs", number(p.rhs)},
            {"gap", number(p.gap)},
            {"best_params", params},
            {"best_restart", p.best_restart},
            {"evaluations", p.evaluations},
            {"status", p.status == ProbeStatus::converged ? "converged" : "budget-exceeded"},
            {"violation", p.violation}};
}

Json to_json(const SaturationRow& row) {
    return {{"family", row.family},
            {"family_tol", number(row.family_tol)},
            {"passed", row.passed},
            {"report", to_json(row.report)}};
}

Json to_json(const BinnedDistribution& p) {
    Json entries = Json::array();
    for (const auto& e : p.entries) entries.push_back({{"index", e.index}, {"probability", number(e.probability)}});
    Json j = {{"exact_count", p.exact_count}, {"tail_mass", number(p.tail_mass)}, {"entries", entries}};
    if (!p.exact_count) {
        j["bin_width"] = number(p.bin_width);
        j["alignment"] = bin_alignment_name(p.alignment);
    }
    return j;
}

Json to_json(const EntropyValue& e) {
    Json j = {{"kind", entropy_kind_name(e.kind)}, {"value", number(e.value)}, {"bits", number(e.bits())}};
    if (e.kind == EntropyKind::renyi || e.kind == EntropyKind::continuous_renyi) j["alpha"] = number(e.parameter);
    if (e.kind == EntropyKind::symmetrized) j["s"] = number(e.parameter);
    if (e.kind == EntropyKind::continuous_shannon || e.kind == EntropyKind::continuous_renyi) {
        j["reference_length"] = number(e.reference_length);
    }
    return j;
}

Json to_json(const SphereBinnedDistribution& p) {
    Json entries = Json::array();
    for (const auto& e : p.entries) entries.push_back({{"i", e.i}, {"j", e.j}, {"q", number(e.probability)}});
    return {{"d_theta", number(p.d_theta)}, {"d_phi", number(p.d_phi)}, {"entries", entries}};
}

Json to_json(const UnitaryBasisSet& set) {
    Json bases = Json::array();
    for (const auto& b : set.bases) {
        Json re = Json::array(), im = Json::array();
        for (Eigen::Index r = 0; r < b.rows(); ++r) {
            for (Eigen::Index c = 0; c < b.cols(); ++c) {
                re.push_back(b(r, c).real());
                im.push_back(b(r, c).imag());
            }
        }
        bases.push_back({{"re", re}, {"im", im}});
    }
    return {{"dim", set.dim}, {"mutually_unbiased", set.mutually_unbiased}, {"bases", bases}};
}

std::string reports_csv(const std::vector<BoundReport>& reports) {
    std::ostringstream os;
    os << "relation,params,lhs,rhs,margin,satisfied\n";
    for (const auto& r : reports) {
        os << relation_name(r.relation.id) << ',' << params_text(r.relation) << ','
           << format_number(r.lhs) << ',' << format_number(r.rhs) << ',' << format_number(r.margin)
           << ',' << (r.satisfied ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string binned_csv(const BinnedDistribution& p) {
    std::ostringstream os;
    os << "index,probability\n";
    for (const auto& e : p.entries) os << e.index << ',' << format_number(e.probability) << '\n';
    return os.str();
}

std::string sphere_csv(const SphereBinnedDistribution& p) {
    std::ostringstream os;
    os << "i,j,q\n";
    for (const auto& e : p.entries) os << e.i << ',' << e.j << ',' << format_number(e.probability) << '\n';
    return os.str();
}

std::string plot_csv(const std::vector<std::pair<double, double>>& points) {
    std::ostringstream os;
    os << "parameter,value\n";
    for (const auto& [x, y] : points) os << format_number(x) << ',' << format_number(y) << '\n';
    return os.str();
}

}  // namespace eurkit
