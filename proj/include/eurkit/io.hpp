#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eurkit/probe.hpp"
#include "eurkit/verify.hpp"

namespace eurkit {

using Json = nlohmann::json;

// Numbers in every output are rounded to 12 significant digits.
constexpr int kOutputDigits = 12;
double round_sig(double v, int digits = kOutputDigits);
std::string format_number(double v);

// A state, or a bare position density for the piecewise examples.
struct StateSource {
    std::optional<AnyState> state;
    std::optional<DensityGrid> density;
    std::string descriptor;
};

// State file format:
//   {"type": "grid", "grid": {"x_min", "dx", "n"}, "re": [...], "im": [...],
//    "breakpoints": [...]}
//   {"type": "finite", "re", "im"}     {"type": "circle", "m_min", "re", "im"}
//   {"type": "mixture", "weights": [...], "components": [grid objects]}
//   {"type": "named", "name": "box", "params": {"a": 1.0}}
// Loaded states are validated; a corrupted norm raises NotNormalized.
Json state_to_json(const AnyState& state);
StateSource state_from_json(const Json& j);
StateSource load_state_file(const std::string& path);
void save_state_file(const AnyState& state, const std::string& path);

// Named constructors: box, gaussian, example1, example2, uniform (also
// uniformN), basis, dft-vector, angular, bimodal, random.
StateSource named_state(const std::string& name, const std::map<std::string, std::string>& params);
// "named:box,a=1" or a path to a state file.
StateSource parse_state_arg(const std::string& arg);

Json to_json(const RelationSpec& r);
Json to_json(const BoundReport& r);
Json to_json(const StressSummary& s);
Json to_json(const ProbeResult& p);
Json to_json(const SaturationRow& row);
Json to_json(const BinnedDistribution& p);
Json to_json(const EntropyValue& e);
Json to_json(const SphereBinnedDistribution& p);
Json to_json(const UnitaryBasisSet& set);

// Flat CSV: relation,params,lhs,rhs,margin,satisfied
std::string reports_csv(const std::vector<BoundReport>& reports);
// index,probability
std::string binned_csv(const BinnedDistribution& p);
// i,j,q
std::string sphere_csv(const SphereBinnedDistribution& p);
// parameter,value
std::string plot_csv(const std::vector<std::pair<double, double>>& points);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace eurkit
