#ifndef NONINFO_CONFIG_HPP
#define NONINFO_CONFIG_HPP

#include "noninfo/criteria.hpp"
#include "noninfo/optimizer.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace noninfo
{

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct ModelConfig
{
    ModelKind kind = ModelKind::HeteroPolyExp;
    int degree = 0;
    double b = 1.0;
    double epsilon = 1e-6;
    Interval interval{0.0, 1.0};

    ModelSpec build() const;
    bool operator==(const ModelConfig&) const = default;
};

struct RunConfig
{
    ModelConfig model;
    CriterionKind criterion = CriterionKind::BayesDUniform;
    std::vector<std::pair<double, double>> bounds;
    /// Overrides the model's default inert flags when present.
    std::optional<std::vector<bool>> inert;
    OptimizerOptions optimizer;
    QuadratureRule quadrature;
    int grid = kDefaultGrid;
    double tol = kDefaultVerifyTol;
    std::string out_dir = ".";
    std::string design_file = "design.json";
    std::string sensitivity_file = "sensitivity.csv";

    ParamBox box() const;
    bool operator==(const RunConfig&) const = default;
};

/// Parses and validates; throws ConfigError with a readable message.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

/// Model, box and option checks performed before any computation.
void validate(const RunConfig& c);

} // namespace noninfo

#endif // NONINFO_CONFIG_HPP
