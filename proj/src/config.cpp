#include "noninfo/config.hpp"

#include <fstream>
#include <sstream>

namespace noninfo
{

using nlohmann::json;

ModelSpec ModelConfig::build() const
{
    switch (kind)
    {
    case ModelKind::HeteroPolyExp:
        return ModelSpec::hetero_poly_exp(degree, b);
    case ModelKind::HeteroPolyJacobi:
        return ModelSpec::hetero_poly_jacobi(degree, epsilon);
    case ModelKind::Emax:
        return ModelSpec::emax(interval);
    case ModelKind::Compartment:
        return ModelSpec::compartment(interval);
    case ModelKind::HomoscedasticPoly:
        return ModelSpec::homoscedastic_poly(degree, interval);
    }
    throw ConfigError("unsupported model kind");
}

ParamBox RunConfig::box() const
{
    const ModelSpec m = model.build();
    ParamBox b = ParamBox::for_model(m, bounds);
    if (!inert)
        return b;
    if (inert->size() != bounds.size())
        throw ConfigError("config: 'inert' must have one flag per parameter");
    auto coords = b.coords();
    for (std::size_t j = 0; j < coords.size(); ++j)
        coords[j].inert = (*inert)[j];
    ParamBox out(std::move(coords));
    out.validate(m);
    return out;
}

namespace
{

template <class T>
T get_or(const json& j, const char* key, T fallback)
{
    if (!j.contains(key))
        return fallback;
    return j.at(key).get<T>();
}

void require_object(const json& j, const char* what)
{
    if (!j.is_object())
        throw ConfigError(std::string("config: ") + what + " must be an object");
}

ModelConfig parse_model(const json& j)
{
    require_object(j, "'model'");
    ModelConfig mc;
    mc.kind = model_kind_from_string(j.at("kind").get<std::string>());
    switch (mc.kind)
    {
    case ModelKind::HeteroPolyExp:
        mc.degree = j.at("degree").get<int>();
        mc.b = j.at("b").get<double>();
        mc.interval = {0.0, mc.b};
        break;
    case ModelKind::HeteroPolyJacobi:
        mc.degree = j.at("degree").get<int>();
        mc.epsilon = get_or(j, "epsilon", 1e-6);
        mc.interval = {-1.0 + mc.epsilon, 1.0 - mc.epsilon};
        break;
    case ModelKind::Emax:
        mc.interval = {0.0, 4.0};
        break;
    case ModelKind::Compartment:
        mc.interval = {0.0, 20.0};
        break;
    case ModelKind::HomoscedasticPoly:
        mc.degree = j.at("degree").get<int>();
        mc.interval = {-1.0, 1.0};
        break;
    }
    if (j.contains("interval") && mc.kind != ModelKind::HeteroPolyExp && mc.kind != ModelKind::HeteroPolyJacobi)
    {
        const auto iv = j.at("interval").get<std::vector<double>>();
        if (iv.size() != 2)
            throw ConfigError("config: model.interval must have two entries");
        mc.interval = {iv[0], iv[1]};
    }
    return mc;
}

json model_to_json(const ModelConfig& mc)
{
    json j{{"kind", std::string(to_string(mc.kind))}};
    switch (mc.kind)
    {
    case ModelKind::HeteroPolyExp:
        j["degree"] = mc.degree;
        j["b"] = mc.b;
        break;
    case ModelKind::HeteroPolyJacobi:
        j["degree"] = mc.degree;
        j["epsilon"] = mc.epsilon;
        break;
    case ModelKind::HomoscedasticPoly:
        j["degree"] = mc.degree;
        j["interval"] = {mc.interval.lo, mc.interval.hi};
        break;
    case ModelKind::Emax:
    case ModelKind::Compartment:
        j["interval"] = {mc.interval.lo, mc.interval.hi};
        break;
    }
    return j;
}

} // namespace

RunConfig parse_run_config(const json& j)
{
    try
    {
        require_object(j, "top level");
        RunConfig c;
        c.model = parse_model(j.at("model"));
        c.criterion = criterion_kind_from_string(j.at("criterion").get<std::string>());
        for (const auto& b : j.at("box"))
        {
            const auto v = b.get<std::vector<double>>();
            if (v.size() != 2)
                throw ConfigError("config: every box entry must be [lo, hi]");
            c.bounds.emplace_back(v[0], v[1]);
        }
        if (j.contains("inert"))
            c.inert = j.at("inert").get<std::vector<bool>>();
        c.optimizer.m = get_or(j, "m", c.optimizer.m);
        if (j.contains("optimizer"))
        {
            const auto& o = j.at("optimizer");
            require_object(o, "'optimizer'");
            c.optimizer.restarts = get_or(o, "restarts", c.optimizer.restarts);
            c.optimizer.seed = get_or(o, "seed", c.optimizer.seed);
            c.optimizer.max_iters = get_or(o, "max_iters", c.optimizer.max_iters);
            c.optimizer.ftol = get_or(o, "ftol", c.optimizer.ftol);
            c.optimizer.point_merge_tol = get_or(o, "point_merge_tol", c.optimizer.point_merge_tol);
            if (o.contains("method"))
                c.optimizer.method = optimizer_method_from_string(o.at("method").get<std::string>());
        }
        if (j.contains("quadrature"))
        {
            const auto& q = j.at("quadrature");
            require_object(q, "'quadrature'");
            c.quadrature.nodes_per_coord = get_or(q, "nodes_per_coord", c.quadrature.nodes_per_coord);
            c.quadrature.design_nodes = get_or(q, "design_nodes", c.quadrature.design_nodes);
        }
        c.grid = get_or(j, "grid", c.grid);
        c.tol = get_or(j, "tol", c.tol);
        if (j.contains("output"))
        {
            const auto& o = j.at("output");
            require_object(o, "'output'");
            c.out_dir = get_or(o, "dir", c.out_dir);
            c.design_file = get_or(o, "design", c.design_file);
            c.sensitivity_file = get_or(o, "sensitivity", c.sensitivity_file);
        }
        validate(c);
        return c;
    }
    catch (const json::exception& e)
    {
        throw ConfigError(std::string("config: ") + e.what());
    }
    catch (const std::invalid_argument& e)
    {
        // ParameterError, DesignError and unknown enum names
        throw ConfigError(std::string("config: ") + e.what());
    }
}

void validate(const RunConfig& c)
{
    try
    {
        const ModelSpec m = c.model.build();
        if (static_cast<int>(c.bounds.size()) != m.k())
        {
            std::ostringstream os;
            os << "config: box has " << c.bounds.size() << " entries, model " << to_string(m.kind()) << " needs "
               << m.k();
            throw ConfigError(os.str());
        }
        (void)c.box();
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (c.optimizer.m < 1)
        throw ConfigError("config: m must be >= 1");
    if (c.optimizer.restarts < 1 || c.optimizer.max_iters < 1)
        throw ConfigError("config: restarts and max_iters must be positive");
    if (!(c.optimizer.ftol > 0.0) || !(c.optimizer.point_merge_tol > 0.0))
        throw ConfigError("config: tolerances must be positive");
    if (c.quadrature.nodes_per_coord < 1 || c.quadrature.design_nodes < 1)
        throw ConfigError("config: quadrature node counts must be positive");
    if (c.grid < 2 * c.optimizer.m)
        throw ConfigError("config: grid must have at least 2m points");
    if (!(c.tol > 0.0))
        throw ConfigError("config: tol must be positive");
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file " + path);
    json j;
    try
    {
        f >> j;
    }
    catch (const json::exception& e)
    {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return parse_run_config(j);
}

json to_json(const RunConfig& c)
{
    json box = json::array();
    for (const auto& [lo, hi] : c.bounds)
        box.push_back({lo, hi});
    json j{{"model", model_to_json(c.model)},
           {"criterion", std::string(to_string(c.criterion))},
           {"box", box},
           {"m", c.optimizer.m},
           {"optimizer",
            {{"restarts", c.optimizer.restarts},
             {"seed", c.optimizer.seed},
             {"max_iters", c.optimizer.max_iters},
             {"ftol", c.optimizer.ftol},
             {"point_merge_tol", c.optimizer.point_merge_tol},
             {"method", std::string(to_string(c.optimizer.method))}}},
           {"quadrature", {{"nodes_per_coord", c.quadrature.nodes_per_coord}, {"design_nodes", c.quadrature.design_nodes}}},
           {"grid", c.grid},
           {"tol", c.tol},
           {"output", {{"dir", c.out_dir}, {"design", c.design_file}, {"sensitivity", c.sensitivity_file}}}};
    if (c.inert)
        j["inert"] = *c.inert;
    return j;
}

} // namespace noninfo
