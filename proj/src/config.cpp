#include "bogospec/config.hpp"

#include "bogospec/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace bogospec {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

double to_number(const std::string& text, const std::string& key)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v))
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    return v;
}

int to_int(const std::string& text, const std::string& key)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    }
    if (used != text.size() || v < -1000000 || v > 1000000)
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    return static_cast<int>(v);
}

std::string fmt(double x)
{
    return format_shortest(x);
}

template <class T>
T get_as(const json& j, const std::string& key)
{
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(key + ": wrong type in config file");
    }
}

IntVec vec_from_json(const json& j, int dim)
{
    IntVec v(dim);
    if (j.is_number_integer()) {
        if (dim != 1)
            throw ConfigError("sectors: scalar entries need dimension 1");
        v[0] = j.get<int>();
        return v;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ConfigError("sectors: each entry needs " + std::to_string(dim) + " integers");
    for (int i = 0; i < dim; ++i) {
        if (!j[static_cast<std::size_t>(i)].is_number_integer())
            throw ConfigError("sectors: entries must be integers");
        v[i] = j[static_cast<std::size_t>(i)].get<int>();
    }
    return v;
}

} // namespace

std::string version_string()
{
    return BOGOSPEC_VERSION;
}

Potential parse_vhat(const std::string& spec, int dim)
{
    const auto parts = split(spec, ':');
    if (parts.empty())
        throw ConfigError("vhat: empty potential spec");
    const std::string& family = parts[0];
    try {
        if (family == "none" && parts.size() == 1)
            return Potential::none(dim);
        if (family == "gaussian" && parts.size() == 3)
            return Potential::gaussian(to_number(parts[1], "vhat"), to_number(parts[2], "vhat"), dim);
        if (family == "zero_mode" && parts.size() == 2)
            return Potential::zero_mode(to_number(parts[1], "vhat"), dim);
        if (family == "table" && parts.size() == 2) {
            std::vector<std::pair<double, double>> samples;
            for (const auto& item : split(parts[1], ',')) {
                const auto pv = split(item, '/');
                if (pv.size() != 2)
                    throw ConfigError("vhat: table samples are written <p>/<value>");
                samples.emplace_back(to_number(pv[0], "vhat"), to_number(pv[1], "vhat"));
            }
            return Potential::table(std::move(samples), dim);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("vhat: ") + e.what());
    }
    throw ConfigError("vhat: expected gaussian:<amplitude>:<width>, zero_mode:<amplitude>, none or "
                      "table:<p>/<v>,...; got '" + spec + "'");
}

std::vector<IntVec> parse_sectors(const std::string& text, int dim)
{
    std::vector<IntVec> out;
    if (text.empty())
        return out;
    for (const auto& item : split(text, ';')) {
        const auto comps = split(item, ':');
        if (static_cast<int>(comps.size()) != dim)
            throw ConfigError("sectors: '" + item + "' needs " + std::to_string(dim) + " components");
        IntVec v(dim);
        for (int i = 0; i < dim; ++i)
            v[i] = to_int(comps[static_cast<std::size_t>(i)], "sectors");
        out.push_back(v);
    }
    return out;
}

LatticeSpec RunConfig::lattice() const
{
    return LatticeSpec{L, dim};
}

Potential RunConfig::potential() const
{
    if (!table_samples.empty()) {
        try {
            return Potential::table(table_samples, dim);
        } catch (const Error& e) {
            throw ConfigError(std::string("potential: ") + e.what());
        }
    }
    return parse_vhat(vhat, dim);
}

std::vector<int> RunConfig::particle_numbers() const
{
    if (!N.empty())
        return N;
    if (command == "verify")
        return {4, 8, 16, 32};
    return {6};
}

std::vector<IntVec> RunConfig::sector_list() const
{
    if (!sectors.empty())
        return sectors;
    std::vector<IntVec> out{IntVec(dim)};
    for (int i = 0; i < dim; ++i) {
        IntVec e(dim);
        e[i] = 1;
        out.push_back(e);
    }
    IntVec minus(dim);
    minus[0] = -1;
    out.push_back(minus);
    if (dim == 1)
        out.push_back(IntVec{2});
    return out;
}

EigenOptions RunConfig::eigen_options(std::size_t count_override) const
{
    EigenOptions o;
    o.count = count_override ? count_override : static_cast<std::size_t>(count);
    o.tol = tol;
    o.seed = seed;
    return o;
}

void RunConfig::validate() const
{
    if (!(L >= 1.0) || !std::isfinite(L))
        throw ConfigError("L: must be a finite number >= 1");
    if (dim < 1 || dim > 3)
        throw ConfigError("dimension: must be 1, 2 or 3");
    if (!(window >= 0.0))
        throw ConfigError("window: must be >= 0");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw ConfigError("kappa: must be finite and >= 0");
    for (int n : N)
        if (n < 1)
            throw ConfigError("N: particle numbers must be >= 1");
    if (command == "verify" && particle_numbers().size() < 3)
        throw ConfigError("N: verify needs at least three particle numbers for the scaling fit");
    if (!(mode_radius >= 0.0))
        throw ConfigError("mode_radius: must be >= 0");
    if (max_excited && *max_excited < 0)
        throw ConfigError("max_excited: must be >= 0");
    for (const auto& s : sectors)
        if (s.dim() != dim)
            throw ConfigError("sectors: " + s.str() + " does not match dimension " + std::to_string(dim));
    if (count < 1)
        throw ConfigError("count: must be >= 1");
    if (!(tol > 0.0))
        throw ConfigError("tol: must be > 0");
    if (format != "csv" && format != "text")
        throw ConfigError("format: must be csv or text");
    potential();
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved_entries() const
{
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("command", command);
    e.emplace_back("vhat", potential().describe());
    e.emplace_back("L", fmt(L));
    e.emplace_back("dimension", std::to_string(dim));
    const bool spectral = command == "dispersion" || command == "enumerate" || command == "figure";
    if (spectral)
        e.emplace_back("window", fmt(window));
    if (command == "enumerate" || command == "figure")
        e.emplace_back("kappa", fmt(kappa));
    if (command == "ed" || command == "verify") {
        std::string ns, secs;
        for (int n : particle_numbers())
            ns += (ns.empty() ? "" : " ") + std::to_string(n);
        for (const auto& s : sector_list())
            secs += (secs.empty() ? "" : " ") + s.str();
        e.emplace_back("N", ns);
        e.emplace_back("mode_radius", fmt(mode_radius));
        e.emplace_back("max_excited", max_excited ? std::to_string(*max_excited) : "min(N,8)");
        e.emplace_back("sectors", secs);
        e.emplace_back("count", std::to_string(count));
        e.emplace_back("tol", fmt(tol));
        e.emplace_back("seed", std::to_string(seed));
    }
    if (pairing_scale != 1.0)
        e.emplace_back("pairing_scale", fmt(pairing_scale));
    e.emplace_back("format", format);
    return e;
}

void apply_json_config(RunConfig& cfg, const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config: top level must be an object");

    // Dimension first: sector and potential parsing depend on it.
    if (j.contains("dimension"))
        cfg.dim = get_as<int>(j["dimension"], "dimension");

    for (const auto& [key, value] : j.items()) {
        if (key == "dimension") {
            continue;
        } else if (key == "vhat") {
            cfg.vhat = get_as<std::string>(value, key);
            cfg.table_samples.clear();
        } else if (key == "potential") {
            if (!value.is_object())
                throw ConfigError("potential: must be an object");
            const std::string family = value.contains("family") ? get_as<std::string>(value["family"], "family") : "";
            for (const auto& [pk, _] : value.items())
                if (pk != "family" && pk != "amplitude" && pk != "width" && pk != "samples")
                    throw ConfigError("potential: unknown key '" + pk + "'");
            auto num = [&](const char* k) {
                if (!value.contains(k))
                    throw ConfigError(std::string("potential.") + k + ": missing");
                return get_as<double>(value[k], std::string("potential.") + k);
            };
            cfg.table_samples.clear();
            if (family == "gaussian") {
                cfg.vhat = "gaussian:" + fmt(num("amplitude")) + ":" + fmt(num("width"));
            } else if (family == "zero_mode") {
                cfg.vhat = "zero_mode:" + fmt(num("amplitude"));
            } else if (family == "none") {
                cfg.vhat = "none";
            } else if (family == "table") {
                if (!value.contains("samples") || !value["samples"].is_array())
                    throw ConfigError("potential.samples: expected a list of [p, value] pairs");
                for (const auto& s : value["samples"]) {
                    if (!s.is_array() || s.size() != 2)
                        throw ConfigError("potential.samples: expected a list of [p, value] pairs");
                    cfg.table_samples.emplace_back(get_as<double>(s[0], "potential.samples"),
                                                   get_as<double>(s[1], "potential.samples"));
                }
                cfg.vhat = "table";
            } else {
                throw ConfigError("potential.family: unknown family '" + family + "'");
            }
        } else if (key == "L") {
            cfg.L = get_as<double>(value, key);
        } else if (key == "window") {
            cfg.window = get_as<double>(value, key);
        } else if (key == "kappa") {
            cfg.kappa = get_as<double>(value, key);
        } else if (key == "N") {
            cfg.N = value.is_array() ? get_as<std::vector<int>>(value, key) : std::vector<int>{get_as<int>(value, key)};
        } else if (key == "mode_radius") {
            cfg.mode_radius = get_as<double>(value, key);
        } else if (key == "max_excited") {
            if (value.is_null())
                cfg.max_excited.reset();
            else
                cfg.max_excited = get_as<int>(value, key);
        } else if (key == "sectors") {
            if (!value.is_array())
                throw ConfigError("sectors: expected a list of integer vectors");
            cfg.sectors.clear();
            for (const auto& s : value)
                cfg.sectors.push_back(vec_from_json(s, cfg.dim));
        } else if (key == "count") {
            cfg.count = get_as<int>(value, key);
        } else if (key == "tol") {
            cfg.tol = get_as<double>(value, key);
        } else if (key == "seed") {
            cfg.seed = get_as<std::uint64_t>(value, key);
        } else if (key == "out") {
            cfg.out = get_as<std::string>(value, key);
        } else if (key == "format") {
            cfg.format = get_as<std::string>(value, key);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
}

void write_header(std::ostream& os, const RunConfig& cfg)
{
    os << "# bogospec " << version_string() << '\n';
    for (const auto& [k, v] : cfg.resolved_entries())
        os << "# " << k << " = " << v << '\n';
}

} // namespace bogospec
