#include "chordal/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "chordal/errors.hpp"

namespace chordal::io {
namespace {

std::string at(const std::string& where, const std::string& field) {
    return where.empty() ? field : where + "." + field;
}

void check_version(const Json& j, const std::string& where, bool required) {
    if (!j.contains("version")) {
        if (required)
            throw ParseError(at(where, "version") + ": missing");
        return;
    }
    const auto& v = j["version"];
    if (!v.is_number_integer() || v.get<long long>() != kFormatVersion)
        throw ParseError(at(where, "version") + ": expected " + std::to_string(kFormatVersion));
}

double number(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key))
        throw ParseError(at(where, key) + ": missing");
    if (!j[key].is_number())
        throw ParseError(at(where, key) + ": expected a number");
    return j[key].get<double>();
}

Series nested_series(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key))
        throw ParseError(at(where, key) + ": missing");
    return series_from_json(j[key], at(where, key));
}

}  // namespace

Series series_from_json(const Json& j, const std::string& where) {
    if (!j.is_object())
        throw ParseError((where.empty() ? std::string("series") : where) + ": expected an object");
    check_version(j, where, where.empty());
    if (!j.contains("nvars") || !j["nvars"].is_number_integer() || j["nvars"].get<long long>() <= 0)
        throw ParseError(at(where, "nvars") + ": expected a positive integer");
    const auto nvars = j["nvars"].get<std::size_t>();
    if (!j.contains("terms") || !j["terms"].is_array())
        throw ParseError(at(where, "terms") + ": expected an array");

    Series::TermMap terms;
    const auto& arr = j["terms"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string here = at(where, "terms[" + std::to_string(i) + "]");
        const auto& t = arr[i];
        if (!t.is_object())
            throw ParseError(here + ": expected an object");
        if (!t.contains("exp") || !t["exp"].is_array())
            throw ParseError(here + ".exp: expected an array");
        const auto& ej = t["exp"];
        if (ej.size() != nvars)
            throw ParseError(here + ".exp: expected " + std::to_string(nvars) + " entries, got " +
                             std::to_string(ej.size()));
        Exponent e(nvars);
        for (std::size_t v = 0; v < nvars; ++v) {
            if (!ej[v].is_number_integer() || ej[v].get<long long>() < 0)
                throw ParseError(here + ".exp[" + std::to_string(v) + "]: expected a nonnegative integer, got " +
                                 ej[v].dump());
            const auto k = ej[v].get<unsigned long long>();
            if (k > 1'000'000)
                throw ParseError(here + ".exp[" + std::to_string(v) + "]: exponent too large");
            e[v] = static_cast<unsigned>(k);
        }
        const Complex c(number(t, "re", here), number(t, "im", here));
        if (!terms.emplace(e, c).second)
            throw ParseError(here + ".exp: duplicate exponent");
    }
    try {
        return Series(nvars, std::move(terms));
    } catch (const Error& e) {
        throw ParseError((where.empty() ? std::string("series") : where) + ": " + e.what());
    }
}

Json series_to_json(const Series& s) {
    Json terms = Json::array();
    for (const auto& [exp, c] : s.terms())
        terms.push_back({{"exp", exp}, {"re", c.real()}, {"im", c.imag()}});
    return {{"version", kFormatVersion}, {"nvars", s.nvars()}, {"terms", std::move(terms)}};
}

PlantData plant_from_json(const Json& j) {
    if (!j.is_object())
        throw ParseError("plant: expected an object");
    check_version(j, "", true);
    PlantData data{nested_series(j, "num", ""), nested_series(j, "den", ""), std::nullopt};
    if (j.contains("bezout") && !j["bezout"].is_null()) {
        const auto& b = j["bezout"];
        if (!b.is_object())
            throw ParseError("bezout: expected an object");
        data.witnesses = BezoutWitness{nested_series(b, "x", "bezout"), nested_series(b, "y", "bezout")};
    }
    if (data.num.nvars() != data.den.nvars())
        throw DimensionError("plant: num and den have different numbers of variables");
    if (data.witnesses &&
        (data.witnesses->x.nvars() != data.num.nvars() || data.witnesses->y.nvars() != data.num.nvars()))
        throw DimensionError("plant: Bezout witnesses have a different number of variables");
    return data;
}

Json plant_to_json(const Series& num, const Series& den, const std::optional<BezoutWitness>& witnesses) {
    Json j{{"version", kFormatVersion}, {"num", series_to_json(num)}, {"den", series_to_json(den)}};
    if (witnesses)
        j["bezout"] = {{"x", series_to_json(witnesses->x)}, {"y", series_to_json(witnesses->y)}};
    return j;
}

Json plant_to_json(const CoprimePlant& plant) {
    return plant_to_json(plant.num(), plant.den(), plant.witnesses());
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string() + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

Series read_series_file(const std::filesystem::path& path) {
    try {
        return series_from_json(read_json_file(path));
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path.string(), 0) == 0)
            throw;
        throw ParseError(path.string() + ": " + msg);
    }
}

PlantData read_plant_file(const std::filesystem::path& path) {
    try {
        return plant_from_json(read_json_file(path));
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path.string(), 0) == 0)
            throw;
        throw ParseError(path.string() + ": " + msg);
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out)
        throw Error(path.string() + ": cannot write");
    out << j.dump(2) << '\n';
}

Json to_json(const CertifiedBound& b) {
    return {{"lo", b.lo},
            {"hi", b.hi},
            {"kind", b.kind == BoundKind::Supremum ? "Supremum" : "InfimumModulus"},
            {"grid_delta", b.grid_delta},
            {"lipschitz", b.lipschitz}};
}

Json to_json(const PolydiscPoint& p) {
    Json arr = Json::array();
    for (const auto& c : p.coords())
        arr.push_back({{"re", c.real()}, {"im", c.imag()}});
    return arr;
}

Json to_json(const KappaEstimate& k) {
    return {{"lower", k.lower},
            {"upper", k.upper},
            {"grid_delta", k.grid_delta},
            {"ratio_lipschitz", k.ratio_lipschitz},
            {"argmax_point", to_json(k.argmax_point)}};
}

Json grid_json(const GridSpec& spec, double delta) {
    return {{"radial", spec.radial}, {"angular", spec.angular}, {"delta", delta}};
}

Json grid_json(const PolydiscGrid& grid) { return grid_json(grid.spec(), grid.covering_radius()); }

Json to_json(const MarginReport& m) {
    return {{"k", m.k.hi},
            {"g", m.g.hi},
            {"margin", m.margin},
            {"k_bound", to_json(m.k)},
            {"g_bound", to_json(m.g)},
            {"stabilizes_nominal", std::string(to_string(m.stabilizes_nominal.status))},
            {"grid_delta", m.grid_delta}};
}

Json to_json(const SweepRow& row) {
    return {{"alpha", row.alpha},
            {"kappa_lower", row.kappa_lower},
            {"kappa_upper", row.kappa_upper},
            {"analytic_bound", row.analytic_bound},
            {"margin", row.margin},
            {"verdict", std::string(to_string(row.verdict))},
            {"independent_check", std::string(to_string(row.independent))},
            {"grid", grid_json(row.grid, row.grid_delta)}};
}

Json to_json(const TheoremReport& r) {
    return {{"trials", r.trials},
            {"seed", r.seed},
            {"margin", r.margin},
            {"grid_delta", r.grid_delta},
            {"certified_stable", r.certified_stable},
            {"certified_not_stable", r.certified_not_stable},
            {"certified_inconclusive", r.certified_inconclusive},
            {"not_certified_stable", r.not_certified_stable},
            {"not_certified_unstable", r.not_certified_unstable},
            {"not_certified_inconclusive", r.not_certified_inconclusive},
            {"coprimeness_rejected", r.coprimeness_rejected}};
}

}  // namespace chordal::io
