#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "mixed.hpp"
#include "trace.hpp"

namespace fairdiv {

// ordered_json keeps fields in the order we emit them, so serialized files
// are byte-stable across runs.
using Json = nlohmann::ordered_json;

using AnyInstance = std::variant<IndivisibleInstance, MixedInstance>;

constexpr int kSchemaVersion = 1;

namespace detail {

inline const Json& need_field(const Json& obj, const std::string& key,
                              const std::string& where) {
    require(obj.is_object(), where + " must be a JSON object");
    auto it = obj.find(key);
    require(it != obj.end(), where + " is missing field '" + key + "'");
    return *it;
}

inline int int_field(const Json& obj, const std::string& key, const std::string& where) {
    const Json& v = need_field(obj, key, where);
    require(v.is_number_integer(), where + "." + key + " must be an integer");
    return v.get<int>();
}

inline std::string string_value(const Json& v, const std::string& where) {
    require(v.is_string(), where + " must be a string");
    return v.get<std::string>();
}

// Rationals travel as "p" or "p/q" strings, never as floats.
inline Rational rational_value(const Json& v, const std::string& where) {
    try {
        return parse_rational(string_value(v, where));
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

inline std::vector<Rational> rational_array(const Json& v, const std::string& where) {
    require(v.is_array(), where + " must be an array");
    std::vector<Rational> out;
    out.reserve(v.size());
    for (std::size_t t = 0; t < v.size(); ++t)
        out.push_back(rational_value(v[t], where + "[" + std::to_string(t) + "]"));
    return out;
}

inline Json rational_strings(const std::vector<Rational>& xs) {
    Json arr = Json::array();
    for (const auto& x : xs) arr.push_back(to_string(x));
    return arr;
}

inline const char* divisible_kind_name(DivisibleKind k) {
    return k == DivisibleKind::Cake ? "cake" : "bad-cake";
}

inline DivisibleKind divisible_kind_from_name(const std::string& s) {
    if (s == "cake") return DivisibleKind::Cake;
    if (s == "bad-cake") return DivisibleKind::BadCake;
    throw InputError("unknown divisibleKind '" + s + "'");
}

inline Json valuation_to_json(const Valuation& v) {
    Json out;
    if (v.kind() == ValuationKind::Additive) {
        out["type"] = "additive";
        out["values"] = rational_strings(v.additive_values());
    } else {
        out["type"] = "table";
        out["values"] = rational_strings(v.table_values());
    }
    return out;
}

inline Valuation valuation_from_json(const Json& v, int m, const std::string& where) {
    std::string type = string_value(need_field(v, "type", where), where + ".type");
    auto values = rational_array(need_field(v, "values", where), where + ".values");
    if (type == "additive") {
        require(static_cast<int>(values.size()) == m,
                where + ".values must hold exactly m entries");
        return Valuation::additive(std::move(values));
    }
    if (type == "table") {
        require(m <= kMaxTableItems, where + ": table valuations support at most 20 items");
        require(values.size() == (std::size_t{1} << m),
                where + ".values must hold exactly 2^m entries");
        return Valuation::table(m, std::move(values));
    }
    throw InputError(where + ".type must be 'additive' or 'table'");
}

inline Json density_to_json(const PiecewiseConstantDensity& f) {
    Json out;
    out["breakpoints"] = rational_strings(f.breakpoints());
    out["levels"] = rational_strings(f.levels());
    return out;
}

inline PiecewiseConstantDensity density_from_json(const Json& v, const std::string& where) {
    auto breakpoints =
        rational_array(need_field(v, "breakpoints", where), where + ".breakpoints");
    auto levels = rational_array(need_field(v, "levels", where), where + ".levels");
    return PiecewiseConstantDensity(std::move(breakpoints), std::move(levels));
}

} // namespace detail

inline Json instance_to_json(const IndivisibleInstance& inst) {
    Json out;
    out["schema"] = kSchemaVersion;
    out["kind"] = "indivisible";
    out["n"] = inst.agents();
    out["m"] = inst.items();
    Json vals = Json::array();
    for (int i = 0; i < inst.agents(); ++i)
        vals.push_back(detail::valuation_to_json(inst.valuation(i)));
    out["valuations"] = std::move(vals);
    return out;
}

inline Json instance_to_json(const MixedInstance& inst) {
    Json out = instance_to_json(inst.indivisible());
    out["kind"] = "mixed";
    out["divisibleKind"] = detail::divisible_kind_name(inst.kind());
    Json densities = Json::array();
    for (int i = 0; i < inst.agents(); ++i)
        densities.push_back(detail::density_to_json(inst.density(i)));
    out["densities"] = std::move(densities);
    return out;
}

inline std::string serialize_instance(const AnyInstance& inst) {
    Json j = std::visit([](const auto& x) { return instance_to_json(x); }, inst);
    return j.dump(2) + "\n";
}

inline AnyInstance instance_from_json(const Json& j) {
    require(detail::int_field(j, "schema", "instance") == kSchemaVersion,
            "unsupported schema version");
    std::string kind =
        detail::string_value(detail::need_field(j, "kind", "instance"), "instance.kind");
    int n = detail::int_field(j, "n", "instance");
    int m = detail::int_field(j, "m", "instance");
    require(n >= 1, "instance.n must be at least 1");
    require(m >= 0, "instance.m must be non-negative");
    const Json& vals = detail::need_field(j, "valuations", "instance");
    require(vals.is_array() && static_cast<int>(vals.size()) == n,
            "instance.valuations must hold exactly n entries");
    std::vector<Valuation> valuations;
    valuations.reserve(n);
    for (int i = 0; i < n; ++i)
        valuations.push_back(detail::valuation_from_json(
            vals[i], m, "instance.valuations[" + std::to_string(i) + "]"));
    IndivisibleInstance items(std::move(valuations));

    if (kind == "indivisible") return items;
    require(kind == "mixed", "instance.kind must be 'indivisible' or 'mixed'");
    DivisibleKind dk = detail::divisible_kind_from_name(detail::string_value(
        detail::need_field(j, "divisibleKind", "instance"), "instance.divisibleKind"));
    const Json& dens = detail::need_field(j, "densities", "instance");
    require(dens.is_array() && static_cast<int>(dens.size()) == n,
            "instance.densities must hold exactly n entries");
    std::vector<PiecewiseConstantDensity> densities;
    densities.reserve(n);
    for (int i = 0; i < n; ++i)
        densities.push_back(detail::density_from_json(
            dens[i], "instance.densities[" + std::to_string(i) + "]"));
    return MixedInstance(std::move(items), dk, std::move(densities));
}

inline AnyInstance parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return instance_from_json(j);
}

// Allocation files: 1-based item indices per bundle; cake pieces, when
// present, are per-agent lists of "lo..hi" rational intervals.
struct AllocationFile {
    Allocation items;
    std::optional<std::vector<CakePiece>> cake;
};

inline Json allocation_to_json(const Allocation& a) {
    Json out;
    out["schema"] = kSchemaVersion;
    Json bundles = Json::array();
    for (const auto& b : a.bundles) {
        Json one = Json::array();
        for (int j : b) one.push_back(j + 1);
        bundles.push_back(std::move(one));
    }
    out["bundles"] = std::move(bundles);
    return out;
}

inline Json allocation_to_json(const MixedAllocation& a) {
    Json out = allocation_to_json(a.items);
    Json cake = Json::array();
    for (const auto& piece : a.cake) {
        Json one = Json::array();
        for (const auto& iv : piece.intervals) one.push_back(detail::interval_text(iv));
        cake.push_back(std::move(one));
    }
    out["cake"] = std::move(cake);
    return out;
}

inline std::string serialize_allocation(const Allocation& a) {
    return allocation_to_json(a).dump(2) + "\n";
}

inline std::string serialize_allocation(const MixedAllocation& a) {
    return allocation_to_json(a).dump(2) + "\n";
}

inline AllocationFile parse_allocation(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    require(detail::int_field(j, "schema", "allocation") == kSchemaVersion,
            "unsupported schema version");
    const Json& bundles = detail::need_field(j, "bundles", "allocation");
    require(bundles.is_array(), "allocation.bundles must be an array");
    AllocationFile out;
    out.items = Allocation(static_cast<int>(bundles.size()));
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        std::string where = "allocation.bundles[" + std::to_string(i) + "]";
        require(bundles[i].is_array(), where + " must be an array");
        for (const Json& v : bundles[i]) {
            require(v.is_number_integer(), where + " entries must be integers");
            int item = v.get<int>();
            require(item >= 1, where + " entries are 1-based item indices");
            out.items.bundles[i].push_back(item - 1);
        }
        std::sort(out.items.bundles[i].begin(), out.items.bundles[i].end());
        require(std::adjacent_find(out.items.bundles[i].begin(),
                                   out.items.bundles[i].end()) == out.items.bundles[i].end(),
                where + " repeats an item");
    }
    if (j.contains("cake")) {
        const Json& cake = j["cake"];
        require(cake.is_array() && cake.size() == bundles.size(),
                "allocation.cake must hold one piece list per agent");
        std::vector<CakePiece> pieces;
        for (std::size_t i = 0; i < cake.size(); ++i) {
            std::string where = "allocation.cake[" + std::to_string(i) + "]";
            require(cake[i].is_array(), where + " must be an array");
            CakePiece p;
            for (const Json& v : cake[i])
                p.intervals.push_back(
                    detail::interval_from_text(detail::string_value(v, where)));
            p.normalize();
            pieces.push_back(std::move(p));
        }
        out.cake = std::move(pieces);
    }
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "cannot open file '" + path + "' for writing");
    out << text;
    require(static_cast<bool>(out), "failed writing file '" + path + "'");
}

inline AnyInstance load_instance(const std::string& path) {
    try {
        return parse_instance(read_text_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline AllocationFile load_allocation(const std::string& path) {
    try {
        return parse_allocation(read_text_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

} // namespace fairdiv
