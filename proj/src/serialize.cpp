/*
   Copyright 2026 The confal Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "confal/serialize.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace confal {

using nlohmann::json;

namespace {

constexpr const char* kAlgebraFormat = "confal-algebra-1";
constexpr const char* kModuleFormat = "confal-module-1";

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string string_at(const json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get<std::string>();
}

Poly poly_at(const json& j, const std::string& where) {
    const std::string text = string_at(j, where);
    try {
        return Poly::parse(text);
    } catch (const PolyParseError& e) {
        bad(where, std::string("bad polynomial \"") + text + "\": " + e.what());
    }
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("definition file: ") + e.what());
    }
}

TruncationPolicy policy_from(const std::string& s, const std::string& where) {
    if (s == to_string(TruncationPolicy::ErrorOnOverflow)) return TruncationPolicy::ErrorOnOverflow;
    if (s == to_string(TruncationPolicy::TruncateToZero)) return TruncationPolicy::TruncateToZero;
    bad(where, "unknown policy '" + s + "'");
}

std::string combination_where(const std::string& base, const std::string& key) { return base + "." + key; }

}  // namespace

Rat parse_rat(std::string_view text, const std::string& what) {
    try {
        return Rat::parse(text);
    } catch (const std::invalid_argument& e) {
        throw InputError(what + ": " + e.what());
    }
}

json algebra_to_json(const ConformalAlgebra& alg) {
    const auto& names = alg.generator_names();
    json brackets = json::array();
    for (GenId a = 0; a < alg.size(); ++a)
        for (GenId b = 0; b < alg.size(); ++b) {
            if (!alg.defined(a, b)) continue;
            const LambdaValue& v = alg.structure(a, b);
            if (v.is_zero() && alg.policy() == TruncationPolicy::TruncateToZero) continue;
            json value = json::object();
            for (const auto& [g, c] : v.terms()) value[names[g]] = c.str();
            brackets.push_back({{"pair", {names[a], names[b]}}, {"value", value}});
        }
    json j = {{"format", kAlgebraFormat},
              {"name", alg.name()},
              {"generators", names},
              {"policy", to_string(alg.policy())},
              {"brackets", brackets}};
    if (alg.block_p()) j["block_p"] = alg.block_p()->str();
    return j;
}

ConformalAlgebra algebra_from_json(const json& j) {
    if (string_at(field(j, "format", "algebra"), "format") != kAlgebraFormat) bad("format", "expected " + std::string(kAlgebraFormat));
    const std::string name = string_at(field(j, "name", "algebra"), "name");
    const json& gens = field(j, "generators", "algebra");
    if (!gens.is_array() || gens.empty()) bad("generators", "expected a non-empty array");
    std::vector<std::string> names;
    std::map<std::string, GenId> index;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        names.push_back(string_at(gens[i], "generators[" + std::to_string(i) + "]"));
        if (!index.emplace(names.back(), i).second) bad("generators", "duplicate generator '" + names.back() + "'");
    }
    const TruncationPolicy policy = policy_from(string_at(field(j, "policy", "algebra"), "policy"), "policy");
    std::optional<Rat> block_p;
    if (j.contains("block_p")) block_p = parse_rat(string_at(j["block_p"], "block_p"), "block_p");

    const std::size_t n = names.size();
    ConformalAlgebra::Table table(n, std::vector<std::optional<LambdaValue>>(n));
    if (policy == TruncationPolicy::TruncateToZero)
        for (auto& row : table)
            for (auto& e : row) e = LambdaValue{};
    const json& brackets = field(j, "brackets", "algebra");
    if (!brackets.is_array()) bad("brackets", "expected an array");
    for (std::size_t i = 0; i < brackets.size(); ++i) {
        const std::string where = "brackets[" + std::to_string(i) + "]";
        const json& pair = field(brackets[i], "pair", where);
        if (!pair.is_array() || pair.size() != 2) bad(where + ".pair", "expected two generator names");
        GenId ab[2];
        for (int s = 0; s < 2; ++s) {
            const std::string g = string_at(pair[s], where + ".pair");
            auto it = index.find(g);
            if (it == index.end()) bad(where + ".pair", "unknown generator '" + g + "'");
            ab[s] = it->second;
        }
        const json& value = field(brackets[i], "value", where);
        if (!value.is_object()) bad(where + ".value", "expected an object");
        LambdaValue v;
        for (const auto& [g, c] : value.items()) {
            auto it = index.find(g);
            if (it == index.end()) bad(where + ".value", "unknown generator '" + g + "'");
            v.add(it->second, poly_at(c, combination_where(where + ".value", g)));
        }
        table[ab[0]][ab[1]] = std::move(v);
    }
    try {
        return ConformalAlgebra(name, names, policy, std::move(table), block_p);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("algebra: ") + e.what());
    }
}

ConformalAlgebra parse_algebra(std::string_view text) { return algebra_from_json(parse_json(text)); }

json module_to_json(const ConformalModule& mod, const ConformalAlgebra& alg) {
    json actions = json::array();
    for (const auto& [key, value] : mod.action()) {
        json v = json::object();
        for (const auto& [b, c] : value.terms()) v[std::to_string(b)] = c.str();
        actions.push_back({{"generator", alg.generator_names().at(key.first)}, {"basis", key.second}, {"value", v}});
    }
    json j = {{"format", kModuleFormat},
              {"name", mod.name()},
              {"kind", to_string(mod.kind())},
              {"rank", mod.rank()},
              {"actions", actions}};
    if (mod.kind() == ModuleKind::ScalarDel) j["alpha"] = mod.alpha().str();
    return j;
}

ConformalModule module_from_json(const json& j, const ConformalAlgebra& alg) {
    if (string_at(field(j, "format", "module"), "format") != kModuleFormat) bad("format", "expected " + std::string(kModuleFormat));
    const std::string name = string_at(field(j, "name", "module"), "name");
    const std::string kind_text = string_at(field(j, "kind", "module"), "kind");
    ModuleKind kind;
    if (kind_text == "FREE") kind = ModuleKind::Free;
    else if (kind_text == "SCALAR_DEL") kind = ModuleKind::ScalarDel;
    else bad("kind", "expected FREE or SCALAR_DEL");
    const json& rank_j = field(j, "rank", "module");
    if (!rank_j.is_number_unsigned() || rank_j.get<std::size_t>() == 0) bad("rank", "expected a positive integer");
    const std::size_t rank = rank_j.get<std::size_t>();
    Rat alpha(0);
    if (kind == ModuleKind::ScalarDel) alpha = parse_rat(string_at(field(j, "alpha", "module"), "alpha"), "alpha");

    std::map<std::string, GenId> index;
    for (GenId g = 0; g < alg.size(); ++g) index.emplace(alg.generator_names()[g], g);
    ConformalModule::ActionTable table;
    const json& actions = field(j, "actions", "module");
    if (!actions.is_array()) bad("actions", "expected an array");
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const std::string where = "actions[" + std::to_string(i) + "]";
        const std::string g = string_at(field(actions[i], "generator", where), where + ".generator");
        auto it = index.find(g);
        if (it == index.end()) bad(where + ".generator", "unknown generator '" + g + "'");
        const json& basis = field(actions[i], "basis", where);
        if (!basis.is_number_unsigned()) bad(where + ".basis", "expected a basis index");
        const json& value = field(actions[i], "value", where);
        if (!value.is_object()) bad(where + ".value", "expected an object");
        ModuleElement v;
        for (const auto& [b, c] : value.items()) {
            std::size_t idx = 0;
            try {
                idx = std::stoul(b);
            } catch (const std::exception&) {
                bad(where + ".value", "basis key '" + b + "' is not an index");
            }
            v.add(idx, poly_at(c, combination_where(where + ".value", b)));
        }
        table[{it->second, basis.get<std::size_t>()}] = std::move(v);
    }
    try {
        return ConformalModule(name, kind, rank, std::move(table), alpha);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("module: ") + e.what());
    }
}

ConformalModule parse_module(std::string_view text, const ConformalAlgebra& alg) {
    return module_from_json(parse_json(text), alg);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, value >>= 4) out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    return out;
}

std::string canonical_table_text(const ConformalAlgebra& alg) {
    std::ostringstream os;
    const auto& names = alg.generator_names();
    for (GenId a = 0; a < alg.size(); ++a)
        for (GenId b = 0; b < alg.size(); ++b)
            if (alg.defined(a, b)) os << '[' << names[a] << ',' << names[b] << "]=" << alg.structure(a, b).str(names) << '\n';
    return os.str();
}

}  // namespace confal
