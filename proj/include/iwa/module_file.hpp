/*
   Copyright 2026 The iwa Authors

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

#ifndef IWA_MODULE_FILE_HPP
#define IWA_MODULE_FILE_HPP

#include <initializer_list>
#include <limits>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "tower.hpp"

namespace iwa {

using Json = nlohmann::ordered_json;

/// Parsed input document: the prime plus one payload.
struct ModuleFile {
    std::uint64_t p = 5;
    std::variant<FiniteWTModule, ElementaryModule, PresentedModule, std::vector<TowerLevel>> payload;

    std::string kind() const {
        switch (payload.index()) {
            case 0: return "finite";
            case 1: return "elementary";
            case 2: return "presented";
            default: return "tower";
        }
    }
};

namespace io {

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::InvalidInput, (where.empty() ? std::string("document") : where) + ": " + what);
}

inline void check_keys(const Json& j, const std::string& where, std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) bad(where, "expected an object");
    std::set<std::string> allowed;
    for (const char* k : required) {
        allowed.insert(k);
        if (!j.contains(k)) bad(where, std::string("missing field '") + k + "'");
    }
    for (const char* k : optional) allowed.insert(k);
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) bad(where, "unknown field '" + k + "'");
}

inline std::string at(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }
inline std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

inline Json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return Json(static_cast<std::int64_t>(v));
    return Json(v.str());
}

inline BigInt big_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) bad(where, "not an integer: '" + s + "'");
        return BigInt(s);
    }
    bad(where, "expected an integer");
}

inline std::int64_t int_from_json(const Json& j, const std::string& where, std::int64_t lo, std::int64_t hi) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) bad(where, "out of range");
    const auto v = j.get<std::int64_t>();
    if (v < lo || v > hi) bad(where, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

inline Json poly_to_json(const IntPoly& f) {
    Json a = Json::array();
    for (const auto& c : f.coeffs()) a.push_back(big_to_json(c));
    return a;
}

inline IntPoly poly_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected a coefficient list");
    std::vector<BigInt> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(big_from_json(j[i], at(where, i)));
    return IntPoly(std::move(c));
}

inline Json factor_to_json(const Factor& f) {
    if (auto pp = std::get_if<PPower>(&f)) return Json{{"kind", "p-power"}, {"exp", pp->f}};
    if (auto g = std::get_if<Generic>(&f)) return Json{{"kind", "generic"}, {"exp", g->e}, {"coeffs", poly_to_json(g->g.poly())}};
    const auto& c = std::get<Cyclo>(f);
    return Json{{"kind", "cyclo"}, {"level", c.a}, {"exp", c.e}};
}

inline Factor factor_from_json(const Json& j, const std::string& where, std::uint64_t p) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) bad(where, "factor needs a string 'kind'");
    const auto kind = j["kind"].get<std::string>();
    if (kind == "p-power") {
        check_keys(j, where, {"kind", "exp"});
        return PPower{static_cast<int>(int_from_json(j["exp"], at(where, "exp"), 1, 1000))};
    }
    if (kind == "generic") {
        check_keys(j, where, {"kind", "exp", "coeffs"});
        IntPoly g = poly_from_json(j["coeffs"], at(where, "coeffs"));
        try {
            return Generic{DistPoly(std::move(g), p), static_cast<int>(int_from_json(j["exp"], at(where, "exp"), 1, 1000))};
        } catch (const Error& e) {
            bad(at(where, "coeffs"), e.what());
        }
    }
    if (kind == "cyclo") {
        check_keys(j, where, {"kind", "level", "exp"});
        return Cyclo{static_cast<int>(int_from_json(j["level"], at(where, "level"), 0, 64)),
                     static_cast<int>(int_from_json(j["exp"], at(where, "exp"), 1, 1000))};
    }
    bad(at(where, "kind"), "unknown factor kind '" + kind + "' (expected p-power, generic or cyclo)");
}

inline Json finite_to_json(const FiniteWTModule& M) {
    Json t = Json::array();
    for (const auto& row : M.t_action) t.push_back(row);
    return Json{{"orders", M.orders}, {"t_action", t}};
}

inline FiniteWTModule finite_from_json(const Json& j, const std::string& where, std::uint64_t p) {
    if (!j.contains("orders") || !j["orders"].is_array()) bad(at(where, "orders"), "expected a list of orders");
    if (!j.contains("t_action") || !j["t_action"].is_array()) bad(at(where, "t_action"), "expected a matrix");
    FiniteWTModule M;
    M.p = p;
    for (std::size_t i = 0; i < j["orders"].size(); ++i)
        M.orders.push_back(static_cast<int>(int_from_json(j["orders"][i], at(at(where, "orders"), i), 1, 60)));
    const auto& t = j["t_action"];
    if (t.size() != M.orders.size()) bad(at(where, "t_action"), "needs one row per generator");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!t[i].is_array() || t[i].size() != M.orders.size()) bad(at(at(where, "t_action"), i), "row has the wrong length");
        std::vector<std::uint64_t> row;
        for (std::size_t c = 0; c < t[i].size(); ++c) {
            const auto w = at(at(at(where, "t_action"), i), c);
            if (ipow_sat(p, M.orders[c]) >= (u128(1) << 62)) bad(w, "order too large");
            const auto v = big_from_json(t[i][c], w);
            const BigInt m = BigInt(static_cast<std::uint64_t>(ipow_sat(p, M.orders[c])));
            BigInt r = v % m;
            if (r < 0) r += m;
            row.push_back(static_cast<std::uint64_t>(r));
        }
        M.t_action.push_back(std::move(row));
    }
    const auto sorted = sorted_by_order(M);
    if (!sorted.well_defined()) bad(where, "T-action is not well defined for these orders");
    return sorted;
}

}  // namespace io

inline Json to_json(const ModuleFile& f) {
    Json j;
    j["p"] = f.p;
    j["kind"] = f.kind();
    if (auto E = std::get_if<ElementaryModule>(&f.payload)) {
        j["free_rank"] = E->free_rank();
        Json fs = Json::array();
        for (const auto& fac : E->factors()) fs.push_back(io::factor_to_json(fac));
        j["factors"] = fs;
    } else if (auto X = std::get_if<PresentedModule>(&f.payload)) {
        j["rows"] = X->rows();
        j["cols"] = X->cols();
        Json rows = Json::array();
        for (std::size_t i = 0; i < X->rows(); ++i) {
            Json r = Json::array();
            for (std::size_t c = 0; c < X->cols(); ++c) r.push_back(io::poly_to_json(X->entry(i, c)));
            rows.push_back(r);
        }
        j["entries"] = rows;
    } else if (auto M = std::get_if<FiniteWTModule>(&f.payload)) {
        const Json b = io::finite_to_json(*M);
        j["orders"] = b["orders"];
        j["t_action"] = b["t_action"];
    } else {
        Json lv = Json::array();
        for (const auto& L : std::get<std::vector<TowerLevel>>(f.payload)) {
            Json l{{"n", L.n}, {"divisible_corank", L.divisible_corank}, {"defect_in", L.defect_in}, {"defect_out", L.defect_out}};
            const Json b = io::finite_to_json(L.finite_part);
            l["orders"] = b["orders"];
            l["t_action"] = b["t_action"];
            lv.push_back(l);
        }
        j["levels"] = lv;
    }
    return j;
}

/// Parses a document; the profile supplies M, D, N_max and must agree with the document's p.
inline ModuleFile module_from_json(const Json& j, PrecisionProfile prof) {
    using namespace io;
    if (!j.is_object()) bad("", "expected a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string()) bad("kind", "missing or not a string");
    if (!j.contains("p")) bad("p", "missing");
    const auto p = static_cast<std::uint64_t>(int_from_json(j["p"], "p", 3, 1 << 20));
    prof.p = p;
    prof.validate();
    const auto kind = j["kind"].get<std::string>();
    ModuleFile f;
    f.p = p;
    if (kind == "elementary") {
        check_keys(j, "", {"p", "kind", "free_rank", "factors"});
        const int r = static_cast<int>(int_from_json(j["free_rank"], "free_rank", 0, 1000));
        if (!j["factors"].is_array()) bad("factors", "expected a list");
        std::vector<Factor> fs;
        for (std::size_t i = 0; i < j["factors"].size(); ++i) fs.push_back(factor_from_json(j["factors"][i], at("factors", i), p));
        f.payload = ElementaryModule(prof, r, std::move(fs));
    } else if (kind == "presented") {
        check_keys(j, "", {"p", "kind", "rows", "cols", "entries"});
        const auto R = static_cast<std::size_t>(int_from_json(j["rows"], "rows", 0, 1000));
        const auto C = static_cast<std::size_t>(int_from_json(j["cols"], "cols", 0, 1000));
        const auto& e = j["entries"];
        if (!e.is_array() || e.size() != R) bad("entries", "needs one row per generator");
        std::vector<IntPoly> ent;
        for (std::size_t i = 0; i < R; ++i) {
            if (!e[i].is_array() || e[i].size() != C) bad(at("entries", i), "row has the wrong length");
            for (std::size_t c = 0; c < C; ++c) ent.push_back(poly_from_json(e[i][c], at(at("entries", i), c)));
        }
        f.payload = PresentedModule(prof, R, C, std::move(ent));
    } else if (kind == "finite") {
        check_keys(j, "", {"p", "kind", "orders", "t_action"});
        f.payload = finite_from_json(j, "", p);
    } else if (kind == "tower") {
        check_keys(j, "", {"p", "kind", "levels"});
        if (!j["levels"].is_array()) bad("levels", "expected a list");
        std::vector<TowerLevel> levels;
        for (std::size_t i = 0; i < j["levels"].size(); ++i) {
            const auto& l = j["levels"][i];
            const auto w = at("levels", i);
            check_keys(l, w, {"n", "divisible_corank", "defect_in", "defect_out", "orders", "t_action"});
            TowerLevel L;
            L.n = static_cast<int>(int_from_json(l["n"], at(w, "n"), 1, 64));
            if (L.n != static_cast<int>(i) + 1) bad(at(w, "n"), "levels must be listed as 1, 2, 3, ...");
            L.divisible_corank = static_cast<int>(int_from_json(l["divisible_corank"], at(w, "divisible_corank"), 0, 1 << 30));
            L.defect_in = static_cast<int>(int_from_json(l["defect_in"], at(w, "defect_in"), 0, 1 << 20));
            L.defect_out = static_cast<int>(int_from_json(l["defect_out"], at(w, "defect_out"), 0, 1 << 20));
            L.finite_part = finite_from_json(l, w, p);
            levels.push_back(std::move(L));
        }
        f.payload = std::move(levels);
    } else {
        bad("kind", "unknown kind '" + kind + "' (expected elementary, presented, finite or tower)");
    }
    return f;
}

inline ModuleFile parse_module_file(const std::string& text, const PrecisionProfile& prof) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
    return module_from_json(j, prof);
}

inline std::string serialize(const ModuleFile& f) { return to_json(f).dump(2) + "\n"; }

}  // namespace iwa

#endif
