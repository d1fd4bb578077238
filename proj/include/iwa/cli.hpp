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

#ifndef IWA_CLI_HPP
#define IWA_CLI_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "finite_dual.hpp"
#include "module_file.hpp"
#include "presented.hpp"
#include "tower.hpp"

namespace iwa::cli {

struct Options {
    std::optional<std::uint64_t> p;
    int M = 16;
    int D = 128;
    int levels = 4;
    std::uint64_t seed = 0;
    int noise = 0;
    bool verify = false;
};

/// A named input document (the name is echoed, never opened here).
struct Input {
    std::string source;
    std::string text;
};

struct Outcome {
    Json report;
    int exit_code = 0;
};

inline int exit_code_for(const Error& e) {
    if (e.is_precision()) return 2;
    if (e.kind() == ErrorKind::InvalidInput || e.kind() == ErrorKind::InvalidLimit) return 3;
    return 1;
}

inline Json conventions() {
    return Json{
        {"growth_exponent", "log_p sizes follow e_n = mu*p^(n-1) + lambda*n + nu, with p^(n-1) = deg omega_n"},
        {"omega", "omega_n = (1+T)^(p^(n-1)) - 1, nu_a = omega_(a+1)/omega_a, nu_0 = T"},
        {"transitions", "G-limit along the projections X/omega_(n+1) -> X/omega_n; F-colimit along multiplication by omega_N/omega_m"},
        {"twist", "iota: T -> -T/(1+T) (inverse of the generator)"},
        {"sizes", "all group sizes are reported as log_p"},
    };
}

namespace detail {

inline PrecisionProfile profile_for(const Options& o, std::uint64_t p) {
    PrecisionProfile prof{p, o.M, o.D, o.levels};
    prof.validate();
    return prof;
}

inline std::uint64_t document_prime(const Json& j) {
    if (!j.is_object() || !j.contains("p")) throw Error(ErrorKind::InvalidInput, "p: missing");
    return static_cast<std::uint64_t>(io::int_from_json(j["p"], "p", 3, 1 << 20));
}

/// Parses every input under one shared prime (from --p or the first document).
class Loader {
   public:
    Loader(const Options& o, const std::vector<Input>& inputs) : opt_(o) {
        for (const auto& in : inputs) {
            Json j;
            try {
                j = Json::parse(in.text);
            } catch (const nlohmann::json::parse_error& e) {
                throw Error(ErrorKind::InvalidInput, in.source + ": malformed JSON: " + e.what());
            }
            // a saved "tower simulate" report carries its tower under result.tower
            if (j.is_object() && j.contains("result") && j["result"].is_object() && j["result"].contains("tower"))
                j = j["result"]["tower"];
            const auto p = document_prime(j);
            if (!p_) p_ = o.p.value_or(p);
            if (p != *p_)
                throw Error(ErrorKind::InvalidInput, in.source + ": p = " + std::to_string(p) + " conflicts with p = " + std::to_string(*p_));
            docs_.push_back(j);
            sources_.push_back(in.source);
        }
        if (!p_) p_ = o.p.value_or(5);
        prof_ = profile_for(o, *p_);
        for (std::size_t i = 0; i < docs_.size(); ++i) {
            try {
                files_.push_back(module_from_json(docs_[i], prof_));
            } catch (const Error& e) {
                throw Error(e.kind(), sources_[i] + ": " + strip_kind(e));
            }
        }
    }

    const PrecisionProfile& profile() const { return prof_; }
    const ModuleFile& file(std::size_t i) const { return files_.at(i); }
    std::size_t size() const { return files_.size(); }

    Json echo() const {
        Json a = Json::array();
        for (std::size_t i = 0; i < files_.size(); ++i) a.push_back(Json{{"source", sources_[i]}, {"document", to_json(files_[i])}});
        return a;
    }

    static std::string strip_kind(const Error& e) {
        const std::string w = e.what(), tag = std::string(to_string(e.kind())) + ": ";
        return w.rfind(tag, 0) == 0 ? w.substr(tag.size()) : w;
    }

   private:
    Options opt_;
    std::optional<std::uint64_t> p_;
    PrecisionProfile prof_;
    std::vector<Json> docs_;
    std::vector<std::string> sources_;
    std::vector<ModuleFile> files_;
};

template <class T>
const T& expect(const ModuleFile& f, const char* what) {
    if (auto v = std::get_if<T>(&f.payload)) return *v;
    throw Error(ErrorKind::InvalidInput, std::string("this command needs ") + what + " input, got kind '" + f.kind() + "'");
}

inline Json fit_json(const GrowthFit& f) {
    return Json{{"mu", f.mu}, {"lambda", f.lambda}, {"nu", f.nu}, {"stable_from", f.stable_from}};
}

inline Json module_json(const ElementaryModule& E) {
    const auto inv = invariants(E);
    return Json{{"module", E.to_string()},
                {"document", to_json(ModuleFile{E.profile().p, E})},
                {"rank", inv.rank},
                {"mu", inv.mu},
                {"lambda", inv.lambda}};
}

/// Rank from the growth of the free W-corank, once both last levels are past every cyclotomic jump.
inline std::optional<int> presented_rank(const PresentedModule& X, int N, std::vector<int>& coranks) {
    coranks.clear();
    for (int n = 1; n <= N; ++n) coranks.push_back(quotient_module(X, n).free_W_corank);
    if (N < 2) return std::nullopt;
    const auto p = X.profile().p;
    const auto step = static_cast<int>(ipow_sat(p, N - 1) - ipow_sat(p, N - 2));
    const int diff = coranks[N - 1] - coranks[N - 2];
    if (diff % step != 0) return std::nullopt;
    return diff / step;
}

inline Json cmd_invariants(const Loader& L, const Options& o, int& code) {
    code = 0;
    const auto& f = L.file(0);
    if (auto E = std::get_if<ElementaryModule>(&f.payload)) {
        const auto inv = invariants(*E);
        Json cf = Json::array();
        for (const auto& fac : inv.char_factors) cf.push_back(io::factor_to_json(fac));
        const auto gl = growth_law(*E);
        return Json{{"method", "closed form"},
                    {"module", E->to_string()},
                    {"rank", inv.rank},
                    {"mu", inv.mu},
                    {"lambda", inv.lambda},
                    {"characteristic_factors", cf},
                    {"growth_law_valid", gl.valid}};
    }
    const auto& X = expect<PresentedModule>(f, "an elementary or presented");
    std::vector<int> cor;
    const auto rank = presented_rank(X, o.levels, cor);
    const auto seq = torsion_size_seq(X, o.levels);
    const auto fit = fit_growth(seq, X.profile().p);
    // cyclotomic factors show up as W-free corank beyond rank * p^(N-1) rather than as torsion growth
    Json lambda = nullptr;
    if (rank) lambda = fit.lambda + cor.back() - *rank * static_cast<std::int64_t>(ipow_sat(X.profile().p, o.levels - 1));
    return Json{{"method", "growth recovery"},
                {"rank", rank ? Json(*rank) : Json(nullptr)},
                {"mu", fit.mu},
                {"lambda", lambda},
                {"torsion_growth_lambda", fit.lambda},
                {"nu", fit.nu},
                {"stable_from", fit.stable_from},
                {"free_W_coranks", cor},
                {"torsion_log_sizes", seq}};
}

inline Json cmd_functor(const Loader& L, const Options& o, bool F, int& code) {
    code = 0;
    const auto& f = L.file(0);
    const int N = o.levels;
    auto fitted = [&](const PresentedModule& X) { return F ? colimit_F_invariants(X, N) : limit_G_invariants(X, N); };
    if (auto E = std::get_if<ElementaryModule>(&f.payload)) {
        const auto R = F ? functor_F(*E) : functor_G(*E);
        Json r{{"functor", F ? "F" : "G"}, {"method", "closed form"}, {"result", module_json(R)}};
        if (o.verify) {
            const auto inv = invariants(R);
            Json v{{"levels", N}};
            try {
                const auto fit = fitted(present_elementary(*E));
                v["fit"] = fit_json(fit);
                v["oracle_match"] = fit.mu == inv.mu && fit.lambda == inv.lambda;
            } catch (const Error& e) {
                if (e.is_precision()) throw;
                v["fit"] = nullptr;
                v["fit_error"] = e.what();
                v["oracle_match"] = false;
            }
            if (!v["oracle_match"].get<bool>()) code = 1;
            r["verify"] = v;
        }
        return r;
    }
    const auto& X = expect<PresentedModule>(f, "an elementary or presented");
    const auto fit = fitted(X);
    Json r{{"functor", F ? "F" : "G"}, {"method", "fitted"}, {"levels", N}, {"mu", fit.mu}, {"lambda", fit.lambda}, {"fit", fit_json(fit)}};
    if (o.verify) {
        // the twist preserves mu and lambda, so both functors must agree on them
        Json v;
        try {
            const auto other = F ? limit_G_invariants(X, N) : colimit_F_invariants(X, N);
            v["other_functor_fit"] = fit_json(other);
            v["oracle_match"] = other.mu == fit.mu && other.lambda == fit.lambda;
        } catch (const Error& e) {
            if (e.is_precision()) throw;
            v["other_functor_fit"] = nullptr;
            v["fit_error"] = e.what();
            v["oracle_match"] = false;
        }
        if (!v["oracle_match"].get<bool>()) code = 1;
        r["verify"] = v;
    }
    return r;
}

inline Json cmd_twist(const Loader& L, int& code) {
    code = 0;
    const auto& E = expect<ElementaryModule>(L.file(0), "an elementary");
    return Json{{"input", E.to_string()}, {"twist", module_json(twist(E))}};
}

inline Json cmd_check_funceq(const Loader& L, int& code) {
    code = 0;
    const auto& E1 = expect<ElementaryModule>(L.file(0), "elementary");
    const auto& E2 = expect<ElementaryModule>(L.file(1), "elementary");
    return Json{{"first", E1.to_string()},
                {"twist_of_second", twist(E2).to_string()},
                {"holds", check_funceq(E1, E2)}};
}

inline Json cmd_grow(const Loader& L, const Options& o, int& code) {
    code = 0;
    const auto& f = L.file(0);
    const ElementaryModule* E = std::get_if<ElementaryModule>(&f.payload);
    const PresentedModule X = E ? present_elementary(*E) : expect<PresentedModule>(f, "an elementary or presented");
    Json table = Json::array();
    std::vector<std::int64_t> seq;
    for (int n = 1; n <= o.levels; ++n) {
        const auto q = quotient_module(X, n);
        const auto e = static_cast<std::int64_t>(q.torsion.log_size());
        seq.push_back(e);
        Json row{{"n", n}, {"free_W_corank", q.free_W_corank}, {"torsion_log_size", e}, {"torsion_orders", q.torsion.orders}};
        if (E) {
            const auto c = quotient_profile(*E, n);
            row["closed_form_match"] = c.free_W_corank == q.free_W_corank && c.torsion_exponent == e;
            if (!row["closed_form_match"].get<bool>()) code = 1;
        }
        table.push_back(row);
    }
    Json r{{"levels", o.levels}, {"torsion_log_sizes", seq}, {"table", table}};
    try {
        r["fit"] = fit_json(fit_growth(seq, X.profile().p));
    } catch (const Error& e) {
        if (e.is_precision() || e.kind() == ErrorKind::InvalidInput) throw;
        r["fit"] = nullptr;
        r["fit_error"] = e.what();
        code = 1;
    }
    if (E) {
        const auto gl = growth_law(*E);
        r["closed_form_growth"] = Json{{"mu", gl.mu}, {"lambda", gl.lambda}, {"valid", gl.valid}};
    }
    return r;
}

inline Json verdict_json(const PairingVerdict& v) {
    Json j{{"ok", v.ok}};
    if (!v.ok) {
        j["failure"] = v.failure;
        if (v.witness) j["witness"] = Json::array({v.witness->first, v.witness->second});
    }
    return j;
}

inline Json finite_dual_json(const FiniteWTModule& M, int& code) {
    const auto Dm = dual(M);
    const auto v = pairing_check(M);
    const bool dd = dual(Dm) == M;
    if (!v.ok || !dd || Dm.log_size() != M.log_size()) code = 1;
    return Json{{"log_size", M.log_size()},
                {"dual", io::finite_to_json(Dm)},
                {"dual_log_size", Dm.log_size()},
                {"pairing", verdict_json(v)},
                {"double_dual_identity", dd}};
}

inline Json cmd_dual(const Loader& L, const Options& o, int& code) {
    code = 0;
    const auto& f = L.file(0);
    if (auto M = std::get_if<FiniteWTModule>(&f.payload)) return finite_dual_json(*M, code);
    if (auto E = std::get_if<ElementaryModule>(&f.payload)) {
        Json levels = Json::array();
        for (int n = 1; n <= o.levels; ++n) {
            const bool ok = dual_elementary_shadow(*E, n);
            if (!ok) code = 1;
            levels.push_back(Json{{"n", n}, {"dual_matches_twist", ok}});
        }
        return Json{{"module", E->to_string()}, {"twist", twist(*E).to_string()}, {"levels", levels}};
    }
    const auto& X = expect<PresentedModule>(f, "a finite, elementary or presented");
    Json levels = Json::array();
    for (int n = 1; n <= o.levels; ++n) {
        Json l = finite_dual_json(quotient_module(X, n).torsion, code);
        l["n"] = n;
        levels.push_back(l);
    }
    return Json{{"levels", levels}};
}

inline Json report_json(const TowerReport& r) {
    return Json{{"mu", r.fit.mu},
                {"lambda", r.fit.lambda},
                {"nu", r.fit.nu},
                {"nu_interval", Json::array({r.nu_lo, r.nu_hi})},
                {"stable_from", r.fit.stable_from},
                {"corank_stable_from", r.corank_stable_from ? Json(*r.corank_stable_from) : Json(nullptr)},
                {"g_limit", Json{{"mu", r.g_mu}, {"lambda", r.g_lambda}}},
                {"log_sizes", r.log_sizes},
                {"slack", r.slack}};
}

}  // namespace detail

/// Runs one command; never throws. The report is complete even on failure.
inline Outcome run(const std::string& command, const std::vector<Input>& inputs, const Options& o) {
    Json report;
    report["command"] = command;
    report["inputs"] = Json::array();
    for (const auto& in : inputs) report["inputs"].push_back(Json{{"source", in.source}});
    report["flags"] = Json{{"levels", o.levels}, {"seed", o.seed}, {"noise", o.noise}, {"verify", o.verify}};
    report["profile"] = nullptr;
    report["conventions"] = conventions();
    report["result"] = nullptr;
    int code = 0;
    try {
        auto arity = [&](std::size_t k) {
            if (inputs.size() != k)
                throw Error(ErrorKind::InvalidInput, command + " takes " + std::to_string(k) + " input file(s)");
        };
        std::size_t want = 1;
        if (command == "check-funceq" || command == "tower compare") want = 2;
        arity(want);
        if (o.noise < 0) throw Error(ErrorKind::InvalidInput, "--noise must be >= 0");
        const detail::Loader L(o, inputs);
        report["inputs"] = L.echo();
        const auto& prof = L.profile();
        report["profile"] = Json{{"p", prof.p}, {"M", prof.M}, {"D", prof.D}, {"N_max", prof.N_max}};
        Json result;
        if (command == "invariants") result = detail::cmd_invariants(L, o, code);
        else if (command == "functor F") result = detail::cmd_functor(L, o, true, code);
        else if (command == "functor G") result = detail::cmd_functor(L, o, false, code);
        else if (command == "twist") result = detail::cmd_twist(L, code);
        else if (command == "check-funceq") result = detail::cmd_check_funceq(L, code);
        else if (command == "grow") result = detail::cmd_grow(L, o, code);
        else if (command == "dual") result = detail::cmd_dual(L, o, code);
        else if (command == "tower simulate") {
            const auto& E = detail::expect<ElementaryModule>(L.file(0), "an elementary limit");
            const auto t = simulate(E, o.noise, o.levels, o.seed);
            result = Json{{"limit", E.to_string()}, {"tower", to_json(ModuleFile{prof.p, t})}};
        } else if (command == "tower analyze") {
            const auto& t = detail::expect<std::vector<TowerLevel>>(L.file(0), "a tower");
            result = detail::report_json(analyze(t, o.noise, prof.p));
        } else if (command == "tower compare") {
            const auto& t1 = detail::expect<std::vector<TowerLevel>>(L.file(0), "a tower");
            const auto& t2 = detail::expect<std::vector<TowerLevel>>(L.file(1), "a tower");
            const auto c = compare_towers(t1, t2, o.noise, prof.p);
            result = Json{{"bounded", c.bounded}, {"witness", c.witness}, {"bound", c.bound},
                          {"first", detail::report_json(c.r1)}, {"second", detail::report_json(c.r2)}};
        } else {
            throw Error(ErrorKind::InvalidInput, "unknown command '" + command + "'");
        }
        report["result"] = result;
        report["status"] = Json{{"exit", code}, {"error", nullptr}};
    } catch (const Error& e) {
        code = exit_code_for(e);
        report["status"] = Json{{"exit", code}, {"error", Json{{"kind", to_string(e.kind())}, {"message", e.what()}}}};
    }
    return {report, code};
}

namespace detail {

inline void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace detail

/// Renders a report as "key = value" lines, one per leaf, in report order.
inline std::string render_text(const Json& report) {
    std::ostringstream out;
    detail::flatten(report, "", out);
    return out.str();
}

inline std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace iwa::cli

#endif
