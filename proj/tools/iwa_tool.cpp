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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "iwa/cli.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw iwa::Error(iwa::ErrorKind::InvalidInput, path + ": cannot open file");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iwa-tool: Iwasawa module invariants, functors, growth and tower analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    iwa::cli::Options opt;
    std::uint64_t p = 0;
    std::string format = "json", out_path;
    app.add_option("--p", p, "prime (must match the input documents)")->check(CLI::PositiveNumber);
    app.add_option("--prec-p", opt.M, "p-adic precision M (coefficients mod p^M)")->capture_default_str();
    app.add_option("--prec-t", opt.D, "T-adic precision D (series mod T^D)")->capture_default_str();
    app.add_option("--levels", opt.levels, "number of tower levels N")->capture_default_str();
    app.add_option("--seed", opt.seed, "random seed for tower simulation")->capture_default_str();
    app.add_option("--noise", opt.noise, "tower defect bound B")->capture_default_str();
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

    std::string command;
    std::vector<std::string> files;

    auto* inv = app.add_subcommand("invariants", "rank, mu, lambda of a module");
    inv->add_option("file", files, "module document")->required()->expected(1);

    auto* fun = app.add_subcommand("functor", "the F or G functor of a module");
    std::string which;
    fun->add_option("which", which, "F or G")->required()->check(CLI::IsMember({"F", "G"}));
    fun->add_option("file", files, "module document")->required()->expected(1);
    fun->add_flag("--verify", opt.verify, "cross-check against a direct limit computation");

    auto* tw = app.add_subcommand("twist", "apply the involution iota");
    tw->add_option("file", files, "elementary document")->required()->expected(1);

    auto* fe = app.add_subcommand("check-funceq", "test E1 == twist(E2)");
    fe->add_option("files", files, "two elementary documents")->required()->expected(2);

    auto* gr = app.add_subcommand("grow", "quotients by omega_n and the growth fit");
    gr->add_option("file", files, "module document")->required()->expected(1);

    auto* du = app.add_subcommand("dual", "Pontryagin dual and pairing check");
    du->add_option("file", files, "finite, elementary or presented document")->required()->expected(1);

    auto* tower = app.add_subcommand("tower", "simulate, analyze or compare tower data");
    tower->require_subcommand(1);
    auto* sim = tower->add_subcommand("simulate", "simulate a noisy tower over an elementary limit");
    std::string limit;
    sim->add_option("--limit", limit, "elementary limit document")->required();
    sim->add_option("--out", out_path, "also write the tower document to this path");
    auto* ana = tower->add_subcommand("analyze", "fit growth invariants to a tower");
    ana->add_option("file", files, "tower document or simulate report")->required()->expected(1);
    auto* cmp = tower->add_subcommand("compare", "decide whether two towers differ boundedly");
    cmp->add_option("files", files, "two tower documents")->required()->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    if (p != 0) opt.p = p;
    if (*inv) command = "invariants";
    else if (*fun) command = "functor " + which;
    else if (*tw) command = "twist";
    else if (*fe) command = "check-funceq";
    else if (*gr) command = "grow";
    else if (*du) command = "dual";
    else if (*sim) command = "tower simulate", files = {limit};
    else if (*ana) command = "tower analyze";
    else command = "tower compare";

    std::vector<iwa::cli::Input> inputs;
    try {
        for (const auto& f : files) inputs.push_back({f, slurp(f)});
    } catch (const iwa::Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }

    const auto res = iwa::cli::run(command, inputs, opt);
    std::cout << (format == "text" ? iwa::cli::render_text(res.report) : iwa::cli::render_json(res.report));
    if (res.report["status"]["error"].is_object()) std::cerr << res.report["status"]["error"]["message"].get<std::string>() << "\n";
    if (res.exit_code == 0 && !out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << res.report["result"]["tower"].dump(2) << "\n";
        if (!out) {
            std::cerr << out_path << ": cannot write\n";
            return 1;
        }
    }
    return res.exit_code;
}
