// bqa: build bound quiver algebras of the built-in families, verify the
// derived-equivalence certificates, and evaluate expressions in them.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "bqa/bqa.hpp"
#include "bqa/json_io.hpp"
#include "bqa/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;

struct CommonOpts {
    std::string family = "S";
    int m = 2;
    std::string lambda = "1";
    std::string field = "p:32003";
    int bound = -1;
    std::string out;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_seed) {
    cmd->add_option("--family", o.family, "family: S, E, or F")
        ->check(CLI::IsMember({"S", "E", "F"}));
    cmd->add_option("--m", o.m, "deformation degree, at least 2");
    cmd->add_option("--lambda", o.lambda, "nonzero scalar, e.g. 1, -2, 3/4");
    cmd->add_option("--field", o.field, "coefficient field: q or p:<prime>");
    cmd->add_option("--bound", o.bound, "length truncation bound (default 4m+2)");
    cmd->add_option("--out", o.out, "output path for the JSON result");
    if (with_seed) cmd->add_option("--seed", o.seed, "seed for the symmetric-form sampler");
}

bqa::RunConfig to_config(const CommonOpts& o) {
    bqa::RunConfig cfg;
    cfg.family = o.family.at(0);
    cfg.m = o.m;
    cfg.lambda_expr = o.lambda;
    cfg.field_text = o.field;
    if (o.bound >= 0) cfg.bound = o.bound;
    cfg.seed = o.seed;
    return cfg;
}

void write_output(const bqa::Json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw bqa::ConfigError("cannot write to " + out);
    f << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for the S/E/F bound quiver algebra families"};
    app.require_subcommand(1);

    CommonOpts build_opts, verify_opts, cartan_opts;
    std::string eval_algebra, eval_expr, eval_out;

    CLI::App* cmd_build = app.add_subcommand("build", "construct an algebra and serialize it");
    add_common(cmd_build, build_opts, false);

    CLI::App* cmd_verify =
        app.add_subcommand("verify", "run the full verification pipeline for a family");
    add_common(cmd_verify, verify_opts, true);

    CLI::App* cmd_cartan = app.add_subcommand("cartan", "print the Cartan matrix of an algebra");
    add_common(cmd_cartan, cartan_opts, false);

    CLI::App* cmd_eval =
        app.add_subcommand("eval", "reduce an expression to normal form in a serialized algebra");
    cmd_eval->add_option("--algebra", eval_algebra, "algebra JSON file from `build`")->required();
    cmd_eval->add_option("--expr", eval_expr, "expression to reduce")->required();
    cmd_eval->add_option("--out", eval_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (cmd_build->parsed()) {
            bqa::Json j = bqa::run_build(to_config(build_opts));
            write_output(j, build_opts.out);
            return kExitPass;
        }
        if (cmd_cartan->parsed()) {
            bqa::RunConfig cfg = to_config(cartan_opts);
            cfg.validate();
            bqa::FiniteDimAlgebra A = bqa::quotient_algebra(
                bqa::build_family(cfg.family, cfg.m, cfg.lambda(), cfg.field()),
                cfg.effective_bound());
            bqa::Json j{{"family", std::string(1, cfg.family)},
                        {"m", cfg.m},
                        {"dimension", A.total_dim()},
                        {"cartan", bqa::to_json(A.cartan_matrix())}};
            write_output(j, cartan_opts.out);
            return kExitPass;
        }
        if (cmd_verify->parsed()) {
            bqa::VerificationReport rep = bqa::run_verify(to_config(verify_opts));
            if (!verify_opts.out.empty()) write_output(rep.to_json(), verify_opts.out);
            std::cout << rep.summary();
            return rep.pass ? kExitPass : kExitVerifyFail;
        }
        if (cmd_eval->parsed()) {
            std::ifstream f(eval_algebra);
            if (!f) throw bqa::ConfigError("cannot read " + eval_algebra);
            bqa::Json j = bqa::Json::parse(f);
            bqa::FiniteDimAlgebra A = bqa::algebra_from_json(j);
            bqa::FiniteDimAlgebra::Elem e = A.reduce_str(eval_expr);
            std::string printed = A.str(e);
            if (eval_out.empty())
                std::cout << printed << "\n";
            else
                write_output(bqa::Json{{"expr", eval_expr}, {"normal_form", printed}}, eval_out);
            return kExitPass;
        }
    } catch (const bqa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const bqa::FieldError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const bqa::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const bqa::PresentationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const bqa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitConfig;
}
