#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "povmkit/decompose.hpp"
#include "povmkit/extremality.hpp"
#include "povmkit/infocomplete.hpp"
#include "povmkit/json_io.hpp"
#include "povmkit/povm.hpp"
#include "povmkit/qubit.hpp"

namespace povmkit::cli {

namespace {

std::string slurp(const std::string &path, std::istream &in) {
    if (path.empty() || path == "-") {
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path);
    if (!file) throw FormatError("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

Povm load_povm(const std::string &path, std::istream &in) {
    return povm_from_json(slurp(path, in));
}

void require_valid(const Povm &p, const ToleranceConfig &cfg) {
    const ValidationReport report = validate(p, cfg);
    if (!report.passed) {
        throw FormatError("input POVM is not valid: " + report.violations.front());
    }
}

struct GenOptions {
    std::string name;
    Eigen::Index dim = 2;
    double alpha = 0.5;
    std::uint64_t seed = 0;
    int outcomes = 4;
    std::string fiducial_path;
    bool dim_given = false;
};

Povm generate(const GenOptions &opt, std::istream &in) {
    auto require_qubit = [&] {
        if (opt.dim_given && opt.dim != 2) {
            throw FormatError("generator \"" + opt.name + "\" is defined for dim 2");
        }
    };
    if (opt.name == "pvm-z") return pvm_z(opt.dim);
    if (opt.name == "trine") {
        require_qubit();
        return trine_povm();
    }
    if (opt.name == "tetrahedron") {
        require_qubit();
        return tetrahedron_povm();
    }
    if (opt.name == "pentagon") {
        require_qubit();
        return pentagon_povm();
    }
    if (opt.name == "wh") {
        if (!opt.fiducial_path.empty()) {
            const CVector v = state_vector_from_json(slurp(opt.fiducial_path, in));
            return wh_povm(Fiducial::normalized(v), v.size());
        }
        return wh_povm(geometric_fiducial(opt.dim, opt.alpha), opt.dim);
    }
    if (opt.name == "random") {
        std::mt19937_64 rng(opt.seed);
        return random_povm(opt.dim, opt.outcomes, rng);
    }
    throw FormatError("unknown generator: " + opt.name);
}

}  // namespace

int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
        std::ostream &err) {
    CLI::App app{"POVM extremality analysis and convex decomposition"};
    app.require_subcommand(1);

    ToleranceConfig cfg;
    app.add_option("--tol-rank", cfg.rank_rel_tol, "relative singular value threshold for ranks");
    app.add_option("--tol-psd", cfg.psd_abs_tol, "absolute positive semidefiniteness tolerance");
    app.add_option("--tol-line-search", cfg.line_search_tol, "absolute line search width");

    std::string input_path = "-";
    std::string state_path;
    std::string out_path;
    GenOptions gen_opt;

    CLI::App *cmd_validate = app.add_subcommand("validate", "check positivity and completeness");
    cmd_validate->add_option("file", input_path, "POVM JSON file, - for stdin");
    cmd_validate->fallthrough();

    CLI::App *cmd_check = app.add_subcommand("check", "extremality and boundary report");
    cmd_check->add_option("file", input_path, "POVM JSON file, - for stdin");
    cmd_check->fallthrough();

    CLI::App *cmd_decompose =
        app.add_subcommand("decompose", "convex decomposition into extremal POVMs");
    cmd_decompose->add_option("file", input_path, "POVM JSON file, - for stdin");
    cmd_decompose->add_option("--out", out_path, "also write the decomposition JSON here");
    cmd_decompose->fallthrough();

    CLI::App *cmd_probs = app.add_subcommand("probs", "outcome probabilities for a state");
    cmd_probs->add_option("povm", input_path, "POVM JSON file, - for stdin")->required();
    cmd_probs->add_option("state", state_path, "density matrix JSON file")->required();
    cmd_probs->fallthrough();

    CLI::App *cmd_gen = app.add_subcommand("gen", "generate a named POVM family");
    cmd_gen
        ->add_option("name", gen_opt.name,
                     "one of pvm-z, trine, tetrahedron, pentagon, wh, random")
        ->required();
    CLI::Option *dim_opt = cmd_gen->add_option("--dim", gen_opt.dim, "Hilbert space dimension")
                               ->check(CLI::Range(1, 64));
    cmd_gen->add_option("--alpha", gen_opt.alpha, "geometric fiducial parameter in (0, 1)");
    cmd_gen->add_option("--seed", gen_opt.seed, "seed for gen random");
    cmd_gen->add_option("--n", gen_opt.outcomes, "outcome count for gen random")
        ->check(CLI::Range(1, 1024));
    cmd_gen->add_option("--fiducial", gen_opt.fiducial_path, "explicit fiducial vector JSON");
    cmd_gen->fallthrough();

    std::vector<const char *> argv;
    argv.push_back("povmkit");
    for (const auto &a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        cfg.require_valid();

        if (app.got_subcommand(cmd_validate)) {
            const Povm p = load_povm(input_path, in);
            const ValidationReport report = validate(p, cfg);
            out << validation_to_json(report) << "\n";
            return report.passed ? 0 : 1;
        }

        if (app.got_subcommand(cmd_check)) {
            const Povm p = load_povm(input_path, in);
            require_valid(p, cfg);
            const ExtremalityReport report = face_dimension(p, cfg);
            out << extremality_to_json(report) << "\n";
            return report.is_extremal ? 0 : 1;
        }

        if (app.got_subcommand(cmd_decompose)) {
            const Povm p = load_povm(input_path, in);
            require_valid(p, cfg);
            const Decomposition dec = decompose_to_extremals(p, cfg);
            const std::string payload = decomposition_to_json(dec);
            out << payload << "\n";
            if (!out_path.empty()) {
                std::ofstream file(out_path);
                if (!file) throw FormatError("cannot write file: " + out_path);
                file << payload << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(cmd_probs)) {
            const Povm p = load_povm(input_path, in);
            require_valid(p, cfg);
            const DensityMatrix rho = density_from_json(slurp(state_path, in));
            out << probabilities_to_json(born_probabilities(p, rho)) << "\n";
            return 0;
        }

        if (app.got_subcommand(cmd_gen)) {
            gen_opt.dim_given = dim_opt->count() > 0;
            out << povm_to_json(generate(gen_opt, in)) << "\n";
            return 0;
        }
    } catch (const std::exception &e) {
        err << e.what() << "\n";
        return 2;
    }

    err << "no subcommand given\n";
    return 2;
}

}  // namespace povmkit::cli
