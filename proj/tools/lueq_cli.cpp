#include "lueq/equivalence.hpp"
#include "lueq/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace {

using namespace lueq;

constexpr int kExitOk = 0;
constexpr int kExitNotEquivalent = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitDimsMismatch = 4;
constexpr int kExitParse = 5;

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) dims.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (dims.size() < 2 || dims.size() > 3)
        throw CLI::ValidationError("--dims", "expected 2 or 3 comma-separated dimensions");
    return dims;
}

int cmd_validate(const std::string& path, double tol) {
    try {
        const DensityMatrix rho = read_state_file(path, tol);
        std::cout << "valid state: " << rho.subsystems() << " subsystems, total dimension " << rho.total_dim() << "\n";
        return kExitOk;
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
}

int cmd_extract(const std::string& path, bool as_json, const std::string& out) {
    try {
        const HypermatrixRep rep = extract_rep(read_state_file(path));
        const std::string text = rep_to_json(rep, as_json ? -1 : 2);
        if (!out.empty()) {
            write_rep_file(out, rep);
            std::cout << "wrote " << out << "\n";
        } else {
            std::cout << text << "\n";
        }
        return kExitOk;
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return kExitParse;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
}

int cmd_check(const std::string& path_a, const std::string& path_b, const CheckOptions& opts, bool as_json,
              bool from_reps, bool show_paper_bound) {
    HypermatrixRep a, b;
    try {
        if (from_reps) {
            a = read_rep_file(path_a);
            b = read_rep_file(path_b);
        } else {
            a = extract_rep(read_state_file(path_a));
            b = extract_rep(read_state_file(path_b));
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return kExitParse;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }

    if (show_paper_bound) std::cout << describe_sufficient_bounds(a.dims) << "\n";

    try {
        const CheckReport report = check_reps(a, b, opts);
        std::cout << (as_json ? report.to_json(2) : report.summary()) << "\n";
        return report.exit_code();
    } catch (const DimensionMismatchError& e) {
        std::cerr << "dimension mismatch: " << e.what() << "\n";
        return kExitDimsMismatch;
    }
}

int cmd_gen(const std::string& kind, const std::string& dims_text, std::uint64_t seed, int rank,
            const std::string& out_dir) {
    const std::vector<int> dims = parse_dims(dims_text);
    std::filesystem::create_directories(out_dir);
    const auto path = [&](const std::string& name) { return (std::filesystem::path(out_dir) / name).string(); };

    if (kind == "random") {
        write_state_file(path("state.json"), random_density(dims, seed, rank));
        std::cout << "wrote " << path("state.json") << "\n";
        return kExitOk;
    }
    if (kind == "lu-pair") {
        const LuPair pair = random_lu_pair(dims, seed);
        write_state_file(path("a.json"), pair.rho);
        write_state_file(path("b.json"), pair.rho_hat);
        nlohmann::json us = nlohmann::json::array();
        for (const ComplexMatrix& u : pair.unitaries) {
            nlohmann::json uj = nlohmann::json::array();
            for (Eigen::Index r = 0; r < u.rows(); ++r) {
                nlohmann::json row = nlohmann::json::array();
                for (Eigen::Index c = 0; c < u.cols(); ++c)
                    row.push_back(nlohmann::json::array({u(r, c).real(), u(r, c).imag()}));
                uj.push_back(std::move(row));
            }
            us.push_back(std::move(uj));
        }
        std::ofstream uf(path("unitaries.json"));
        uf << us.dump() << "\n";
        std::cout << "wrote " << path("a.json") << ", " << path("b.json") << ", " << path("unitaries.json") << "\n";
        return kExitOk;
    }
    if (kind == "product") {
        // factor state on the first subsystem, independent remainder
        std::mt19937_64 master(seed);
        const DensityMatrix head = random_density({dims[0]}, master());
        const DensityMatrix tail = random_density(std::vector<int>(dims.begin() + 1, dims.end()), master());
        const Eigen::Index nt = tail.mat.rows();
        ComplexMatrix prod = ComplexMatrix::Zero(head.mat.rows() * nt, head.mat.rows() * nt);
        for (Eigen::Index i = 0; i < head.mat.rows(); ++i)
            for (Eigen::Index j = 0; j < head.mat.cols(); ++j)
                prod.block(i * nt, j * nt, nt, nt) = head.mat(i, j) * tail.mat;
        write_state_file(path("product.json"), DensityMatrix::checked(dims, std::move(prod)));
        write_state_file(path("factor.json"), tail);
        std::cout << "wrote " << path("product.json") << ", " << path("factor.json") << "\n";
        return kExitOk;
    }
    std::cerr << "unknown --kind '" << kind << "'\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-LU equivalence checks for bipartite and tripartite density matrices"};
    app.require_subcommand(1);

    // validate
    std::string v_path;
    double v_tol = 1e-10;
    CLI::App* validate = app.add_subcommand("validate", "Validate a state file");
    validate->add_option("path", v_path, "state file")->required();
    validate->add_option("--tol", v_tol, "validation tolerance");

    // extract
    std::string e_path, e_out;
    bool e_json = false;
    CLI::App* extract = app.add_subcommand("extract", "Emit the coefficient-tensor representation of a state");
    extract->add_option("path", e_path, "state file")->required();
    extract->add_flag("--json", e_json, "compact JSON on stdout");
    extract->add_option("--out", e_out, "write the representation to a file");

    // check
    std::string c_a, c_b, c_choice = "all", c_mode = "strict", c_qubit_det = "on";
    int c_len = 4;
    double c_tol = 1e-8;
    bool c_json = false, c_rep = false, c_paper_bound = false;
    CLI::App* check = app.add_subcommand("check", "Decide quasi-LU equivalence of two states");
    check->add_option("--a", c_a, "first state file")->required();
    check->add_option("--b", c_b, "second state file")->required();
    check->add_option("--max-word-len", c_len, "trace-identity depth (default 4)");
    check->add_option("--tol", c_tol, "comparison tolerance (default 1e-8)");
    check->add_option("--choice", c_choice, "tripartite index choice: all, 1223, 2113 or 3312");
    check->add_option("--mode", c_mode, "strict or fallback")->check(CLI::IsMember({"strict", "fallback"}));
    check->add_option("--qubit-det", c_qubit_det, "on or off")->check(CLI::IsMember({"on", "off"}));
    check->add_flag("--json", c_json, "machine-readable report");
    check->add_flag("--rep", c_rep, "inputs are representation files from 'extract'");
    check->add_flag("--paper-bound", c_paper_bound, "print the full sufficient word-length bounds (never run)");

    // gen
    std::string g_kind = "random", g_dims = "2,2", g_out = ".";
    std::uint64_t g_seed = 0;
    int g_rank = 0;
    CLI::App* gen = app.add_subcommand("gen", "Generate test states deterministically");
    gen->add_option("--kind", g_kind, "random, lu-pair or product")
        ->check(CLI::IsMember({"random", "lu-pair", "product"}));
    gen->add_option("--dims", g_dims, "comma-separated subsystem dimensions")->required();
    gen->add_option("--seed", g_seed, "seed (default 0)");
    gen->add_option("--rank", g_rank, "state rank (0 = full)");
    gen->add_option("--out", g_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(v_path, v_tol);
        if (*extract) return cmd_extract(e_path, e_json, e_out);
        if (*check) {
            CheckOptions opts;
            opts.max_word_len = c_len;
            opts.tol = c_tol;
            opts.choice = c_choice;
            opts.mode = c_mode == "fallback" ? CheckOptions::Mode::fallback : CheckOptions::Mode::strict;
            opts.qubit_det_check = c_qubit_det == "on";
            return cmd_check(c_a, c_b, opts, c_json, c_rep, c_paper_bound);
        }
        if (*gen) return cmd_gen(g_kind, g_dims, g_seed, g_rank, g_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
