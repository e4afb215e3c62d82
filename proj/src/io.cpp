#include "lueq/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lueq {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

std::vector<int> dims_of(const json& j) {
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
        throw ParseError("missing or empty 'dims' array");
    std::vector<int> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<int>() < 2) throw ParseError("subsystem dimensions must be integers >= 2");
        dims.push_back(d.get<int>());
    }
    return dims;
}

std::string subset_key_string(std::uint32_t key) {
    std::string s;
    for (int k = 0; k < 32; ++k)
        if (key & (1u << k)) s += std::to_string(k + 1);
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text << '\n';
}

}  // namespace

std::string state_to_json(const DensityMatrix& rho, int indent) {
    json j;
    j["dims"] = rho.dims;
    json rows = json::array();
    for (Eigen::Index r = 0; r < rho.mat.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < rho.mat.cols(); ++c)
            row.push_back(json::array({rho.mat(r, c).real(), rho.mat(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return indent >= 0 ? j.dump(indent) : j.dump();
}

DensityMatrix state_from_json(const std::string& text, double tol) {
    const json j = parse(text);
    const std::vector<int> dims = dims_of(j);
    Eigen::Index n = 1;
    for (int d : dims) n *= d;
    if (!j.contains("matrix") || !j["matrix"].is_array()) throw ParseError("missing 'matrix' array");
    const json& rows = j["matrix"];
    if (static_cast<Eigen::Index>(rows.size()) != n)
        throw ParseError("matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n));
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw ParseError("row " + std::to_string(r + 1) + " has wrong length");
        for (Eigen::Index c = 0; c < n; ++c) {
            const json& e = row[static_cast<std::size_t>(c)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ParseError("matrix entries must be [re, im] pairs");
            m(r, c) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
        }
    }
    return DensityMatrix::checked(dims, std::move(m), tol);
}

DensityMatrix read_state_file(const std::string& path, double tol) { return state_from_json(read_file(path), tol); }

void write_state_file(const std::string& path, const DensityMatrix& rho) { write_file(path, state_to_json(rho)); }

std::string rep_to_json(const HypermatrixRep& rep, int indent) {
    json j;
    j["dims"] = rep.dims;
    j["convention"] = {
        {"ggm_order", "symmetric, antisymmetric, diagonal; pairs lexicographic"},
        {"ggm_normalization", "trace-orthonormal (Tr l_a l_b = delta_ab)"},
        {"coefficient_scale", "product of the subset's subsystem dimensions"},
        {"tensor_layout", "column-major (first index fastest)"},
    };
    json tensors;
    for (const auto& [key, t] : rep.tensors) {
        json tj;
        tj["shape"] = t.shape();
        tj["data"] = t.data();
        tensors[subset_key_string(key)] = std::move(tj);
    }
    j["tensors"] = std::move(tensors);
    return indent >= 0 ? j.dump(indent) : j.dump();
}

HypermatrixRep rep_from_json(const std::string& text) {
    const json j = parse(text);
    HypermatrixRep rep;
    rep.dims = dims_of(j);
    const int n = static_cast<int>(rep.dims.size());
    if (!j.contains("tensors") || !j["tensors"].is_object()) throw ParseError("missing 'tensors' object");
    for (const auto& [name, tj] : j["tensors"].items()) {
        std::uint32_t key = 0;
        for (char ch : name) {
            if (ch < '1' || ch > '0' + n) throw ParseError("bad subset key '" + name + "'");
            const int bit = ch - '1';
            if (key & (1u << bit)) throw ParseError("repeated subsystem in subset key '" + name + "'");
            key |= 1u << bit;
        }
        if (!tj.contains("shape") || !tj.contains("data")) throw ParseError("tensor '" + name + "' needs shape and data");
        std::vector<Eigen::Index> shape;
        for (const auto& e : tj["shape"]) shape.push_back(e.get<Eigen::Index>());
        std::vector<double> data;
        for (const auto& e : tj["data"]) {
            if (!e.is_number()) throw ParseError("tensor '" + name + "' has non-numeric data");
            data.push_back(e.get<double>());
        }
        try {
            rep.tensors.emplace(key, Hypermatrix(std::move(shape), std::move(data)));
        } catch (const std::invalid_argument& e) {
            throw ParseError("tensor '" + name + "': " + e.what());
        }
    }
    // every nonempty subset must be present, shaped by the subsystem deltas
    for (std::uint32_t key = 1; key < (1u << n); ++key) {
        auto it = rep.tensors.find(key);
        if (it == rep.tensors.end()) throw ParseError("missing tensor for subset '" + subset_key_string(key) + "'");
        std::vector<Eigen::Index> expect;
        for (int k = 0; k < n; ++k)
            if (key & (1u << k)) expect.push_back(rep.delta(k));
        if (it->second.shape() != expect)
            throw ParseError("tensor '" + subset_key_string(key) + "' has the wrong shape for the subsystem dimensions");
    }
    return rep;
}

HypermatrixRep read_rep_file(const std::string& path) { return rep_from_json(read_file(path)); }

void write_rep_file(const std::string& path, const HypermatrixRep& rep) { write_file(path, rep_to_json(rep)); }

}  // namespace lueq
