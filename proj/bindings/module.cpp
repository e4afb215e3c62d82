#include "lueq/bloch.hpp"
#include "lueq/equivalence.hpp"
#include "lueq/hyperdet.hpp"
#include "lueq/hypermatrix.hpp"
#include "lueq/io.hpp"
#include "lueq/quiver.hpp"
#include "lueq/trace_words.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lueq;

namespace {

Hypermatrix to_hypermatrix(const py::array_t<double, py::array::f_style | py::array::forcecast>& arr) {
    std::vector<Eigen::Index> shape;
    for (py::ssize_t i = 0; i < arr.ndim(); ++i) shape.push_back(arr.shape(i));
    std::vector<double> data(arr.data(), arr.data() + arr.size());
    return Hypermatrix(std::move(shape), std::move(data));
}

py::array_t<double> to_numpy(const Hypermatrix& h) {
    std::vector<py::ssize_t> shape(h.shape().begin(), h.shape().end());
    std::vector<py::ssize_t> strides(shape.size());
    py::ssize_t stride = static_cast<py::ssize_t>(sizeof(double));
    for (std::size_t i = 0; i < shape.size(); ++i) {
        strides[i] = stride;
        stride *= shape[i];
    }
    return py::array_t<double>(shape, strides, h.data().data());
}

CheckOptions options_from_kwargs(int max_word_len, double tol, const std::string& choice, const std::string& mode,
                                 bool qubit_det_check) {
    CheckOptions opts;
    opts.max_word_len = max_word_len;
    opts.tol = tol;
    opts.choice = choice;
    opts.mode = mode == "fallback" ? CheckOptions::Mode::fallback : CheckOptions::Mode::strict;
    opts.qubit_det_check = qubit_det_check;
    return opts;
}

py::dict report_to_dict(const CheckReport& report) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(report.to_json());
}

DensityMatrix make_state(const Eigen::MatrixXcd& mat, const std::vector<int>& dims) {
    return DensityMatrix::checked(dims, mat);
}

std::map<std::string, py::array_t<double>> rep_to_dict(const HypermatrixRep& rep) {
    std::map<std::string, py::array_t<double>> out;
    for (const auto& [key, t] : rep.tensors) {
        std::string name;
        for (int k = 0; k < 32; ++k)
            if (key & (1u << k)) name += std::to_string(k + 1);
        out.emplace(name, to_numpy(t));
    }
    return out;
}

HypermatrixRep rep_from_dict(const std::map<std::string, py::array_t<double, py::array::f_style | py::array::forcecast>>& tensors,
                             const std::vector<int>& dims) {
    HypermatrixRep rep;
    rep.dims = dims;
    for (const auto& [name, arr] : tensors) {
        std::uint32_t key = 0;
        for (char c : name) {
            if (c < '1' || c > '9') throw std::invalid_argument("bad subset key '" + name + "'");
            key |= 1u << (c - '1');
        }
        rep.tensors.emplace(key, to_hypermatrix(arr));
    }
    return rep;
}

}  // namespace

PYBIND11_MODULE(lueq, m) {
    m.doc() = "Quasi-LU equivalence of bipartite and tripartite density matrices "
              "via coefficient-tensor trace identities and hyperdeterminants";

    py::register_exception<ValidationError>(m, "ValidationError");
    py::register_exception<DimensionMismatchError>(m, "DimensionMismatchError");
    py::register_exception<ParseError>(m, "ParseError");

    // hypermatrix operations on numpy arrays (column-major semantics)
    m.def("outer", [](const py::array_t<double, py::array::f_style | py::array::forcecast>& a,
                      const py::array_t<double, py::array::f_style | py::array::forcecast>& b) {
              return to_numpy(outer(to_hypermatrix(a), to_hypermatrix(b)));
          },
          py::arg("a"), py::arg("b"), "Outer product of two hypermatrices.");
    m.def("multilinear_apply",
          [](const std::vector<Eigen::MatrixXd>& mats,
             const py::array_t<double, py::array::f_style | py::array::forcecast>& a) {
              return to_numpy(multilinear_apply(std::span<const RealMatrix>(mats), to_hypermatrix(a)));
          },
          py::arg("mats"), py::arg("a"), "Multilinear matrix multiplication (one matrix per mode).");
    m.def("unfold",
          [](const py::array_t<double, py::array::f_style | py::array::forcecast>& a, int mode) {
              return unfold(to_hypermatrix(a), mode);
          },
          py::arg("a"), py::arg("mode"), "Mode unfolding (0-based mode index).");
    m.def("vec", &vec, py::arg("m"), "Column-stacking vectorization.");
    m.def("kron", &kron, py::arg("x"), py::arg("y"), "Kronecker product.");

    // hyperdeterminants
    m.def("det222", [](const py::array_t<double, py::array::f_style | py::array::forcecast>& a) {
              return det222(to_hypermatrix(a));
          },
          py::arg("a"), "Cayley hyperdeterminant of a 2x2x2 array.");
    m.def("det333", [](const py::array_t<double, py::array::f_style | py::array::forcecast>& a) {
              return det333(to_hypermatrix(a));
          },
          py::arg("a"), "3x3x3 hyperdeterminant (fixed scalar normalization).");

    // bloch / density-matrix layer
    m.def("ggm_basis", [](int d) {
              std::vector<Eigen::MatrixXcd> mats = ggm_basis(d).mats;
              return mats;
          },
          py::arg("d"), "Orthonormal generalized Gell-Mann basis of dimension d.");
    m.def("extract_rep",
          [](const Eigen::MatrixXcd& mat, const std::vector<int>& dims) {
              return rep_to_dict(extract_rep(make_state(mat, dims)));
          },
          py::arg("matrix"), py::arg("dims"),
          "Coefficient tensors of a density matrix, keyed by 1-based subset strings.");
    m.def("reconstruct",
          [](const std::map<std::string, py::array_t<double, py::array::f_style | py::array::forcecast>>& tensors,
             const std::vector<int>& dims) { return reconstruct(rep_from_dict(tensors, dims)).mat; },
          py::arg("tensors"), py::arg("dims"), "Density matrix of a coefficient-tensor family.");
    m.def("partial_trace",
          [](const Eigen::MatrixXcd& mat, const std::vector<int>& dims, int k) {
              return partial_trace(make_state(mat, dims), k).mat;
          },
          py::arg("matrix"), py::arg("dims"), py::arg("k"), "Partial trace over subsystem k (0-based).");
    m.def("apply_local_unitaries",
          [](const Eigen::MatrixXcd& mat, const std::vector<int>& dims, const std::vector<Eigen::MatrixXcd>& us) {
              return apply_local_unitaries(make_state(mat, dims), us).mat;
          },
          py::arg("matrix"), py::arg("dims"), py::arg("us"));
    m.def("induced_orthogonal", &induced_orthogonal, py::arg("u"),
          "Orthogonal matrix induced on the coefficient space by a unitary.");
    m.def("random_su", &random_su, py::arg("d"), py::arg("seed"), "Seeded Haar unitary with determinant 1.");
    m.def("random_density",
          [](const std::vector<int>& dims, std::uint64_t seed, int rank) {
              return random_density(dims, seed, rank).mat;
          },
          py::arg("dims"), py::arg("seed"), py::arg("rank") = 0, "Seeded random density matrix.");
    m.def("random_lu_pair",
          [](const std::vector<int>& dims, std::uint64_t seed) {
              const LuPair pair = random_lu_pair(dims, seed);
              return py::make_tuple(pair.rho.mat, pair.rho_hat.mat, pair.unitaries);
          },
          py::arg("dims"), py::arg("seed"), "Seeded state, its local-unitary image, and the unitaries.");

    // word and cycle machinery
    m.def("enumerate_canonical_words",
          [](int alphabet, int max_len) {
              std::vector<std::vector<int>> out;
              for (const Word& w : enumerate_canonical_words(alphabet, max_len)) out.push_back(w.letters);
              return out;
          },
          py::arg("alphabet_size"), py::arg("max_len"), "Necklace representatives of each length up to max_len.");
    m.def("word_bound_lemma1", &word_bound_lemma1, py::arg("n1"), py::arg("n2"), py::arg("m"), py::arg("k"),
          py::arg("l"), "Sufficient word length for the two-block trace criterion.");
    m.def("quiver_isometric",
          [](const std::vector<int>& dims, const std::vector<std::pair<int, int>>& arrows,
             const std::vector<Eigen::MatrixXd>& mats_a, const std::vector<Eigen::MatrixXd>& mats_b, int max_len,
             double tol) {
              QuiverRep a, b;
              a.quiver.dims = dims;
              for (std::size_t i = 0; i < arrows.size(); ++i)
                  a.quiver.arrows.push_back({arrows[i].first, arrows[i].second, "a" + std::to_string(i + 1)});
              b.quiver = a.quiver;
              a.matrices = mats_a;
              b.matrices = mats_b;
              const CycleCheckResult res = quiver_isometric(a, b, max_len, tol);
              py::dict out;
              out["equal"] = res.equal;
              out["cycles_checked"] = res.cycles_checked;
              if (res.witness) out["witness"] = res.witness->arrows;
              return out;
          },
          py::arg("dims"), py::arg("arrows"), py::arg("mats_a"), py::arg("mats_b"), py::arg("max_len") = 6,
          py::arg("tol") = 1e-8, "Cycle-trace isometry test of two quiver representations.");

    // checkers
    m.def("check_states",
          [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const std::vector<int>& dims, int max_word_len,
             double tol, const std::string& choice, const std::string& mode, bool qubit_det_check) {
              return report_to_dict(check_states(make_state(a, dims), make_state(b, dims),
                                                 options_from_kwargs(max_word_len, tol, choice, mode, qubit_det_check)));
          },
          py::arg("a"), py::arg("b"), py::arg("dims"), py::arg("max_word_len") = 4, py::arg("tol") = 1e-8,
          py::arg("choice") = "all", py::arg("mode") = "strict", py::arg("qubit_det_check") = true,
          "Quasi-LU equivalence report for two density matrices on the same dimensions.");
    m.def("check_reps",
          [](const std::map<std::string, py::array_t<double, py::array::f_style | py::array::forcecast>>& a,
             const std::map<std::string, py::array_t<double, py::array::f_style | py::array::forcecast>>& b,
             const std::vector<int>& dims, int max_word_len, double tol, const std::string& choice,
             const std::string& mode, bool qubit_det_check) {
              return report_to_dict(check_reps(rep_from_dict(a, dims), rep_from_dict(b, dims),
                                               options_from_kwargs(max_word_len, tol, choice, mode, qubit_det_check)));
          },
          py::arg("a"), py::arg("b"), py::arg("dims"), py::arg("max_word_len") = 4, py::arg("tol") = 1e-8,
          py::arg("choice") = "all", py::arg("mode") = "strict", py::arg("qubit_det_check") = true,
          "Quasi-LU equivalence report for two coefficient-tensor families.");

    // file formats shared with the command line tool
    m.def("state_to_json", [](const Eigen::MatrixXcd& mat, const std::vector<int>& dims) {
              return state_to_json(make_state(mat, dims));
          },
          py::arg("matrix"), py::arg("dims"));
    m.def("state_from_json", [](const std::string& text) {
              const DensityMatrix rho = state_from_json(text);
              return py::make_tuple(rho.mat, rho.dims);
          },
          py::arg("text"));

    m.attr("__version__") = "0.1.0";
}
