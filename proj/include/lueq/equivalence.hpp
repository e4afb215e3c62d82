#pragma once

#include "lueq/bloch.hpp"
#include "lueq/hypermatrix.hpp"
#include "lueq/trace_words.hpp"

#include <array>
#include <string>
#include <vector>

namespace lueq {

class DimensionMismatchError : public std::invalid_argument {
public:
    explicit DimensionMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

enum class Verdict { pass, fail, inconclusive, not_applicable };
const char* verdict_name(Verdict v);

enum class Overall {
    not_equivalent,
    consistent_with_quasi_lu,
    quasi_lu_certified,
    lu_certified,
    inconclusive,
};
const char* overall_name(Overall o);

struct CheckOptions {
    int max_word_len = 4;
    double tol = 1e-8;
    /// "all", or one of "1223", "2113", "3312" naming (i, j1, j2, k).
    std::string choice = "all";
    enum class Mode { strict, fallback } mode = Mode::strict;
    bool qubit_det_check = true;
    double det_tol = 1e-6;  ///< relative tolerance of the hyperdeterminant equalities
};

struct Criterion {
    std::string name;     ///< stable identifier, e.g. "trace.identities"
    std::string scope;    ///< "" or the (i,j1,j2,k) choice it belongs to
    Verdict verdict = Verdict::not_applicable;
    std::string detail;   ///< witness / magnitudes, human readable
};

struct CheckReport {
    Overall overall = Overall::inconclusive;
    int subsystems = 0;
    int depth = 0;
    double tol = 0.0;
    std::string mode;
    std::vector<Criterion> criteria;
    std::vector<std::string> preconditions;

    const Criterion* find(const std::string& name, const std::string& scope = "") const;
    bool any_failed() const;
    /// 0 consistent/certified, 2 not-equivalent, 3 inconclusive
    int exit_code() const;
    std::string to_json(int indent = -1) const;
    std::string summary() const;
};

/// Sign comparison of the scalars T_i^t T_ij T_j (with T_ij := T_ji^t when
/// i > j). Subsystems 0-based. |scalar| <= tol on either side -> inconclusive.
Verdict sign_condition(const HypermatrixRep& a, const HypermatrixRep& b, int i, int j, double tol,
                       double* scalar_a = nullptr, double* scalar_b = nullptr);

enum class GramMode { strict, fallback, extension };

struct InvertibilityResult {
    Verdict verdict = Verdict::fail;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double sigma_second = 0.0;  ///< second-largest singular value of the Gram
};

/// Invertibility of the designated Gram matrix for a choice (i, j1, j2, k)
/// given 1-based, e.g. {1,2,2,3}. strict: the Gram of (T_i o T_{j2 k})_(i)
/// (or (T_{j2 k} o T_i)_(i) for choice (3,3,1,2)); fallback: the Gram of
/// (T_i o T_{j2} o T_k)_(i); extension: the accumulated Gram of all four
/// unfolded outer-product matrices.
InvertibilityResult invertibility_condition(const HypermatrixRep& rep, const std::array<int, 4>& choice,
                                            GramMode mode, double tol);

/// The two-block matrix family of the tripartite trace criterion for one
/// choice (1-based): left block ((T_123)_(i), (T_1 o T_23)_(i),
/// (T_2 o T_13)_(i), (T_12 o T_3)_(i)) with all outer products arranged in
/// subsystem order, right block (T_i). In fallback mode the slot carrying
/// T_i o T_{j2 k} is replaced by (T_i o T_{j2} o T_k)_(i).
TwoBlockFamily tripartite_family(const HypermatrixRep& rep, const std::array<int, 4>& choice, bool fallback);

CheckReport check_bipartite(const HypermatrixRep& a, const HypermatrixRep& b, const CheckOptions& opts = {});
CheckReport check_bipartite(const DensityMatrix& a, const DensityMatrix& b, const CheckOptions& opts = {});

CheckReport check_tripartite(const HypermatrixRep& a, const HypermatrixRep& b, const CheckOptions& opts = {});
CheckReport check_tripartite(const DensityMatrix& a, const DensityMatrix& b, const CheckOptions& opts = {});

/// Dispatches on the subsystem count (2 or 3).
CheckReport check_states(const DensityMatrix& a, const DensityMatrix& b, const CheckOptions& opts = {});
CheckReport check_reps(const HypermatrixRep& a, const HypermatrixRep& b, const CheckOptions& opts = {});

/// The sufficient word-length bounds of the underlying equivalence theory
/// for the given dimensions, formatted for display.
std::string describe_sufficient_bounds(const std::vector<int>& dims);

}  // namespace lueq
