#pragma once

#include "lueq/hypermatrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lueq {

struct Arrow {
    int source = 0;
    int target = 0;
    std::string label;
};

/// Directed multigraph with a dimension per vertex. Loops and parallel arrows
/// are allowed; dimension 0 is allowed for isolated vertices only.
struct Quiver {
    std::vector<int> dims;
    std::vector<Arrow> arrows;

    int vertices() const { return static_cast<int>(dims.size()); }
    void validate() const;
    /// Max number of parallel arrows between an ordered vertex pair.
    int max_multiplicity() const;
};

/// One real matrix per arrow, sized d_target x d_source.
struct QuiverRep {
    Quiver quiver;
    std::vector<RealMatrix> matrices;

    void validate() const;
};

/// Adds the reversed arrow labeled "<label>*" for every arrow.
Quiver quiver_double(const Quiver& q);

/// Doubles the quiver and assigns the transpose to each added arrow.
QuiverRep quiver_double_rep(const QuiverRep& rep);

/// Closed directed walk stored as a sequence of arrow indices with
/// source(a_{t+1}) = target(a_t), canonical up to rotation (the
/// lexicographically minimal rotation of the index sequence).
struct Cycle {
    std::vector<int> arrows;
    std::string str() const;
};

/// One representative per rotation class of closed walks of length 1..max_len,
/// in (length, lex) order. Vertices and arrows may repeat.
std::vector<Cycle> enumerate_cycles(const Quiver& q, int max_len);

/// Sufficient cycle length for isometry of representations of q:
/// ((r+2) * sum(dims))^2 with r the smallest positive integer such that
/// r(r+1)/2 covers the largest arrow multiplicity of q.
long long quiver_cycle_bound(const Quiver& q);

struct CycleCheckResult {
    bool equal = true;
    std::optional<Cycle> witness;
    double trace_a = 0.0;
    double trace_b = 0.0;
    long long cycles_checked = 0;
};

/// Isometry test: compares trace(A~(pi)) with trace(B~(pi)) over canonical
/// cycles of the doubled quiver up to min(max_len, quiver_cycle_bound(q)).
CycleCheckResult quiver_isometric(const QuiverRep& a, const QuiverRep& b, int max_len, double tol);

}  // namespace lueq
