#include "lueq/quiver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lueq {

namespace {

std::vector<int> min_rotation(const std::vector<int>& w) {
    std::vector<int> best = w;
    std::vector<int> rot = w;
    for (std::size_t s = 1; s < w.size(); ++s) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

}  // namespace

void Quiver::validate() const {
    std::vector<bool> touched(dims.size(), false);
    for (const Arrow& a : arrows) {
        if (a.source < 0 || a.source >= vertices() || a.target < 0 || a.target >= vertices())
            throw std::invalid_argument("quiver arrow endpoint out of range");
        touched[static_cast<std::size_t>(a.source)] = true;
        touched[static_cast<std::size_t>(a.target)] = true;
    }
    for (std::size_t v = 0; v < dims.size(); ++v) {
        if (dims[v] < 0) throw std::invalid_argument("quiver vertex dimension must be nonnegative");
        if (dims[v] == 0 && touched[v]) throw std::invalid_argument("vertex with arrows must have positive dimension");
    }
}

int Quiver::max_multiplicity() const {
    std::map<std::pair<int, int>, int> counts;
    int best = 0;
    for (const Arrow& a : arrows) best = std::max(best, ++counts[{a.source, a.target}]);
    return best;
}

void QuiverRep::validate() const {
    quiver.validate();
    if (matrices.size() != quiver.arrows.size())
        throw std::invalid_argument("quiver representation needs one matrix per arrow");
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        const Arrow& a = quiver.arrows[i];
        if (matrices[i].rows() != quiver.dims[static_cast<std::size_t>(a.target)] ||
            matrices[i].cols() != quiver.dims[static_cast<std::size_t>(a.source)])
            throw std::invalid_argument("arrow matrix " + std::to_string(i + 1) + " has inconsistent size");
    }
}

Quiver quiver_double(const Quiver& q) {
    q.validate();
    Quiver out = q;
    for (const Arrow& a : q.arrows) out.arrows.push_back(Arrow{a.target, a.source, a.label + "*"});
    return out;
}

QuiverRep quiver_double_rep(const QuiverRep& rep) {
    rep.validate();
    QuiverRep out;
    out.quiver = quiver_double(rep.quiver);
    out.matrices = rep.matrices;
    for (const RealMatrix& m : rep.matrices) out.matrices.push_back(m.transpose());
    return out;
}

std::string Cycle::str() const {
    std::ostringstream os;
    os << "cycle[";
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        if (i) os << ' ';
        os << arrows[i] + 1;
    }
    os << ']';
    return os.str();
}

std::vector<Cycle> enumerate_cycles(const Quiver& q, int max_len) {
    q.validate();
    if (max_len < 1) throw std::invalid_argument("enumerate_cycles: max length must be >= 1");
    const int na = static_cast<int>(q.arrows.size());
    std::vector<Cycle> out;

    // walks are grown arrow by arrow; forcing every later arrow index to be
    // >= the first keeps exactly the rotations that could be minimal
    std::vector<int> walk;
    std::set<std::vector<int>> seen;
    auto dfs = [&](auto&& self, int len_target) -> void {
        const Arrow& first = q.arrows[static_cast<std::size_t>(walk.front())];
        const Arrow& last = q.arrows[static_cast<std::size_t>(walk.back())];
        if (static_cast<int>(walk.size()) == len_target) {
            if (last.target == first.source) {
                std::vector<int> canon = min_rotation(walk);
                if (seen.insert(canon).second) out.push_back(Cycle{std::move(canon)});
            }
            return;
        }
        for (int a = walk.front(); a < na; ++a) {
            if (q.arrows[static_cast<std::size_t>(a)].source != last.target) continue;
            walk.push_back(a);
            self(self, len_target);
            walk.pop_back();
        }
    };

    for (int n = 1; n <= max_len; ++n) {
        const std::size_t mark = out.size();
        for (int a0 = 0; a0 < na; ++a0) {
            walk.assign(1, a0);
            dfs(dfs, n);
        }
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(mark), out.end(),
                  [](const Cycle& x, const Cycle& y) { return x.arrows < y.arrows; });
        seen.clear();
    }
    return out;
}

long long quiver_cycle_bound(const Quiver& q) {
    const int most = std::max(1, q.max_multiplicity());
    long long r = 1;
    while (r * (r + 1) / 2 < most) ++r;
    long long total = 0;
    for (int d : q.dims) total += d;
    const long long base = (r + 2) * total;
    return base * base;
}

CycleCheckResult quiver_isometric(const QuiverRep& a, const QuiverRep& b, int max_len, double tol) {
    a.validate();
    b.validate();
    if (a.quiver.dims != b.quiver.dims || a.quiver.arrows.size() != b.quiver.arrows.size())
        throw std::invalid_argument("quiver_isometric: representations live on different quivers");
    for (std::size_t i = 0; i < a.quiver.arrows.size(); ++i)
        if (a.quiver.arrows[i].source != b.quiver.arrows[i].source ||
            a.quiver.arrows[i].target != b.quiver.arrows[i].target)
            throw std::invalid_argument("quiver_isometric: representations live on different quivers");

    const QuiverRep da = quiver_double_rep(a);
    const QuiverRep db = quiver_double_rep(b);

    const long long bound = quiver_cycle_bound(a.quiver);
    const int len = static_cast<int>(std::min<long long>(max_len, bound));
    const std::vector<Cycle> cycles = enumerate_cycles(da.quiver, len);

    auto cycle_trace = [](const QuiverRep& rep, const Cycle& c) {
        // walk a_1 a_2 ... a_n composes to M(a_n) ... M(a_1)
        RealMatrix prod = rep.matrices[static_cast<std::size_t>(c.arrows.front())];
        for (std::size_t i = 1; i < c.arrows.size(); ++i)
            prod = rep.matrices[static_cast<std::size_t>(c.arrows[i])] * prod;
        return prod.trace();
    };

    CycleCheckResult res;
    res.cycles_checked = static_cast<long long>(cycles.size());
    for (const Cycle& c : cycles) {
        const double ta = cycle_trace(da, c);
        const double tb = cycle_trace(db, c);
        if (std::abs(ta - tb) > tol * std::max(1.0, std::abs(ta))) {
            res.equal = false;
            res.witness = c;
            res.trace_a = ta;
            res.trace_b = tb;
            return res;
        }
    }
    return res;
}

}  // namespace lueq
