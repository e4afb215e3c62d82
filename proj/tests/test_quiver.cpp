#include "lueq/quiver.hpp"

#include <doctest.h>

#include <random>

using namespace lueq;

namespace {

std::mt19937_64& rng() {
    static std::mt19937_64 engine(8080);
    return engine;
}

RealMatrix random_mat(Eigen::Index r, Eigen::Index c) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = u(rng());
    return m;
}

RealMatrix random_orth(Eigen::Index n) {
    Eigen::HouseholderQR<RealMatrix> qr(random_mat(n, n));
    RealMatrix q = qr.householderQ();
    RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i)
        if (r(i, i) < 0) q.col(i) *= -1;
    return q;
}

Quiver single_loop() {
    Quiver q;
    q.dims = {3};
    q.arrows = {{0, 0, "a"}};
    return q;
}

}  // namespace

TEST_SUITE("quiver") {

TEST_CASE("validation") {
    Quiver q;
    q.dims = {2, 3};
    q.arrows = {{0, 1, "a"}};
    q.validate();
    q.arrows.push_back({1, 2, "bad"});
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);

    Quiver zero_ok;
    zero_ok.dims = {2, 0};
    zero_ok.arrows = {{0, 0, "loop"}};
    zero_ok.validate();  // isolated vertex may carry dimension 0
    zero_ok.arrows.push_back({0, 1, "to-zero"});
    CHECK_THROWS_AS(zero_ok.validate(), std::invalid_argument);
}

TEST_CASE("doubling adds one starred arrow per arrow") {
    Quiver loop = single_loop();
    const Quiver dl = quiver_double(loop);
    CHECK(dl.arrows.size() == 2);
    CHECK(dl.arrows[1].label == "a*");

    Quiver arrowless;
    arrowless.dims = {2, 2};
    CHECK(quiver_double(arrowless).arrows.empty());

    // two sources feeding one sink, k + (l-k) arrows
    Quiver two_source;
    two_source.dims = {4, 2, 3};
    for (int i = 0; i < 4; ++i) two_source.arrows.push_back({0, 2, "a" + std::to_string(i)});
    two_source.arrows.push_back({1, 2, "b"});
    const Quiver doubled = quiver_double(two_source);
    CHECK(doubled.arrows.size() == 10);
}

TEST_CASE("doubled representation carries transposes") {
    QuiverRep rep;
    rep.quiver.dims = {2, 3};
    rep.quiver.arrows = {{0, 1, "a"}};
    rep.matrices = {random_mat(3, 2)};
    const QuiverRep dd = quiver_double_rep(rep);
    REQUIRE(dd.matrices.size() == 2);
    CHECK((dd.matrices[1] - rep.matrices[0].transpose()).cwiseAbs().maxCoeff() == 0.0);
    dd.validate();
}

TEST_CASE("cycles of a single loop") {
    const std::vector<Cycle> cycles = enumerate_cycles(single_loop(), 3);
    REQUIRE(cycles.size() == 3);
    CHECK(cycles[0].arrows == std::vector<int>{0});
    CHECK(cycles[1].arrows == std::vector<int>{0, 0});
    CHECK(cycles[2].arrows == std::vector<int>{0, 0, 0});
}

TEST_CASE("cycles of the doubled loop match two-letter necklaces") {
    const Quiver dl = quiver_double(single_loop());
    const std::vector<Cycle> cycles = enumerate_cycles(dl, 2);
    // lengths 1 and 2 over two loop letters: 2 + 3 necklaces
    CHECK(cycles.size() == 5);
}

TEST_CASE("acyclic quivers have no cycles until doubled") {
    Quiver path;
    path.dims = {2, 3, 2};
    path.arrows = {{0, 1, "a"}, {1, 2, "b"}};
    CHECK(enumerate_cycles(path, 4).empty());
    const Quiver doubled = quiver_double(path);
    CHECK(!enumerate_cycles(doubled, 4).empty());
}

TEST_CASE("cycle representatives are canonical and walk constraints hold") {
    Quiver q;
    q.dims = {2, 2};
    q.arrows = {{0, 1, "a"}, {1, 0, "b"}, {0, 0, "c"}};
    const std::vector<Cycle> cycles = enumerate_cycles(q, 4);
    for (const Cycle& c : cycles) {
        for (std::size_t i = 0; i < c.arrows.size(); ++i) {
            const Arrow& cur = q.arrows[static_cast<std::size_t>(c.arrows[i])];
            const Arrow& next = q.arrows[static_cast<std::size_t>(c.arrows[(i + 1) % c.arrows.size()])];
            CHECK(next.source == cur.target);
        }
        std::vector<int> rot = c.arrows;
        for (std::size_t s = 1; s < rot.size(); ++s) {
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            CHECK(c.arrows <= rot);
        }
    }
}

TEST_CASE("cycle bound formula") {
    Quiver q;
    q.dims = {3, 1};  // sum 4
    q.arrows = {{0, 1, "a"}, {0, 1, "b"}, {0, 1, "c"}, {0, 1, "d"}};  // multiplicity 4 -> r = 3
    CHECK(quiver_cycle_bound(q) == 400);
    CHECK(quiver_cycle_bound(single_loop()) == 81);  // multiplicity 1, (1+2)*3 squared
}

TEST_CASE("per-vertex orthogonal conjugation is isometric") {
    for (int trial = 0; trial < 10; ++trial) {
        QuiverRep a;
        a.quiver.dims = {3, 2, 4};
        a.quiver.arrows = {{0, 1, "a"}, {1, 2, "b"}, {2, 0, "c"}, {0, 0, "d"}};
        for (const Arrow& ar : a.quiver.arrows)
            a.matrices.push_back(random_mat(a.quiver.dims[static_cast<std::size_t>(ar.target)],
                                            a.quiver.dims[static_cast<std::size_t>(ar.source)]));
        std::vector<RealMatrix> os;
        for (int d : a.quiver.dims) os.push_back(random_orth(d));
        QuiverRep b = a;
        for (std::size_t i = 0; i < a.matrices.size(); ++i) {
            const Arrow& ar = a.quiver.arrows[i];
            b.matrices[i] = os[static_cast<std::size_t>(ar.target)].transpose() * a.matrices[i] *
                            os[static_cast<std::size_t>(ar.source)];
        }
        const CycleCheckResult res = quiver_isometric(a, b, 6, 1e-8);
        CHECK(res.equal);
        CHECK(quiver_isometric(a, a, 6, 1e-8).equal);
    }
}

TEST_CASE("perturbations are rejected with a short witness") {
    QuiverRep a;
    a.quiver.dims = {3, 2};
    a.quiver.arrows = {{0, 1, "a"}, {1, 0, "b"}};
    a.matrices = {random_mat(2, 3), random_mat(3, 2)};
    QuiverRep b = a;
    b.matrices[0](1, 2) += 1e-2;
    const CycleCheckResult res = quiver_isometric(a, b, 6, 1e-8);
    REQUIRE(!res.equal);
    CHECK(res.witness->arrows.size() <= 2);
}

TEST_CASE("single loop reduces to the word criterion on the matrix and its transpose") {
    // doubled single loop = alphabet {A, A^t}; cycle traces therefore match
    // word traces, and orthogonal conjugation passes while scaling fails
    QuiverRep a;
    a.quiver = single_loop();
    a.matrices = {random_mat(3, 3)};
    const RealMatrix o = random_orth(3);
    QuiverRep b = a;
    b.matrices[0] = o.transpose() * a.matrices[0] * o;
    CHECK(quiver_isometric(a, b, 5, 1e-8).equal);
    b.matrices[0] *= 1.01;
    CHECK(!quiver_isometric(a, b, 5, 1e-8).equal);
}

TEST_CASE("mismatched quivers are rejected") {
    QuiverRep a, b;
    a.quiver.dims = {2};
    a.quiver.arrows = {{0, 0, "x"}};
    a.matrices = {random_mat(2, 2)};
    b.quiver.dims = {3};
    b.quiver.arrows = {{0, 0, "x"}};
    b.matrices = {random_mat(3, 3)};
    CHECK_THROWS_AS(quiver_isometric(a, b, 3, 1e-8), std::invalid_argument);
}

}  // TEST_SUITE
