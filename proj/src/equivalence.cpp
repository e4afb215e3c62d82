#include "lueq/equivalence.hpp"

#include "lueq/hyperdet.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace lueq {

namespace {

constexpr double kZeroNorm = 1e-10;

const std::array<std::array<int, 4>, 3> kChoices = {{{1, 2, 2, 3}, {2, 1, 1, 3}, {3, 3, 1, 2}}};

std::string choice_str(const std::array<int, 4>& c) {
    std::ostringstream os;
    os << '(' << c[0] << ',' << c[1] << ',' << c[2] << ',' << c[3] << ')';
    return os.str();
}

std::vector<std::array<int, 4>> parse_choices(const std::string& choice) {
    if (choice == "all") return {kChoices.begin(), kChoices.end()};
    for (const auto& c : kChoices) {
        std::string s;
        for (int v : c) s += static_cast<char>('0' + v);
        if (choice == s) return {c};
    }
    throw std::invalid_argument("unknown choice '" + choice + "' (expected all, 1223, 2113 or 3312)");
}

bool norm_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::max(a, b)); }

// The hyperdeterminant diagnostics compare values of a degree-36 polynomial.
// On the v o M outer products fed to them the polynomial vanishes
// identically (every slice pencil is rank one), so computed values are
// rounding residue; they are compared against a floor scaled to the 36th
// power of the tensor magnitude before any relative comparison applies.
struct DetComparison {
    bool equal = false;
    bool both_zero = false;
    bool nonzero = false;
};

DetComparison compare_dets(double da, double db, double scale_a, double scale_b, double rel_tol) {
    const double scale = std::max(1.0, std::max(scale_a, scale_b));
    const double floor = 1e-30 * std::pow(scale, 36);
    DetComparison out;
    const bool za = std::abs(da) <= floor, zb = std::abs(db) <= floor;
    out.both_zero = za && zb;
    out.nonzero = !za && !zb;
    out.equal = out.both_zero || std::abs(da - db) <= rel_tol * std::max(std::abs(da), std::abs(db));
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// Subsystem-ordered outer products of the tripartite representation. The
// middle-vector arrangement of T_2 o T_13 keeps the column pairing of every
// unfolding aligned with (T_123)_(i), which is what the simultaneous
// equivalence argument needs.
struct TripartiteTensors {
    Hypermatrix w1, w2, w3, w4;  // T_123, T_1 o T_23, T_2 o T_13, T_12 o T_3
    RealVector t[3];
    RealMatrix t12, t13, t23;
};

TripartiteTensors tripartite_tensors(const HypermatrixRep& rep) {
    TripartiteTensors out;
    out.t[0] = rep.tensor({0}).as_vector();
    out.t[1] = rep.tensor({1}).as_vector();
    out.t[2] = rep.tensor({2}).as_vector();
    out.t12 = rep.tensor({0, 1}).as_matrix();
    out.t13 = rep.tensor({0, 2}).as_matrix();
    out.t23 = rep.tensor({1, 2}).as_matrix();
    out.w1 = rep.tensor({0, 1, 2});
    out.w2 = Hypermatrix::from_vec_mat(out.t[0], out.t23);
    out.w3 = Hypermatrix::from_mat_mid_vec(out.t13, out.t[1]);
    out.w4 = outer(Hypermatrix::from_matrix(out.t12), Hypermatrix::from_vector(out.t[2]));
    return out;
}

const Hypermatrix& slot_tensor(const TripartiteTensors& t, int slot) {
    switch (slot) {
        case 1: return t.w1;
        case 2: return t.w2;
        case 3: return t.w3;
        default: return t.w4;
    }
}

void require_tripartite(const HypermatrixRep& rep) {
    if (rep.subsystems() != 3) throw std::invalid_argument("expected a tripartite representation");
}

Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::not_applicable: return "not-applicable";
    }
    return "?";
}

const char* overall_name(Overall o) {
    switch (o) {
        case Overall::not_equivalent: return "not-equivalent";
        case Overall::consistent_with_quasi_lu: return "consistent-with-quasi-LU";
        case Overall::quasi_lu_certified: return "quasi-LU-certified";
        case Overall::lu_certified: return "LU-certified";
        case Overall::inconclusive: return "inconclusive";
    }
    return "?";
}

const Criterion* CheckReport::find(const std::string& name, const std::string& scope) const {
    for (const Criterion& c : criteria)
        if (c.name == name && c.scope == scope) return &c;
    return nullptr;
}

bool CheckReport::any_failed() const {
    for (const Criterion& c : criteria)
        if (c.verdict == Verdict::fail) return true;
    return false;
}

int CheckReport::exit_code() const {
    switch (overall) {
        case Overall::not_equivalent: return 2;
        case Overall::inconclusive: return 3;
        default: return 0;
    }
}

std::string CheckReport::to_json(int indent) const {
    nlohmann::json j;
    j["overall"] = overall_name(overall);
    j["subsystems"] = subsystems;
    j["depth"] = depth;
    j["tolerance"] = tol;
    j["mode"] = mode;
    j["exit_code"] = exit_code();
    j["preconditions"] = preconditions;
    j["criteria"] = nlohmann::json::array();
    for (const Criterion& c : criteria) {
        nlohmann::json cj;
        cj["name"] = c.name;
        if (!c.scope.empty()) cj["choice"] = c.scope;
        cj["verdict"] = verdict_name(c.verdict);
        if (!c.detail.empty()) cj["detail"] = c.detail;
        j["criteria"].push_back(std::move(cj));
    }
    return indent >= 0 ? j.dump(indent) : j.dump();
}

std::string CheckReport::summary() const {
    std::ostringstream os;
    os << "overall: " << overall_name(overall) << " (depth " << depth << ", mode " << mode << ")\n";
    for (const std::string& p : preconditions) os << "  note: " << p << '\n';
    for (const Criterion& c : criteria) {
        os << "  [" << verdict_name(c.verdict) << "] ";
        if (!c.scope.empty()) os << c.scope << ' ';
        os << c.name;
        if (!c.detail.empty()) os << " -- " << c.detail;
        os << '\n';
    }
    return os.str();
}

Verdict sign_condition(const HypermatrixRep& a, const HypermatrixRep& b, int i, int j, double tol,
                       double* scalar_a, double* scalar_b) {
    require_tripartite(a);
    require_tripartite(b);
    auto scalar = [&](const HypermatrixRep& rep) {
        const RealVector ti = rep.tensor({i}).as_vector();
        const RealVector tj = rep.tensor({j}).as_vector();
        const RealMatrix tij = (i < j) ? rep.tensor({i, j}).as_matrix() : RealMatrix(rep.tensor({j, i}).as_matrix().transpose());
        return double(ti.transpose() * tij * tj);
    };
    const double sa = scalar(a), sb = scalar(b);
    if (scalar_a) *scalar_a = sa;
    if (scalar_b) *scalar_b = sb;
    if (std::abs(sa) <= tol || std::abs(sb) <= tol) return Verdict::inconclusive;
    return verdict_of((sa > 0) == (sb > 0));
}

TwoBlockFamily tripartite_family(const HypermatrixRep& rep, const std::array<int, 4>& choice, bool fallback) {
    require_tripartite(rep);
    TripartiteTensors t = tripartite_tensors(rep);
    const int i = choice[0];          // 1-based subsystem and unfolding mode
    const int mode = i - 1;
    TwoBlockFamily fam;
    for (int slot = 1; slot <= 4; ++slot) {
        if (fallback && slot == i + 1) {
            const Hypermatrix all3 = outer(outer(Hypermatrix::from_vector(t.t[0]), Hypermatrix::from_vector(t.t[1])),
                                           Hypermatrix::from_vector(t.t[2]));
            fam.left.push_back(unfold(all3, mode));
        } else {
            fam.left.push_back(unfold(slot_tensor(t, slot), mode));
        }
    }
    fam.right.push_back(t.t[static_cast<std::size_t>(i - 1)]);
    return fam;
}

InvertibilityResult invertibility_condition(const HypermatrixRep& rep, const std::array<int, 4>& choice,
                                            GramMode mode, double tol) {
    require_tripartite(rep);
    TripartiteTensors t = tripartite_tensors(rep);
    const int i = choice[0];
    const int unfold_mode = i - 1;

    RealMatrix gram;
    if (mode == GramMode::extension) {
        for (int slot = 1; slot <= 4; ++slot) {
            const RealMatrix m = unfold(slot_tensor(t, slot), unfold_mode);
            if (gram.size() == 0)
                gram = m.transpose() * m;
            else
                gram += m.transpose() * m;
        }
    } else if (mode == GramMode::fallback) {
        const Hypermatrix all3 = outer(outer(Hypermatrix::from_vector(t.t[0]), Hypermatrix::from_vector(t.t[1])),
                                       Hypermatrix::from_vector(t.t[2]));
        const RealMatrix m = unfold(all3, unfold_mode);
        gram = m.transpose() * m;
    } else {
        // the slot holding T_i o T_{j2 k} (T_{j2 k} o T_i for choice (3,3,1,2))
        const RealMatrix m = unfold(slot_tensor(t, i + 1), unfold_mode);
        gram = m.transpose() * m;
    }

    Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram, Eigen::EigenvaluesOnly);
    const RealVector ev = es.eigenvalues();  // ascending; Gram is PSD
    InvertibilityResult res;
    res.sigma_min = std::abs(ev[0]);
    res.sigma_max = std::abs(ev[ev.size() - 1]);
    res.sigma_second = ev.size() > 1 ? std::abs(ev[ev.size() - 2]) : res.sigma_max;
    res.verdict = (res.sigma_max > 0 && res.sigma_min > tol * res.sigma_max) ? Verdict::pass : Verdict::fail;
    return res;
}

namespace {

// ---------------------------------------------------------------------------
// bipartite

CheckReport check_bipartite_impl(const HypermatrixRep& a, const HypermatrixRep& b, const CheckOptions& opts) {
    if (a.subsystems() != 2 || b.subsystems() != 2)
        throw std::invalid_argument("check_bipartite expects bipartite representations");
    if (a.dims != b.dims) throw DimensionMismatchError("states live on different subsystem dimensions");

    CheckReport rep;
    rep.subsystems = 2;
    rep.tol = opts.tol;
    rep.mode = "strict";

    const RealVector t1 = a.tensor({0}).as_vector(), t2 = a.tensor({1}).as_vector();
    const RealMatrix t12 = a.tensor({0, 1}).as_matrix();
    const RealVector h1 = b.tensor({0}).as_vector(), h2 = b.tensor({1}).as_vector();
    const RealMatrix h12 = b.tensor({0, 1}).as_matrix();

    bool precondition_ok = true;
    for (const auto& [name, norm] : {std::pair<const char*, double>{"T1", t1.norm()},
                                     {"T2", t2.norm()},
                                     {"T12", t12.norm()}}) {
        if (norm <= kZeroNorm) {
            precondition_ok = false;
            rep.preconditions.push_back(std::string(name) + " is numerically zero (norm " + fmt(norm) +
                                        "); the equivalence theorem's standing assumption fails");
        }
    }

    // per-subsystem norm equalities (each one is an invariant)
    const bool n1 = norm_close(t1.norm(), h1.norm(), opts.tol);
    const bool n2 = norm_close(t2.norm(), h2.norm(), opts.tol);
    rep.criteria.push_back({"norm.T1", "", verdict_of(n1), fmt(t1.norm()) + " vs " + fmt(h1.norm())});
    rep.criteria.push_back({"norm.T2", "", verdict_of(n2), fmt(t2.norm()) + " vs " + fmt(h2.norm())});
    rep.criteria.push_back({"norm.some-subsystem", "", verdict_of(n1 || n2), ""});

    // trace identities over the gram alphabet of {T1 T2^t, T12}
    TwoBlockFamily fa, fb;
    fa.left = {RealMatrix(t1 * t2.transpose()), t12};
    fb.left = {RealMatrix(h1 * h2.transpose()), h12};
    TraceCheckOptions topts;
    topts.max_len = opts.max_word_len;
    topts.tol = opts.tol;
    const long long bound = word_bound_lemma1(t12.cols(), 0, t12.rows(), 2, 2);
    const TraceCheckResult tr = lemma1_isometric(fa, fb, topts);
    rep.depth = std::min<long long>(opts.max_word_len, bound);
    {
        std::string detail = std::to_string(tr.words_checked) + " canonical words, depth " + std::to_string(rep.depth) +
                             " of bound " + std::to_string(bound);
        if (!tr.equal)
            detail = "witness " + tr.witness->str() + ": " + fmt(tr.trace_a) + " vs " + fmt(tr.trace_b) + "; " + detail;
        rep.criteria.push_back({"trace.identities", "", verdict_of(tr.equal), std::move(detail)});
    }

    // two-qubit hyperdeterminant upgrade
    bool det_ok = true, det_nonzero = true, det_applicable = false;
    if (opts.qubit_det_check && a.dims != std::vector<int>{2, 2}) {
        rep.criteria.push_back({"det.qubit-upgrade", "", Verdict::not_applicable, "defined for qubit subsystems only"});
    } else if (opts.qubit_det_check) {
        det_applicable = true;
        for (int i = 0; i < 2; ++i) {
            const RealVector& ti = (i == 0) ? t1 : t2;
            const RealVector& hi = (i == 0) ? h1 : h2;
            const Hypermatrix wa = Hypermatrix::from_vec_mat(ti, t12);
            const Hypermatrix wb = Hypermatrix::from_vec_mat(hi, h12);
            const DetComparison cmp =
                compare_dets(det333(wa), det333(wb), wa.frobenius_norm(), wb.frobenius_norm(), opts.det_tol);
            det_ok = det_ok && cmp.equal;
            det_nonzero = det_nonzero && cmp.nonzero;
            rep.criteria.push_back({std::string("det.T") + std::to_string(i + 1) + "oT12", "", verdict_of(cmp.equal),
                                    fmt(det333(wa)) + " vs " + fmt(det333(wb)) +
                                        (cmp.nonzero ? "" : " (vanishing; the LU upgrade assumes nonzero values)")});
        }
    }

    const bool necessary_failed = !n1 || !n2 || !tr.equal;
    if (necessary_failed) {
        rep.overall = Overall::not_equivalent;
    } else if (!precondition_ok) {
        rep.overall = Overall::inconclusive;
    } else if (rep.depth >= bound && (n1 || n2) && tr.equal) {
        rep.overall = Overall::quasi_lu_certified;
        if (det_applicable && det_ok && det_nonzero) rep.overall = Overall::lu_certified;
    } else {
        rep.overall = Overall::consistent_with_quasi_lu;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// tripartite

CheckReport check_tripartite_impl(const HypermatrixRep& a, const HypermatrixRep& b, const CheckOptions& opts) {
    if (a.subsystems() != 3 || b.subsystems() != 3)
        throw std::invalid_argument("check_tripartite expects tripartite representations");
    if (a.dims != b.dims) throw DimensionMismatchError("states live on different subsystem dimensions");

    const bool fallback = opts.mode == CheckOptions::Mode::fallback;
    CheckReport rep;
    rep.subsystems = 3;
    rep.tol = opts.tol;
    rep.mode = fallback ? "fallback" : "strict";
    rep.depth = opts.max_word_len;

    const TripartiteTensors ta = tripartite_tensors(a);
    const TripartiteTensors tb = tripartite_tensors(b);

    // ---- preconditions
    bool precondition_ok = true;
    const std::array<std::pair<const char*, double>, 7> norms_a = {{{"T1", ta.t[0].norm()},
                                                                    {"T2", ta.t[1].norm()},
                                                                    {"T3", ta.t[2].norm()},
                                                                    {"T12", ta.t12.norm()},
                                                                    {"T13", ta.t13.norm()},
                                                                    {"T23", ta.t23.norm()},
                                                                    {"T123", ta.w1.frobenius_norm()}}};
    for (std::size_t idx = 0; idx < norms_a.size(); ++idx) {
        const auto& [name, norm] = norms_a[idx];
        const bool vector_part = idx < 3, pair_part = idx >= 3 && idx < 6;
        if (norm <= kZeroNorm && (vector_part || pair_part)) {
            if (vector_part || !fallback) precondition_ok = false;
            std::string note = std::string(name) + " is numerically zero (norm " + fmt(norm) + ")";
            if (pair_part && !fallback) note += "; consider --mode fallback, which relaxes this assumption";
            rep.preconditions.push_back(std::move(note));
        }
    }

    // ---- criterion 1: norm conditions
    bool norms_ok = true;
    const std::array<std::array<int, 3>, 3> patterns = {{{1, 2, 3}, {2, 1, 3}, {3, 1, 2}}};
    for (const auto& p : patterns) {
        const int i = p[0] - 1, j = p[1] - 1, k = p[2] - 1;
        const double vi = ta.t[static_cast<std::size_t>(i)].norm(), wi = tb.t[static_cast<std::size_t>(i)].norm();
        auto pair_norm = [&](const TripartiteTensors& t) {
            if (fallback) return t.t[static_cast<std::size_t>(j)].norm() * t.t[static_cast<std::size_t>(k)].norm();
            if (p[0] == 1) return t.t23.norm();
            if (p[0] == 2) return t.t13.norm();
            return t.t12.norm();
        };
        const double vjk = pair_norm(ta), wjk = pair_norm(tb);
        const bool ok = norm_close(vi, wi, opts.tol) || norm_close(vjk, wjk, opts.tol);
        norms_ok = norms_ok && ok;
        const std::string pair_label = fallback ? ("|T" + std::to_string(p[1]) + "||T" + std::to_string(p[2]) + "|")
                                                : ("|T" + std::to_string(p[1]) + std::to_string(p[2]) + "|");
        rep.criteria.push_back({"norm.pattern(" + std::to_string(p[0]) + "|" + std::to_string(p[1]) + std::to_string(p[2]) + ")",
                                "", verdict_of(ok),
                                "|T" + std::to_string(p[0]) + "|: " + fmt(vi) + " vs " + fmt(wi) + "; " + pair_label +
                                    ": " + fmt(vjk) + " vs " + fmt(wjk)});
    }
    if (fallback) {
        // the relaxed variant pins every vector norm
        for (int i = 0; i < 3; ++i) {
            const bool ok = norm_close(ta.t[static_cast<std::size_t>(i)].norm(), tb.t[static_cast<std::size_t>(i)].norm(), opts.tol);
            norms_ok = norms_ok && ok;
            rep.criteria.push_back({"norm.T" + std::to_string(i + 1), "", verdict_of(ok),
                                    fmt(ta.t[static_cast<std::size_t>(i)].norm()) + " vs " +
                                        fmt(tb.t[static_cast<std::size_t>(i)].norm())});
        }
    }

    // ---- criterion 2: sign conditions
    bool sign_failed = false, sign_definitive = false;
    for (const auto& [si, sj] : {std::pair<int, int>{0, 1}, {1, 2}, {2, 0}}) {
        double sa = 0, sb = 0;
        const Verdict v = sign_condition(a, b, si, sj, opts.tol, &sa, &sb);
        if (v == Verdict::fail) sign_failed = true;
        if (v == Verdict::pass) sign_definitive = true;
        rep.criteria.push_back({"sign.(" + std::to_string(si + 1) + "," + std::to_string(sj + 1) + ")", "", v,
                                fmt(sa) + " vs " + fmt(sb)});
    }

    // ---- per-choice criteria 3..5
    const std::vector<std::array<int, 4>> choices = parse_choices(opts.choice);
    bool traces_failed = false, partial_failed = false;
    bool some_choice_certifiable = false;
    for (const auto& choice : choices) {
        const std::string scope = choice_str(choice);
        const int i = choice[0];

        // criterion 3: two-block trace identities
        const TwoBlockFamily fam_a = tripartite_family(a, choice, fallback);
        const TwoBlockFamily fam_b = tripartite_family(b, choice, fallback);
        TraceCheckOptions topts;
        topts.max_len = opts.max_word_len;
        topts.tol = opts.tol;
        const long long bound = word_bound_lemma1(fam_a.left[0].cols(), 1, fam_a.left[0].rows(), 4, 5);
        const TraceCheckResult tr = lemma1_isometric(fam_a, fam_b, topts);
        if (!tr.equal) traces_failed = true;
        {
            std::string detail = std::to_string(tr.words_checked) + " canonical words, depth " +
                                 std::to_string(std::min<long long>(opts.max_word_len, bound)) + " of bound " +
                                 std::to_string(bound);
            if (!tr.equal)
                detail = "witness " + tr.witness->str() + ": " + fmt(tr.trace_a) + " vs " + fmt(tr.trace_b) + "; " + detail;
            rep.criteria.push_back({"trace.identities", scope, verdict_of(tr.equal), std::move(detail)});
        }

        // criterion 4: partial traces over subsystem i are quasi-LU equivalent
        CheckOptions sub = opts;
        sub.choice = "all";
        sub.qubit_det_check = false;
        const CheckReport pt = check_bipartite_impl(partial_trace_rep(a, i - 1), partial_trace_rep(b, i - 1), sub);
        Verdict ptv = Verdict::pass;
        if (pt.overall == Overall::not_equivalent) {
            ptv = Verdict::fail;
            partial_failed = true;
        } else if (pt.overall == Overall::inconclusive) {
            ptv = Verdict::inconclusive;
        }
        {
            std::string detail = std::string("reduced states over subsystems != ") + std::to_string(i) + ": " +
                                 overall_name(pt.overall);
            if (const Criterion* w = pt.find("trace.identities"); w && w->verdict == Verdict::fail)
                detail += " (" + w->detail + ")";
            rep.criteria.push_back({"partial-trace.check", scope, ptv, std::move(detail)});
        }

        // criterion 5: invertibility of the designated Gram
        const GramMode gmode = fallback ? GramMode::fallback : GramMode::strict;
        const InvertibilityResult inv = invertibility_condition(a, choice, gmode, opts.tol);
        rep.criteria.push_back({fallback ? "invertibility.fallback" : "invertibility.strict", scope, inv.verdict,
                                "sigma_min " + fmt(inv.sigma_min) + ", sigma_2 " + fmt(inv.sigma_second) +
                                    ", sigma_max " + fmt(inv.sigma_max)});
        const InvertibilityResult ext = invertibility_condition(a, choice, GramMode::extension, opts.tol);
        rep.criteria.push_back({"invertibility.extension", scope, ext.verdict,
                                "beyond the stated criterion; sigma_min " + fmt(ext.sigma_min) + ", sigma_max " +
                                    fmt(ext.sigma_max)});

        if (tr.equal && ptv == Verdict::pass && inv.verdict == Verdict::pass &&
            opts.max_word_len >= bound && pt.overall == Overall::quasi_lu_certified)
            some_choice_certifiable = true;
    }

    // ---- three-qubit hyperdeterminant upgrade
    bool det_ok = true, det_applicable = false, det_nonzero = true;
    if (opts.qubit_det_check && a.dims != std::vector<int>{2, 2, 2}) {
        rep.criteria.push_back({"det.qubit-upgrade", "", Verdict::not_applicable, "defined for qubit subsystems only"});
    } else if (opts.qubit_det_check) {
        det_applicable = true;
        for (const auto& [di, dj] : {std::pair<int, int>{0, 1}, {0, 2}, {1, 2}}) {
            auto tensor_of = [&](const TripartiteTensors& t) {
                const RealVector& ti = t.t[static_cast<std::size_t>(di)];
                const RealMatrix& tij = (di == 0 && dj == 1) ? t.t12 : (di == 0 && dj == 2) ? t.t13 : t.t23;
                return Hypermatrix::from_vec_mat(ti, tij);
            };
            const Hypermatrix wa = tensor_of(ta), wb = tensor_of(tb);
            const double da = det333(wa), db = det333(wb);
            const DetComparison cmp = compare_dets(da, db, wa.frobenius_norm(), wb.frobenius_norm(), opts.det_tol);
            det_ok = det_ok && cmp.equal;
            det_nonzero = det_nonzero && cmp.nonzero;
            rep.criteria.push_back({"det.T" + std::to_string(di + 1) + "oT" + std::to_string(di + 1) + std::to_string(dj + 1),
                                    "", verdict_of(cmp.equal),
                                    fmt(da) + " vs " + fmt(db) +
                                        (cmp.nonzero ? "" : " (vanishing; the LU upgrade assumes nonzero values)")});
        }
    }

    const bool necessary_failed = !norms_ok || sign_failed || traces_failed || partial_failed;
    if (necessary_failed) {
        rep.overall = Overall::not_equivalent;
    } else if (!precondition_ok) {
        rep.overall = Overall::inconclusive;
    } else if (some_choice_certifiable && sign_definitive) {
        rep.overall = Overall::quasi_lu_certified;
        if (det_applicable && det_ok && det_nonzero) rep.overall = Overall::lu_certified;
    } else {
        rep.overall = Overall::consistent_with_quasi_lu;
    }
    return rep;
}

}  // namespace

CheckReport check_bipartite(const HypermatrixRep& a, const HypermatrixRep& b, const CheckOptions& opts) {
    return check_bipartite_impl(a, b, opts);
}

CheckReport check_bipartite(const DensityMatrix& a, const DensityMatrix& b, const CheckOptions& opts) {
    if (a.dims != b.dims) throw DimensionMismatchError("states live on different subsystem dimensions");
    return check_bipartite_impl(extract_rep(a), extract_rep(b), opts);
}

CheckReport check_tripartite(const HypermatrixRep& a, const HypermatrixRep& b, const CheckOptions& opts) {
    return check_tripartite_impl(a, b, opts);
}

CheckReport check_tripartite(const DensityMatrix& a, const DensityMatrix& b, const CheckOptions& opts) {
    if (a.dims != b.dims) throw DimensionMismatchError("states live on different subsystem dimensions");
    return check_tripartite_impl(extract_rep(a), extract_rep(b), opts);
}

CheckReport check_states(const DensityMatrix& a, const DensityMatrix& b, const CheckOptions& opts) {
    if (a.dims != b.dims) throw DimensionMismatchError("states live on different subsystem dimensions");
    if (a.subsystems() == 2) return check_bipartite(a, b, opts);
    if (a.subsystems() == 3) return check_tripartite(a, b, opts);
    throw std::invalid_argument("equivalence checks support 2 or 3 subsystems, got " + std::to_string(a.subsystems()));
}

CheckReport check_reps(const HypermatrixRep& a, const HypermatrixRep& b, const CheckOptions& opts) {
    if (a.dims != b.dims) throw DimensionMismatchError("representations live on different subsystem dimensions");
    if (a.subsystems() == 2) return check_bipartite(a, b, opts);
    if (a.subsystems() == 3) return check_tripartite(a, b, opts);
    throw std::invalid_argument("equivalence checks support 2 or 3 subsystems, got " + std::to_string(a.subsystems()));
}

std::string describe_sufficient_bounds(const std::vector<int>& dims) {
    std::ostringstream os;
    auto delta = [](int d) { return static_cast<long long>(d) * d - 1; };
    if (dims.size() == 2) {
        const long long d1 = delta(dims[0]), d2 = delta(dims[1]);
        const long long bound = word_bound_lemma1(d2, 0, d1, 2, 2);
        os << "bipartite sufficient word length: 16*(delta1+delta2)^2 = " << bound;
        os << " (checking all canonical words of that length is infeasible; the default depth is a truncation)";
    } else if (dims.size() == 3) {
        os << "tripartite sufficient word lengths per choice:";
        for (const auto& c : kChoices) {
            const long long di = delta(dims[static_cast<std::size_t>(c[0] - 1)]);
            const long long dj2 = delta(dims[static_cast<std::size_t>(c[2] - 1)]);
            const long long dk = delta(dims[static_cast<std::size_t>(c[3] - 1)]);
            os << ' ' << choice_str(c) << ": 25*(1+delta_i+delta_j2*delta_k)^2 = "
               << word_bound_lemma1(dj2 * dk, 1, di, 4, 5) << ';';
        }
        os << " plus the bipartite bound for the partial-trace criterion."
           << " Exhaustive checking at these lengths is infeasible; failures at any depth are conclusive.";
    } else {
        os << "no bounds available for " << dims.size() << " subsystems";
    }
    return os.str();
}

}  // namespace lueq
