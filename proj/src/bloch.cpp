#include "lueq/bloch.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

namespace lueq {

namespace {

using Complex = std::complex<double>;

constexpr double kZeroImagTol = 1e-10;

ComplexMatrix unit_matrix(int d, int r, int c) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(r, c) = 1.0;
    return m;
}

ComplexMatrix kroneckerC(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
}

std::vector<int> subset_members(std::uint32_t key, int n) {
    std::vector<int> out;
    for (int k = 0; k < n; ++k)
        if (key & (1u << k)) out.push_back(k);
    return out;
}

}  // namespace

GGMBasis ggm_basis(int d) {
    if (d < 2) throw std::invalid_argument("ggm_basis requires dimension >= 2");
    GGMBasis basis;
    basis.d = d;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k)
            basis.mats.push_back(inv_sqrt2 * (unit_matrix(d, j, k) + unit_matrix(d, k, j)));
    const Complex mi(0.0, -1.0);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k)
            basis.mats.push_back(mi * inv_sqrt2 * (unit_matrix(d, j, k) - unit_matrix(d, k, j)));
    for (int j = 1; j < d; ++j) {
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        for (int l = 0; l < j; ++l) m(l, l) = 1.0;
        m(j, j) = -static_cast<double>(j);
        basis.mats.push_back(m / std::sqrt(static_cast<double>(j) * (j + 1)));
    }
    return basis;
}

int DensityMatrix::total_dim() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

DensityMatrix DensityMatrix::checked(std::vector<int> dims, ComplexMatrix mat, double tol) {
    if (dims.empty()) throw ValidationError("state has no subsystems");
    for (int d : dims)
        if (d < 2) throw ValidationError("subsystem dimensions must be >= 2");
    Eigen::Index n = 1;
    for (int d : dims) n *= d;
    if (mat.rows() != n || mat.cols() != n) {
        std::ostringstream os;
        os << "matrix is " << mat.rows() << "x" << mat.cols() << " but the subsystem dimensions require " << n << "x" << n;
        throw ValidationError(os.str());
    }
    const double asym = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max |rho - rho^dagger| = " << asym;
        throw ValidationError(os.str());
    }
    mat = 0.5 * (mat + mat.adjoint().eval());
    const double trace_dev = std::abs(mat.trace() - Complex(1.0, 0.0));
    if (trace_dev > tol) {
        std::ostringstream os;
        os << "trace deviates from 1 by " << trace_dev;
        throw ValidationError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-9) {
        std::ostringstream os;
        os << "matrix is not positive semidefinite: smallest eigenvalue = " << min_eig;
        throw ValidationError(os.str());
    }
    return DensityMatrix{std::move(dims), std::move(mat)};
}

std::uint32_t HypermatrixRep::key(std::initializer_list<int> subsystems) {
    std::uint32_t k = 0;
    for (int s : subsystems) k |= (1u << s);
    return k;
}

const Hypermatrix& HypermatrixRep::tensor(std::uint32_t key) const {
    auto it = tensors.find(key);
    if (it == tensors.end()) throw std::out_of_range("hypermatrix representation has no tensor for this subset");
    return it->second;
}

const Hypermatrix& HypermatrixRep::tensor(std::initializer_list<int> subsystems) const {
    return tensor(key(subsystems));
}

HypermatrixRep extract_rep(const DensityMatrix& rho) {
    const int n = rho.subsystems();
    std::vector<GGMBasis> bases;
    bases.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) bases.push_back(ggm_basis(rho.dims[static_cast<std::size_t>(k)]));

    HypermatrixRep rep;
    rep.dims = rho.dims;

    for (std::uint32_t key = 1; key < (1u << n); ++key) {
        const std::vector<int> members = subset_members(key, n);
        std::vector<Eigen::Index> shape;
        double scale = 1.0;
        for (int s : members) {
            shape.push_back(rep.delta(s));
            scale *= rho.dims[static_cast<std::size_t>(s)];
        }
        Hypermatrix t(shape);

        std::vector<Eigen::Index> idx(members.size(), 0);
        for (Eigen::Index lin = 0; lin < t.size(); ++lin) {
            ComplexMatrix op = ComplexMatrix::Identity(1, 1);
            std::size_t mpos = 0;
            for (int k = 0; k < n; ++k) {
                if (mpos < members.size() && members[mpos] == k) {
                    op = kroneckerC(op, bases[static_cast<std::size_t>(k)].mats[static_cast<std::size_t>(idx[mpos])]);
                    ++mpos;
                } else {
                    op = kroneckerC(op, ComplexMatrix::Identity(rho.dims[static_cast<std::size_t>(k)], rho.dims[static_cast<std::size_t>(k)]));
                }
            }
            const Complex val = (rho.mat * op).trace();
            if (std::abs(val.imag()) > kZeroImagTol)
                throw ValidationError("Fano coefficient has imaginary part " + std::to_string(val.imag()));
            t[lin] = scale * val.real();

            for (std::size_t l = 0; l < idx.size(); ++l) {
                if (++idx[l] < shape[l]) break;
                idx[l] = 0;
            }
        }
        rep.tensors.emplace(key, std::move(t));
    }
    return rep;
}

DensityMatrix reconstruct(const HypermatrixRep& rep) {
    const int n = rep.subsystems();
    if (n == 0) throw std::invalid_argument("empty representation");
    std::vector<GGMBasis> bases;
    for (int k = 0; k < n; ++k) bases.push_back(ggm_basis(rep.dims[static_cast<std::size_t>(k)]));

    Eigen::Index total = 1;
    for (int d : rep.dims) total *= d;
    ComplexMatrix acc = ComplexMatrix::Identity(total, total);

    for (std::uint32_t key = 1; key < (1u << n); ++key) {
        const Hypermatrix& t = rep.tensor(key);
        const std::vector<int> members = subset_members(key, n);
        if (static_cast<int>(members.size()) != t.order())
            throw std::invalid_argument("tensor order does not match its subset");
        for (std::size_t m = 0; m < members.size(); ++m)
            if (t.dim(static_cast<int>(m)) != rep.delta(members[m]))
                throw std::invalid_argument("tensor extent does not match subsystem dimension");

        std::vector<Eigen::Index> idx(members.size(), 0);
        for (Eigen::Index lin = 0; lin < t.size(); ++lin) {
            if (t[lin] != 0.0) {
                ComplexMatrix op = ComplexMatrix::Identity(1, 1);
                std::size_t mpos = 0;
                for (int k = 0; k < n; ++k) {
                    if (mpos < members.size() && members[mpos] == k) {
                        op = kroneckerC(op, bases[static_cast<std::size_t>(k)].mats[static_cast<std::size_t>(idx[mpos])]);
                        ++mpos;
                    } else {
                        op = kroneckerC(op, ComplexMatrix::Identity(rep.dims[static_cast<std::size_t>(k)], rep.dims[static_cast<std::size_t>(k)]));
                    }
                }
                acc += t[lin] * op;
            }
            for (std::size_t l = 0; l < idx.size(); ++l) {
                if (++idx[l] < t.shape()[l]) break;
                idx[l] = 0;
            }
        }
    }
    acc /= static_cast<double>(total);
    return DensityMatrix::checked(rep.dims, std::move(acc));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int k) {
    const int n = rho.subsystems();
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: subsystem index out of range");
    const int dk = rho.dims[static_cast<std::size_t>(k)];

    // strides of the computational-basis index decomposition (row-major over
    // subsystems: subsystem 0 is the slowest index, matching Kronecker order)
    std::vector<Eigen::Index> stride(static_cast<std::size_t>(n), 1);
    for (int s = n - 2; s >= 0; --s)
        stride[static_cast<std::size_t>(s)] = stride[static_cast<std::size_t>(s) + 1] * rho.dims[static_cast<std::size_t>(s) + 1];

    std::vector<int> new_dims;
    Eigen::Index reduced = 1;
    for (int s = 0; s < n; ++s)
        if (s != k) {
            new_dims.push_back(rho.dims[static_cast<std::size_t>(s)]);
            reduced *= rho.dims[static_cast<std::size_t>(s)];
        }
    if (new_dims.empty()) throw std::invalid_argument("partial_trace: cannot trace out the only subsystem");

    ComplexMatrix out = ComplexMatrix::Zero(reduced, reduced);
    std::vector<int> ridx(static_cast<std::size_t>(n - 1), 0), cidx(static_cast<std::size_t>(n - 1), 0);
    for (Eigen::Index r = 0; r < reduced; ++r) {
        for (Eigen::Index c = 0; c < reduced; ++c) {
            // rebuild full indices with subsystem k summed over
            Eigen::Index rbase = 0, cbase = 0;
            {
                Eigen::Index rr = r, cc = c;
                for (int s = n - 1; s >= 0; --s) {
                    if (s == k) continue;
                    const int ds = rho.dims[static_cast<std::size_t>(s)];
                    rbase += (rr % ds) * stride[static_cast<std::size_t>(s)];
                    cbase += (cc % ds) * stride[static_cast<std::size_t>(s)];
                    rr /= ds;
                    cc /= ds;
                }
            }
            Complex sum = 0.0;
            for (int i = 0; i < dk; ++i)
                sum += rho.mat(rbase + i * stride[static_cast<std::size_t>(k)], cbase + i * stride[static_cast<std::size_t>(k)]);
            out(r, c) = sum;
        }
    }
    return DensityMatrix{std::move(new_dims), std::move(out)};
}

HypermatrixRep partial_trace_rep(const HypermatrixRep& rep, int k) {
    const int n = rep.subsystems();
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace_rep: subsystem index out of range");
    if (n < 2) throw std::invalid_argument("partial_trace_rep: cannot trace out the only subsystem");
    HypermatrixRep out;
    for (int s = 0; s < n; ++s)
        if (s != k) out.dims.push_back(rep.dims[static_cast<std::size_t>(s)]);
    for (const auto& [key, t] : rep.tensors) {
        if (key & (1u << k)) continue;
        // reindex bits above k downward
        const std::uint32_t low = key & ((1u << k) - 1u);
        const std::uint32_t high = key >> (k + 1);
        out.tensors.emplace(low | (high << k), t);
    }
    return out;
}

DensityMatrix apply_local_unitaries(const DensityMatrix& rho, std::span<const ComplexMatrix> us) {
    const int n = rho.subsystems();
    if (static_cast<int>(us.size()) != n)
        throw std::invalid_argument("apply_local_unitaries: need one unitary per subsystem");
    ComplexMatrix u = ComplexMatrix::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
        const ComplexMatrix& uk = us[static_cast<std::size_t>(k)];
        const int dk = rho.dims[static_cast<std::size_t>(k)];
        if (uk.rows() != dk || uk.cols() != dk)
            throw std::invalid_argument("apply_local_unitaries: factor " + std::to_string(k + 1) + " has wrong size");
        const double dev = (uk.adjoint() * uk - ComplexMatrix::Identity(dk, dk)).cwiseAbs().maxCoeff();
        if (dev > 1e-10)
            throw std::invalid_argument("apply_local_unitaries: factor " + std::to_string(k + 1) +
                                        " is not unitary (|U^dagger U - I| = " + std::to_string(dev) + ")");
        u = kroneckerC(u, uk);
    }
    ComplexMatrix m = u * rho.mat * u.adjoint();
    m = 0.5 * (m + m.adjoint().eval());
    return DensityMatrix{rho.dims, std::move(m)};
}

RealMatrix induced_orthogonal(const ComplexMatrix& u) {
    const int d = static_cast<int>(u.rows());
    if (u.cols() != d || d < 2) throw std::invalid_argument("induced_orthogonal: U must be square with d >= 2");
    const double dev = (u.adjoint() * u - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > 1e-10)
        throw std::invalid_argument("induced_orthogonal: U is not unitary (|U^dagger U - I| = " + std::to_string(dev) + ")");

    const GGMBasis basis = ggm_basis(d);
    const Eigen::Index m = static_cast<Eigen::Index>(basis.mats.size());
    RealMatrix x(m, m);
    std::vector<ComplexMatrix> conj(basis.mats.size());
    for (std::size_t a = 0; a < basis.mats.size(); ++a) conj[a] = u * basis.mats[a] * u.adjoint();
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) {
            const Complex val = (basis.mats[static_cast<std::size_t>(b)] * conj[static_cast<std::size_t>(a)]).trace();
            if (std::abs(val.imag()) > kZeroImagTol)
                throw std::invalid_argument("induced_orthogonal: coefficient has nonreal part");
            x(a, b) = val.real();
        }
    const double orth_dev = (x.transpose() * x - RealMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
    if (orth_dev > 1e-8)
        throw std::invalid_argument("induced_orthogonal: result not orthogonal; input is likely not unitary");
    return x;
}

ComplexMatrix random_su(int d, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("random_su requires dimension >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        Complex diag = r(i, i);
        q.col(i) *= (diag == Complex(0.0) ? Complex(1.0) : diag / std::abs(diag));
    }
    const Complex det = q.determinant();
    q *= std::pow(std::conj(det), 1.0 / d);
    return q;
}

DensityMatrix random_density(std::vector<int> dims, std::uint64_t seed, int rank) {
    if (dims.empty()) throw std::invalid_argument("random_density: dims must be nonempty");
    Eigen::Index n = 1;
    for (int d : dims) {
        if (d < 2) throw std::invalid_argument("random_density: subsystem dimensions must be >= 2");
        n *= d;
    }
    const Eigen::Index r = (rank <= 0 || rank > n) ? n : rank;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, r);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < r; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint().eval());
    return DensityMatrix{std::move(dims), std::move(rho)};
}

LuPair random_lu_pair(std::vector<int> dims, std::uint64_t seed) {
    std::mt19937_64 master(seed);
    const std::uint64_t state_seed = master();
    LuPair pair;
    pair.rho = random_density(dims, state_seed);
    pair.unitaries.reserve(dims.size());
    for (int d : dims) pair.unitaries.push_back(random_su(d, master()));
    pair.rho_hat = apply_local_unitaries(pair.rho, pair.unitaries);
    return pair;
}

}  // namespace lueq
