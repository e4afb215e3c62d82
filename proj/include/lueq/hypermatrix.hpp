#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace lueq {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Dense real hypermatrix (tensor) of runtime order. Entries are stored
/// column-major: the first index varies fastest. All externally visible
/// layout is pinned by unfold() and vec(); the storage order itself is an
/// implementation detail.
///
/// Modes and indices are 0-based throughout the C++ API; error messages
/// report modes 1-based.
class Hypermatrix {
public:
    Hypermatrix() = default;

    /// Zero-filled hypermatrix of the given shape. Every extent must be >= 1.
    explicit Hypermatrix(std::vector<Eigen::Index> shape);

    Hypermatrix(std::vector<Eigen::Index> shape, std::vector<double> data);

    static Hypermatrix from_vector(const RealVector& v);
    static Hypermatrix from_matrix(const RealMatrix& m);
    /// Order-3 hypermatrix with entries w[a,b,c] = u[a] * m[b,c].
    static Hypermatrix from_vec_mat(const RealVector& u, const RealMatrix& m);
    /// Order-3 hypermatrix with entries w[a,b,c] = m[a,c] * u[b].
    static Hypermatrix from_mat_mid_vec(const RealMatrix& m, const RealVector& u);

    int order() const { return static_cast<int>(shape_.size()); }
    const std::vector<Eigen::Index>& shape() const { return shape_; }
    Eigen::Index dim(int mode) const { return shape_.at(static_cast<std::size_t>(mode)); }
    Eigen::Index size() const { return static_cast<Eigen::Index>(data_.size()); }

    double operator[](Eigen::Index linear) const { return data_[static_cast<std::size_t>(linear)]; }
    double& operator[](Eigen::Index linear) { return data_[static_cast<std::size_t>(linear)]; }

    double at(std::span<const Eigen::Index> idx) const;
    double& at(std::span<const Eigen::Index> idx);
    double at(std::initializer_list<Eigen::Index> idx) const;
    double& at(std::initializer_list<Eigen::Index> idx);

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    double frobenius_norm() const;
    double max_abs() const;

    RealVector as_vector() const;  ///< order-1 contents
    RealMatrix as_matrix() const;  ///< order-2 contents

    Hypermatrix scaled(double s) const;

private:
    Eigen::Index linear_index(std::span<const Eigen::Index> idx) const;

    std::vector<Eigen::Index> shape_;
    std::vector<double> data_;
};

/// Outer product: shape is concat(shape(a), shape(b)),
/// entry (i...,j...) = a[i...] * b[j...].
Hypermatrix outer(const Hypermatrix& a, const Hypermatrix& b);

/// Multilinear matrix multiplication (x_1,...,x_d) * a where
/// out[i_1..i_d] = sum_j (x_1)_{i_1 j_1} ... (x_d)_{i_d j_d} a[j_1..j_d].
/// Requires mats.size() == order(a) and mats[k].cols() == shape(a)[k].
Hypermatrix multilinear_apply(std::span<const RealMatrix> mats, const Hypermatrix& a);
Hypermatrix multilinear_apply(std::initializer_list<RealMatrix> mats, const Hypermatrix& a);

/// Mode-k product: contracts x against mode `mode` of a.
Hypermatrix mode_apply(const RealMatrix& x, const Hypermatrix& a, int mode);

/// k-mode unfolding: rows index mode `mode`, column of entry (i_1,...,i_d) is
/// j = sum_{l != k} i_l * prod_{m < l, m != k} n_m  (0-based).
RealMatrix unfold(const Hypermatrix& a, int mode);

/// Inverse of unfold for the given target shape.
Hypermatrix fold(const RealMatrix& m, const std::vector<Eigen::Index>& shape, int mode);

/// Column-stacking vectorization.
RealVector vec(const RealMatrix& m);

/// Kronecker product, (x (x) y)(i*p+k, j*q+l) = x(i,j) * y(k,l) with y of size p x q.
RealMatrix kron(const RealMatrix& x, const RealMatrix& y);

double max_abs_diff(const Hypermatrix& a, const Hypermatrix& b);
bool approx_equal(const Hypermatrix& a, const Hypermatrix& b, double tol = 1e-10);

}  // namespace lueq
