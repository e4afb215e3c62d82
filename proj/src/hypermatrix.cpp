#include "lueq/hypermatrix.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lueq {

namespace {

Eigen::Index checked_size(const std::vector<Eigen::Index>& shape) {
    if (shape.empty()) throw std::invalid_argument("hypermatrix order must be at least 1");
    Eigen::Index n = 1;
    for (Eigen::Index e : shape) {
        if (e < 1) throw std::invalid_argument("hypermatrix extents must be positive");
        n *= e;
    }
    return n;
}

}  // namespace

Hypermatrix::Hypermatrix(std::vector<Eigen::Index> shape) : shape_(std::move(shape)) {
    data_.assign(static_cast<std::size_t>(checked_size(shape_)), 0.0);
}

Hypermatrix::Hypermatrix(std::vector<Eigen::Index> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (checked_size(shape_) != static_cast<Eigen::Index>(data_.size()))
        throw std::invalid_argument("hypermatrix data length does not match shape");
}

Hypermatrix Hypermatrix::from_vector(const RealVector& v) {
    Hypermatrix h({v.size()});
    for (Eigen::Index i = 0; i < v.size(); ++i) h[i] = v[i];
    return h;
}

Hypermatrix Hypermatrix::from_matrix(const RealMatrix& m) {
    Hypermatrix h({m.rows(), m.cols()});
    // column-major storage matches Eigen's default layout
    Eigen::Map<RealMatrix>(h.data_.data(), m.rows(), m.cols()) = m;
    return h;
}

Hypermatrix Hypermatrix::from_vec_mat(const RealVector& u, const RealMatrix& m) {
    Hypermatrix h({u.size(), m.rows(), m.cols()});
    Eigen::Index p = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index a = 0; a < u.size(); ++a) h[p++] = u[a] * m(r, c);
    return h;
}

Hypermatrix Hypermatrix::from_mat_mid_vec(const RealMatrix& m, const RealVector& u) {
    Hypermatrix h({m.rows(), u.size(), m.cols()});
    Eigen::Index p = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index b = 0; b < u.size(); ++b)
            for (Eigen::Index r = 0; r < m.rows(); ++r) h[p++] = m(r, c) * u[b];
    return h;
}

Eigen::Index Hypermatrix::linear_index(std::span<const Eigen::Index> idx) const {
    if (idx.size() != shape_.size()) throw std::invalid_argument("index arity mismatch");
    Eigen::Index lin = 0, stride = 1;
    for (std::size_t k = 0; k < shape_.size(); ++k) {
        if (idx[k] < 0 || idx[k] >= shape_[k]) throw std::out_of_range("hypermatrix index out of range");
        lin += idx[k] * stride;
        stride *= shape_[k];
    }
    return lin;
}

double Hypermatrix::at(std::span<const Eigen::Index> idx) const { return data_[static_cast<std::size_t>(linear_index(idx))]; }
double& Hypermatrix::at(std::span<const Eigen::Index> idx) { return data_[static_cast<std::size_t>(linear_index(idx))]; }
double Hypermatrix::at(std::initializer_list<Eigen::Index> idx) const {
    return at(std::span<const Eigen::Index>(idx.begin(), idx.size()));
}
double& Hypermatrix::at(std::initializer_list<Eigen::Index> idx) {
    return at(std::span<const Eigen::Index>(idx.begin(), idx.size()));
}

double Hypermatrix::frobenius_norm() const {
    double s = 0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double Hypermatrix::max_abs() const {
    double m = 0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

RealVector Hypermatrix::as_vector() const {
    if (order() != 1) throw std::invalid_argument("as_vector requires an order-1 hypermatrix");
    return Eigen::Map<const RealVector>(data_.data(), size());
}

RealMatrix Hypermatrix::as_matrix() const {
    if (order() != 2) throw std::invalid_argument("as_matrix requires an order-2 hypermatrix");
    return Eigen::Map<const RealMatrix>(data_.data(), shape_[0], shape_[1]);
}

Hypermatrix Hypermatrix::scaled(double s) const {
    Hypermatrix out = *this;
    for (double& v : out.data_) v *= s;
    return out;
}

Hypermatrix outer(const Hypermatrix& a, const Hypermatrix& b) {
    std::vector<Eigen::Index> shape = a.shape();
    shape.insert(shape.end(), b.shape().begin(), b.shape().end());
    std::vector<double> data(static_cast<std::size_t>(a.size()) * static_cast<std::size_t>(b.size()));
    // column-major: a's indices vary fastest, so the result is data_a (x) data_b blockwise
    std::size_t p = 0;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
        const double bj = b[j];
        for (Eigen::Index i = 0; i < a.size(); ++i) data[p++] = a[i] * bj;
    }
    return Hypermatrix(std::move(shape), std::move(data));
}

RealMatrix unfold(const Hypermatrix& a, int mode) {
    const int d = a.order();
    if (mode < 0 || mode >= d)
        throw std::invalid_argument("unfold: mode " + std::to_string(mode + 1) + " out of range 1.." + std::to_string(d));
    const auto& shape = a.shape();
    const Eigen::Index rows = shape[static_cast<std::size_t>(mode)];
    const Eigen::Index cols = a.size() / rows;
    RealMatrix m(rows, cols);

    std::vector<Eigen::Index> idx(static_cast<std::size_t>(d), 0);
    for (Eigen::Index lin = 0; lin < a.size(); ++lin) {
        // column index per the unfolding formula, skipping `mode`
        Eigen::Index col = 0, stride = 1;
        for (int l = 0; l < d; ++l) {
            if (l == mode) continue;
            col += idx[static_cast<std::size_t>(l)] * stride;
            stride *= shape[static_cast<std::size_t>(l)];
        }
        m(idx[static_cast<std::size_t>(mode)], col) = a[lin];
        for (int l = 0; l < d; ++l) {
            if (++idx[static_cast<std::size_t>(l)] < shape[static_cast<std::size_t>(l)]) break;
            idx[static_cast<std::size_t>(l)] = 0;
        }
    }
    return m;
}

Hypermatrix fold(const RealMatrix& m, const std::vector<Eigen::Index>& shape, int mode) {
    const int d = static_cast<int>(shape.size());
    if (mode < 0 || mode >= d)
        throw std::invalid_argument("fold: mode " + std::to_string(mode + 1) + " out of range 1.." + std::to_string(d));
    Hypermatrix a(shape);
    if (m.rows() != shape[static_cast<std::size_t>(mode)] || m.rows() * m.cols() != a.size())
        throw std::invalid_argument("fold: matrix size does not match target shape");

    std::vector<Eigen::Index> idx(static_cast<std::size_t>(d), 0);
    for (Eigen::Index lin = 0; lin < a.size(); ++lin) {
        Eigen::Index col = 0, stride = 1;
        for (int l = 0; l < d; ++l) {
            if (l == mode) continue;
            col += idx[static_cast<std::size_t>(l)] * stride;
            stride *= shape[static_cast<std::size_t>(l)];
        }
        a[lin] = m(idx[static_cast<std::size_t>(mode)], col);
        for (int l = 0; l < d; ++l) {
            if (++idx[static_cast<std::size_t>(l)] < shape[static_cast<std::size_t>(l)]) break;
            idx[static_cast<std::size_t>(l)] = 0;
        }
    }
    return a;
}

Hypermatrix mode_apply(const RealMatrix& x, const Hypermatrix& a, int mode) {
    if (x.cols() != a.dim(mode))
        throw std::invalid_argument("mode " + std::to_string(mode + 1) + ": matrix has " + std::to_string(x.cols()) +
                                    " columns but hypermatrix extent is " + std::to_string(a.dim(mode)));
    RealMatrix m = x * unfold(a, mode);
    std::vector<Eigen::Index> shape = a.shape();
    shape[static_cast<std::size_t>(mode)] = x.rows();
    return fold(m, shape, mode);
}

Hypermatrix multilinear_apply(std::span<const RealMatrix> mats, const Hypermatrix& a) {
    if (static_cast<int>(mats.size()) != a.order())
        throw std::invalid_argument("multilinear_apply: got " + std::to_string(mats.size()) + " matrices for an order-" +
                                    std::to_string(a.order()) + " hypermatrix");
    Hypermatrix out = a;
    for (int k = 0; k < a.order(); ++k) {
        if (mats[static_cast<std::size_t>(k)].cols() != a.dim(k))
            throw std::invalid_argument("multilinear_apply: dimension mismatch at mode " + std::to_string(k + 1) +
                                        " (matrix has " + std::to_string(mats[static_cast<std::size_t>(k)].cols()) +
                                        " columns, extent is " + std::to_string(a.dim(k)) + ")");
        out = mode_apply(mats[static_cast<std::size_t>(k)], out, k);
    }
    return out;
}

Hypermatrix multilinear_apply(std::initializer_list<RealMatrix> mats, const Hypermatrix& a) {
    std::vector<RealMatrix> v(mats);
    return multilinear_apply(std::span<const RealMatrix>(v), a);
}

RealVector vec(const RealMatrix& m) {
    RealVector v(m.size());
    Eigen::Index p = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) v[p++] = m(r, c);
    return v;
}

RealMatrix kron(const RealMatrix& x, const RealMatrix& y) {
    RealMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
}

double max_abs_diff(const Hypermatrix& a, const Hypermatrix& b) {
    if (a.shape() != b.shape()) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

bool approx_equal(const Hypermatrix& a, const Hypermatrix& b, double tol) {
    return a.shape() == b.shape() && max_abs_diff(a, b) <= tol;
}

}  // namespace lueq
