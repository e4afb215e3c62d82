#pragma once

#include "lueq/hypermatrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lueq {

using ComplexMatrix = Eigen::MatrixXcd;

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Generalized Gell-Mann basis of d x d Hermitian traceless matrices,
/// orthonormal under the Hilbert-Schmidt inner product: Tr(l_a l_b) = delta_ab.
/// Ordering: symmetric pairs (j<k lexicographic), then antisymmetric pairs,
/// then the d-1 diagonal matrices. For d=2 this is sigma_{x,y,z}/sqrt(2).
struct GGMBasis {
    int d = 0;
    std::vector<ComplexMatrix> mats;
};

GGMBasis ggm_basis(int d);

/// Validated density matrix over a tensor product of subsystems.
/// Hermitian within 1e-10 (symmetrized), trace 1 within 1e-10,
/// smallest eigenvalue >= -1e-9.
struct DensityMatrix {
    std::vector<int> dims;
    ComplexMatrix mat;

    int total_dim() const;
    int subsystems() const { return static_cast<int>(dims.size()); }

    /// Validates and returns; throws ValidationError with the offending
    /// magnitude otherwise.
    static DensityMatrix checked(std::vector<int> dims, ComplexMatrix mat, double tol = 1e-10);
};

/// The family {T_S} of real Fano coefficient tensors, keyed by subsystem
/// subsets. Subsystems are 0-based in this API; subset keys are bitmasks
/// (bit k = subsystem k).
struct HypermatrixRep {
    std::vector<int> dims;
    std::map<std::uint32_t, Hypermatrix> tensors;

    static std::uint32_t key(std::initializer_list<int> subsystems);
    const Hypermatrix& tensor(std::uint32_t key) const;
    const Hypermatrix& tensor(std::initializer_list<int> subsystems) const;

    int subsystems() const { return static_cast<int>(dims.size()); }
    /// d_k^2 - 1
    Eigen::Index delta(int k) const { return static_cast<Eigen::Index>(dims.at(static_cast<std::size_t>(k))) * dims.at(static_cast<std::size_t>(k)) - 1; }
};

/// Fano coefficients T_S[a_1..a_m] = c_S * Tr(rho l_{a_1}^{(j_1)} ... l_{a_m}^{(j_m)})
/// with c_S the product of the subset's subsystem dimensions. With the
/// orthonormal GGM convention this scaling makes reconstruct() an exact
/// inverse.
HypermatrixRep extract_rep(const DensityMatrix& rho);

/// rho = (1/prod d_k) ((x)I + sum_S sum_a T_S[a] l_a^{(S)}); validates the result.
DensityMatrix reconstruct(const HypermatrixRep& rep);

/// Partial trace over subsystem k (0-based).
DensityMatrix partial_trace(const DensityMatrix& rho, int k);

/// Rep of the reduced state: drops subsystem k, keeping the tensors of all
/// subsets avoiding k (the Fano coefficients of a reduced state coincide with
/// the parent's coefficients on the surviving subsystems).
HypermatrixRep partial_trace_rep(const HypermatrixRep& rep, int k);

/// (U_1 (x) ... (x) U_n) rho (U_1 (x) ... (x) U_n)^dagger.
/// Each factor must be unitary within 1e-10 and sized to its subsystem.
DensityMatrix apply_local_unitaries(const DensityMatrix& rho, std::span<const ComplexMatrix> us);

/// The orthogonal matrix X with X_ab = Re Tr(l_b U l_a U^dagger), so that
/// U l_a U^dagger = sum_b X_ab l_b. The coefficient-tensor transport factor
/// is X^t. For U in SU(2), det X = +1.
RealMatrix induced_orthogonal(const ComplexMatrix& u);

/// Haar-distributed unitary with determinant 1, deterministic per seed.
ComplexMatrix random_su(int d, std::uint64_t seed);

/// Random density matrix (Ginibre construction), deterministic per seed.
/// rank = 0 means full rank.
DensityMatrix random_density(std::vector<int> dims, std::uint64_t seed, int rank = 0);

struct LuPair {
    DensityMatrix rho;
    DensityMatrix rho_hat;
    std::vector<ComplexMatrix> unitaries;
};

/// rho random, rho_hat = (U_1 (x) ... (x) U_n) rho (...)^dagger with random
/// SU factors; deterministic per seed.
LuPair random_lu_pair(std::vector<int> dims, std::uint64_t seed);

}  // namespace lueq
