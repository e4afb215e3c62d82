#pragma once

#include "lueq/bloch.hpp"

#include <stdexcept>
#include <string>

namespace lueq {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// State files: {"dims": [d1,...], "matrix": [[[re,im], ...], ...]} with the
/// matrix row-major and each entry an [re, im] pair. Doubles are printed so
/// that read-back is exact.
std::string state_to_json(const DensityMatrix& rho, int indent = -1);
DensityMatrix state_from_json(const std::string& text, double tol = 1e-10);
DensityMatrix read_state_file(const std::string& path, double tol = 1e-10);
void write_state_file(const std::string& path, const DensityMatrix& rho);

/// Representation files: {"dims": [...], "convention": {...}, "tensors":
/// {"1": {"shape": [...], "data": [...]}, "12": ..., ...}} with subset keys
/// 1-based and tensor data in column-major order (first index fastest).
std::string rep_to_json(const HypermatrixRep& rep, int indent = -1);
HypermatrixRep rep_from_json(const std::string& text);
HypermatrixRep read_rep_file(const std::string& path);
void write_rep_file(const std::string& path, const HypermatrixRep& rep);

}  // namespace lueq
