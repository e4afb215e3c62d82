#pragma once

#include "lueq/hypermatrix.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lueq {

/// A word over an alphabet of square matrices, stored as letter indices.
struct Word {
    std::vector<int> letters;

    int length() const { return static_cast<int>(letters.size()); }
    std::string str() const;  ///< e.g. "w[2 1 1]" (1-based letters)
    bool operator==(const Word&) const = default;
};

/// All ordered-pair products A_i A_j^t for a family of matrices with a common
/// row count; k^2 letters in lexicographic (i, j) order, letter index i*k + j.
std::vector<RealMatrix> gram_alphabet(std::span<const RealMatrix> family);

/// The letter involution (i,j) -> (j,i) of a gram alphabet; maps each letter
/// to its transpose.
std::vector<int> gram_transpose_pairing(int family_size);

/// One representative per cyclic-equivalence class (necklace) of words over
/// `alphabet_size` letters, for every length 1..max_len, each representative
/// being the lexicographically minimal rotation. Generated in (length, lex)
/// order by the FKM recursion.
std::vector<Word> enumerate_canonical_words(int alphabet_size, int max_len);

struct TraceCheckOptions {
    int max_len = 4;
    double tol = 1e-8;
    /// Optional letter involution sigma with M_{sigma(l)} = M_l^t; words
    /// related by reversal + sigma have equal traces and are deduplicated.
    std::vector<int> transpose_pairing;
};

struct TraceCheckResult {
    bool equal = true;
    std::optional<Word> witness;  ///< minimal failing word (length, then lex)
    double trace_a = 0.0;
    double trace_b = 0.0;
    long long words_checked = 0;
};

/// Compares Tr w(lettersA) against Tr w(lettersB) over all canonical words of
/// length <= max_len, with |difference| <= tol * max(1, |Tr w(lettersA)|).
/// Deterministic witness regardless of evaluation order.
TraceCheckResult trace_identities_equal(std::span<const RealMatrix> letters_a,
                                        std::span<const RealMatrix> letters_b,
                                        const TraceCheckOptions& opts);

/// Sufficient word length for the two-block trace criterion: the smallest r
/// with r(r+1)/2 >= max(k, l-k) gives ((r+2)(n1+n2+m))^2. l = k (empty right
/// block, n2 = 0) is accepted and covers the single-block case.
long long word_bound_lemma1(long long n1, long long n2, long long m, long long k, long long l);

/// Two rectangular blocks sharing the row count m: `left` holds k matrices
/// (m x n1), `right` holds l-k matrices (m x n2).
struct TwoBlockFamily {
    std::vector<RealMatrix> left;
    std::vector<RealMatrix> right;
};

/// Trace-identity check for simultaneous two-block orthogonal equivalence:
/// letters are the ordered-pair grams within each block (no cross-block
/// letters), compared up to min(opts.max_len, word_bound_lemma1(...)).
TraceCheckResult lemma1_isometric(const TwoBlockFamily& a, const TwoBlockFamily& b, const TraceCheckOptions& opts);

}  // namespace lueq
