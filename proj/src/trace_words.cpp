#include "lueq/trace_words.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lueq {

namespace {

// Trace of M_{w_1} M_{w_2} ... M_{w_n}; the diagonal is accumulated in long
// double with compensated summation since long products drift.
double word_trace(std::span<const RealMatrix> letters, const std::vector<int>& word) {
    const RealMatrix* first = &letters[static_cast<std::size_t>(word[0])];
    if (word.size() == 1) {
        long double sum = 0.0L, comp = 0.0L;
        for (Eigen::Index i = 0; i < first->rows(); ++i) {
            const long double y = static_cast<long double>((*first)(i, i)) - comp;
            const long double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return static_cast<double>(sum);
    }
    RealMatrix prod = *first;
    for (std::size_t p = 1; p + 1 < word.size(); ++p) prod = prod * letters[static_cast<std::size_t>(word[p])];
    const RealMatrix& last = letters[static_cast<std::size_t>(word.back())];
    // Tr(prod * last) without forming the product
    long double sum = 0.0L, comp = 0.0L;
    for (Eigen::Index i = 0; i < prod.rows(); ++i)
        for (Eigen::Index j = 0; j < prod.cols(); ++j) {
            const long double y = static_cast<long double>(prod(i, j)) * static_cast<long double>(last(j, i)) - comp;
            const long double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    return static_cast<double>(sum);
}

std::vector<int> min_rotation(const std::vector<int>& w) {
    std::vector<int> best = w;
    std::vector<int> rot = w;
    for (std::size_t s = 1; s < w.size(); ++s) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

int thread_count() {
    if (const char* env = std::getenv("LUEQ_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

struct Failure {
    std::vector<int> word;
    double ta = 0.0, tb = 0.0;
    bool better_than(const Failure& other) const {
        if (word.size() != other.word.size()) return word.size() < other.word.size();
        return word < other.word;
    }
};

}  // namespace

std::string Word::str() const {
    std::ostringstream os;
    os << "w[";
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ' ';
        os << letters[i] + 1;
    }
    os << ']';
    return os.str();
}

std::vector<RealMatrix> gram_alphabet(std::span<const RealMatrix> family) {
    if (family.empty()) throw std::invalid_argument("gram_alphabet: family must be nonempty");
    const Eigen::Index m = family[0].rows();
    const Eigen::Index n = family[0].cols();
    for (const auto& a : family) {
        if (a.rows() != m) throw std::invalid_argument("gram_alphabet: members must share the row count");
        if (a.cols() != n)
            throw std::invalid_argument("gram_alphabet: members must share the column count (A_i A_j^t needs it)");
    }
    std::vector<RealMatrix> letters;
    letters.reserve(family.size() * family.size());
    for (const auto& a : family)
        for (const auto& b : family) letters.push_back(a * b.transpose());
    return letters;
}

std::vector<int> gram_transpose_pairing(int family_size) {
    std::vector<int> sigma(static_cast<std::size_t>(family_size) * family_size);
    for (int i = 0; i < family_size; ++i)
        for (int j = 0; j < family_size; ++j) sigma[static_cast<std::size_t>(i * family_size + j)] = j * family_size + i;
    return sigma;
}

std::vector<Word> enumerate_canonical_words(int alphabet_size, int max_len) {
    if (alphabet_size < 1 || max_len < 1) throw std::invalid_argument("enumerate_canonical_words: need k >= 1 and L >= 1");
    std::vector<Word> out;
    // FKM: generates the necklaces of length n in lexicographic order
    for (int n = 1; n <= max_len; ++n) {
        std::vector<int> a(static_cast<std::size_t>(n) + 1, 0);
        auto gen = [&](auto&& self, int t, int p) -> void {
            if (t > n) {
                if (n % p == 0)
                    out.push_back(Word{std::vector<int>(a.begin() + 1, a.end())});
                return;
            }
            a[static_cast<std::size_t>(t)] = a[static_cast<std::size_t>(t - p)];
            self(self, t + 1, p);
            for (int j = a[static_cast<std::size_t>(t - p)] + 1; j < alphabet_size; ++j) {
                a[static_cast<std::size_t>(t)] = j;
                self(self, t + 1, t);
            }
        };
        gen(gen, 1, 1);
    }
    return out;
}

TraceCheckResult trace_identities_equal(std::span<const RealMatrix> letters_a,
                                        std::span<const RealMatrix> letters_b,
                                        const TraceCheckOptions& opts) {
    if (letters_a.size() != letters_b.size())
        throw std::invalid_argument("trace_identities_equal: alphabets must have equal size");
    if (letters_a.empty()) throw std::invalid_argument("trace_identities_equal: empty alphabet");
    for (std::size_t i = 0; i < letters_a.size(); ++i) {
        if (letters_a[i].rows() != letters_a[i].cols() || letters_b[i].rows() != letters_b[i].cols())
            throw std::invalid_argument("trace_identities_equal: letters must be square");
        if (letters_a[i].rows() != letters_a[0].rows() || letters_b[i].rows() != letters_a[i].rows())
            throw std::invalid_argument("trace_identities_equal: letters must share dimensions");
    }
    if (!opts.transpose_pairing.empty() && opts.transpose_pairing.size() != letters_a.size())
        throw std::invalid_argument("trace_identities_equal: pairing size mismatch");

    std::vector<Word> words = enumerate_canonical_words(static_cast<int>(letters_a.size()), opts.max_len);

    // a word and its reversed, transposed partner carry the same traces on
    // both sides; keep only the smaller representative of each such pair
    std::vector<const Word*> todo;
    todo.reserve(words.size());
    if (!opts.transpose_pairing.empty()) {
        for (const Word& w : words) {
            std::vector<int> partner(w.letters.rbegin(), w.letters.rend());
            for (int& l : partner) l = opts.transpose_pairing[static_cast<std::size_t>(l)];
            if (min_rotation(partner) >= w.letters) todo.push_back(&w);
        }
    } else {
        for (const Word& w : words) todo.push_back(&w);
    }

    const int threads = std::min<int>(thread_count(), 8);
    std::optional<Failure> best;
    auto scan = [&](std::size_t lo, std::size_t hi) -> std::optional<Failure> {
        std::optional<Failure> local;
        for (std::size_t i = lo; i < hi; ++i) {
            const std::vector<int>& w = todo[i]->letters;
            const double ta = word_trace(letters_a, w);
            const double tb = word_trace(letters_b, w);
            if (std::abs(ta - tb) > opts.tol * std::max(1.0, std::abs(ta))) {
                Failure f{w, ta, tb};
                if (!local || f.better_than(*local)) local = std::move(f);
            }
        }
        return local;
    };

    if (threads <= 1 || todo.size() < 256) {
        best = scan(0, todo.size());
    } else {
        std::vector<std::future<std::optional<Failure>>> futs;
        const std::size_t chunk = (todo.size() + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
        for (int t = 0; t < threads; ++t) {
            const std::size_t lo = static_cast<std::size_t>(t) * chunk;
            const std::size_t hi = std::min(lo + chunk, todo.size());
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, scan, lo, hi));
        }
        for (auto& f : futs) {
            auto local = f.get();
            if (local && (!best || local->better_than(*best))) best = std::move(local);
        }
    }

    TraceCheckResult res;
    res.words_checked = static_cast<long long>(todo.size());
    if (best) {
        res.equal = false;
        res.witness = Word{best->word};
        res.trace_a = best->ta;
        res.trace_b = best->tb;
    }
    return res;
}

long long word_bound_lemma1(long long n1, long long n2, long long m, long long k, long long l) {
    if (k < 1 || l < k) throw std::invalid_argument("word_bound_lemma1: need l >= k >= 1");
    const long long most = std::max(k, l - k);
    long long r = 1;
    while (r * (r + 1) / 2 < most) ++r;
    const long long base = (r + 2) * (n1 + n2 + m);
    return base * base;
}

TraceCheckResult lemma1_isometric(const TwoBlockFamily& a, const TwoBlockFamily& b, const TraceCheckOptions& opts) {
    if (a.left.size() != b.left.size() || a.right.size() != b.right.size())
        throw std::invalid_argument("lemma1_isometric: block sizes differ");
    if (a.left.empty()) throw std::invalid_argument("lemma1_isometric: left block must be nonempty");

    auto check_block = [](const std::vector<RealMatrix>& block, Eigen::Index rows, Eigen::Index cols, const char* what) {
        for (const auto& mtx : block)
            if (mtx.rows() != rows || mtx.cols() != cols)
                throw std::invalid_argument(std::string("lemma1_isometric: inconsistent ") + what + " block");
    };
    const Eigen::Index m = a.left[0].rows();
    check_block(a.left, m, a.left[0].cols(), "left");
    check_block(b.left, m, a.left[0].cols(), "left");
    if (!a.right.empty()) {
        check_block(a.right, m, a.right[0].cols(), "right");
        check_block(b.right, m, a.right[0].cols(), "right");
    }

    const long long k = static_cast<long long>(a.left.size());
    const long long l = k + static_cast<long long>(a.right.size());
    const long long bound =
        word_bound_lemma1(a.left[0].cols(), a.right.empty() ? 0 : a.right[0].cols(), m, k, l);

    auto letters_of = [](const TwoBlockFamily& fam) {
        std::vector<RealMatrix> letters = gram_alphabet(fam.left);
        if (!fam.right.empty()) {
            std::vector<RealMatrix> right = gram_alphabet(fam.right);
            letters.insert(letters.end(), right.begin(), right.end());
        }
        return letters;
    };
    const std::vector<RealMatrix> la = letters_of(a);
    const std::vector<RealMatrix> lb = letters_of(b);

    // involution: transpose pairing within each block
    const int nk = static_cast<int>(a.left.size());
    const int nr = static_cast<int>(a.right.size());
    std::vector<int> sigma = gram_transpose_pairing(nk);
    if (nr > 0) {
        std::vector<int> right_sigma = gram_transpose_pairing(nr);
        const int off = nk * nk;
        for (int s : right_sigma) sigma.push_back(off + s);
    }

    TraceCheckOptions effective = opts;
    effective.max_len = static_cast<int>(std::min<long long>(opts.max_len, bound));
    effective.transpose_pairing = std::move(sigma);
    return trace_identities_equal(la, lb, effective);
}

}  // namespace lueq
