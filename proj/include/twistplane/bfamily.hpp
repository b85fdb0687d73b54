#pragma once

#include <optional>
#include <vector>

#include "twistplane/band_matrix.hpp"

namespace twistplane::bfamily {

/// Finite prefix (L_1, ..., L_r) of a marker sequence with L_1 = n and
/// gaps in {n, n+1}. Indices are 1-based, matching the usual notation.
class SeqPrefix {
public:
    SeqPrefix(long n, std::vector<long> values);  // validates membership

    long n() const { return n_; }
    std::size_t length() const { return values_.size(); }
    long at(std::size_t r) const;  // 1-based; throws IndexOutOfRange
    long last() const { return values_.back(); }
    const std::vector<long>& values() const { return values_; }
    bool contains(long value) const;

    bool operator==(const SeqPrefix& rhs) const {
        return n_ == rhs.n_ && values_ == rhs.values_;
    }

private:
    long n_;
    std::vector<long> values_;
};

/// The balance defect L_r - L_j - L_{r-j}, for 0 < j < r <= length.
long delta(const SeqPrefix& prefix, std::size_t r, std::size_t j);

/// True iff every defect lies in {0, 1}.
bool is_almost_balanced(const SeqPrefix& prefix);

/// The admissible one-step continuations of an almost-balanced prefix.
/// Guaranteed nonempty; throws NotAlmostBalanced on bad input.
std::vector<SeqPrefix> extend_prefix(const SeqPrefix& prefix);

/// All almost-balanced prefixes of the given length, in lexicographic
/// order, by depth-first extension.
std::vector<SeqPrefix> enumerate_prefixes(long n, std::size_t r);

struct Violation {
    std::size_t r, j;
    long delta;
    int kind;  // 1: defect -1 after a wide step; 2: defect 2 before one
};

/// The smallest (r, j) with defect outside {0, 1}, or nullopt.
std::optional<Violation> violation_witness(const SeqPrefix& prefix);

/// Family parameters: a outside {0, -1} and the marker prefix;
/// d = 1/(1+a) is always derived, never passed.
struct BFamilyParams {
    Scalar a;
    SeqPrefix prefix;
    BFamilyParams(Scalar a_, SeqPrefix prefix_);
    Scalar d() const;
};

/// Number of leading rows the prefix pins down: markers up to L_last plus
/// the strictly-between rows below any possible next marker.
std::size_t covered_rows(const SeqPrefix& prefix);

/// Marker matrix rows: E_0 - E_1 below the first marker, d^k(E_0 - E_1)
/// strictly between markers, d^k E_0 - d^{k-1} E_1 + a E_{L_k+1} at marker
/// L_k. Strict about coverage: throws PrefixTooShort.
BandMatrix build_b_matrix(const BFamilyParams& params, std::size_t row_count);

/// Same rows embedded into a possibly larger truncation, with the
/// exactness horizon capped at the covered rows.
BandMatrix build_b_matrix_truncation(const BFamilyParams& params, std::size_t n_size);

/// The three-piece decomposition: column matrix M1 with (M1)_{i,0} = m_i,
/// diagonal B with B_{i,i} = a exactly at markers, satisfying
/// Mtilde = B Y + Y M1 - M1 Y and B Y M1 + Y M1 - M1 = 0.
struct BDecomposition {
    BandMatrix m1;
    BandMatrix b;
    std::vector<Scalar> m;     // m_i, i < covered rows + 1
    std::vector<Scalar> nvec;  // n_i, i < covered rows
};

BDecomposition decompose_b(const BFamilyParams& params, std::size_t n_size);

}  // namespace twistplane::bfamily
