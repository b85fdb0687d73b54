#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistplane/band_matrix.hpp"

namespace twistplane::afamily {

/// Parameters of the degree-n family: commutation rows repeat (1, -1)
/// up to row n-1 and the n-th row introduces (d, -d, ..., -a, a).
struct AFamilyParams {
    long n;      // block length, n >= 2
    Scalar d;
    Scalar a;
    void validate() const;  // n >= 2 and (d, a) != (1, 0)
};

/// The coefficient sequences attached to the family:
/// e_k = (1-d)^k, a_k = (-a)^k, d_k via d_{k+1} = -a d_k + d e_k,
/// r_k = e_k + d_k, and the block coefficients c[k][r].
/// Block coefficients stop at the first vanishing r_k.
struct KSequences {
    std::vector<Scalar> e, a, d, r;           // index 0..K
    std::vector<std::vector<Scalar>> c;       // c[k] has entries 0..k
    std::optional<long> root_at;              // first k with r_k = 0

    /// Accessor that enforces the root boundary.
    const Scalar& c_at(std::size_t k, std::size_t r) const;
};

KSequences k_sequences(const AFamilyParams& params, std::size_t k_count);

/// Closed form of d_k: d (e^k - (-a)^k)/(e + a) when e != -a, else k d e^{k-1}.
Scalar d_closed_form(const AFamilyParams& params, long k);

enum class RootVerdict { Clean, RootAt, Undetermined };

struct RootReport {
    RootVerdict verdict = RootVerdict::Undetermined;
    std::optional<long> k;     // witness index for RootAt
    long bound = 0;            // scan bound consulted
    std::string basis;         // how the verdict was reached
};

/// Decides whether some r_k vanishes. Closed form on the e = -a line and
/// the degenerate edges; exact quotient scan elsewhere, upgraded to a
/// definitive Clean over the rationals once the quotient passes the
/// target monotonically.
RootReport r_root_check(const AFamilyParams& params, long k_max);

/// The block matrix of the family: rows kn..(k+1)n-1 carry c[k][r] at
/// column rn and -c[k][r] at column rn+1. Throws RootHit when a needed
/// r_k vanishes.
BandMatrix build_a_family(const AFamilyParams& params, std::size_t row_count);

/// Every row equal to (1, -1, 0, ...): the matrix that commutes with all
/// powers of itself plus the shift.
BandMatrix build_special_example(std::size_t row_count, const Field& f = Field::rationals());

/// Degenerate members (d = 0, a = 0, or d = 1) via their closed row
/// patterns.
BandMatrix a_family_degenerate(const AFamilyParams& params, std::size_t row_count);

}  // namespace twistplane::afamily
