#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistplane/band_matrix.hpp"
#include "twistplane/bfamily.hpp"

namespace twistplane::verify {

struct Failure {
    std::size_t i, j;
    std::string lhs, rhs;
};

/// One verified identity at one degree. `window` records how many leading
/// rows the truncation allowed the check to compare.
struct Check {
    std::string id;
    long k = 0;
    bool pass = false;
    std::size_t window = 0;
    std::optional<Failure> failure;
};

struct VerifyReport {
    std::vector<Check> checks;
    bool all_pass() const;
    const Check* first_failure() const;
};

/// Checks Y^k Mtilde = sum_j Mtilde_{k,j} M^{k+1-j} Y^j for 1 <= k <= K,
/// with M = Mtilde + Y, each degree on the exact window the truncation
/// supports. For a fully exact truncation, N >= 2K + 3 gives every degree
/// a window of at least K + 2 rows. Throws HorizonExhausted (carrying a
/// sufficient N) if some requested degree has no window at all.
VerifyReport verify_twist_identity(const BandMatrix& mtilde, long max_degree);

/// Same identity phrased for M itself; delegates through M - Y.
VerifyReport verify_twist_identity_m(const BandMatrix& m, long max_degree);

/// Entrywise check of Y M = M^2 + b M Y + c Y^2. When b = -1 the
/// equivalent square form (M - Y)^2 = (1 - c) Y^2 is checked as well.
VerifyReport verify_quadratic_identity(const BandMatrix& m, const Scalar& b, const Scalar& c);

/// Mtilde^2 = 0 and (Mtilde - a Y)^{n+1} = 0 on the exact window, plus the
/// superdiagonal product criterion for the (j, j+n+1) entries of the
/// shifted power.
VerifyReport verify_nilpotency(const BandMatrix& mtilde, const Scalar& a, long n);

/// The three marker-matrix conditions and the derived power formula
/// d^r M^{j+1} = sum_i Y^i Mtilde Y^{j-i} + (1 - r a) Y^{j+1}.
VerifyReport verify_b_conditions(const bfamily::BFamilyParams& params, long max_degree);

/// Unique row extension: given rows 0..k-1 of a would-be twisting matrix
/// with second row (1, b, c), returns row k. Row i must have length i+2.
/// Throws PivotOne when the top superdiagonal entry equals 1.
std::vector<Scalar> extend_row(const std::vector<std::vector<Scalar>>& rows, const Scalar& b,
                               const Scalar& c);

/// The four determined continuations of the marker matrices past the
/// second marker. The two primary cases follow the marker family and are
/// emitted through row 3n+2 (continuing with the minimal gap); the two
/// alternates stop at the last forced row and carry an open-tail flag.
enum class BranchTag {
    LateMarkerPrimary,    // second marker at 2n+1, geometric head row
    LateMarkerSecondary,  // second marker at 2n+1, perturbed head row
    EarlyMarkerPrimary,   // second marker at 2n, geometric head row
    EarlyMarkerSecondary  // second marker at 2n, perturbed head row
};

struct BranchFixture {
    BranchTag tag;
    std::string name;
    long n = 0;
    std::vector<std::map<std::size_t, Scalar>> rows;  // rows 0..determined-1
    bool undetermined_tail = false;                   // rows past the fixture are open
    std::optional<std::vector<long>> markers;         // matching marker prefix, when one exists
};

std::vector<BranchFixture> branch_rows_2n(long n, const Scalar& a);

}  // namespace twistplane::verify
