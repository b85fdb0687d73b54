#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistplane/band_matrix.hpp"
#include "twistplane/poly2.hpp"

namespace twistplane::quadratic {

/// Degree-two commutation parameters, normalized so the leading
/// coefficient is 0 or 1. Rescaling x by lambda maps (a, b, c) to
/// (a/lambda, b, c*lambda).
struct QuadraticParams {
    Scalar a, b, c;
    Scalar lambda;  // scaling applied by normalize()
};

QuadraticParams normalize(const Scalar& a, const Scalar& b, const Scalar& c);

struct PqTerm {
    Scalar p, q;                  // P_n, Q_n
    std::optional<Scalar> c_n;    // c * P_n / Q_n when Q_n != 0
};

/// P_1 = Q_1 = 1; P_{n+1} = b P_n + Q_n, Q_{n+1} = -c P_n + Q_n.
/// Returns terms for n = 1..count.
std::vector<PqTerm> pq_sequence(const Scalar& b, const Scalar& c, std::size_t count);

/// The obstruction polynomials as elements of K[b,c], via the matrix form
/// of the recurrence.
Poly2 q_poly(std::size_t n);
Poly2 p_poly(std::size_t n);

enum class Verdict { TwistExists, NoTwist, Undetermined };
enum class Method { ClosedForm, BoundedScan, ExceptionalCase };

struct AlgebraType {
    enum class Kind { QuantumPlane, Jordan, YXZero, MinusOnePlane };
    Kind kind;
    std::optional<Scalar> q;  // quantum parameter, when applicable
    std::string label() const;
};

struct ClassificationReport {
    Verdict verdict = Verdict::Undetermined;
    Method method = Method::BoundedScan;
    std::string case_tag;                       // which branch decided
    std::optional<long> witness_n;              // first n with Q_n = 0
    std::optional<long> scan_bound;             // bound used when undetermined
    std::optional<std::pair<Scalar, Scalar>> eigenvalues;
    std::optional<AlgebraType> algebra_type;
    Scalar lambda = Scalar::integer(1);         // normalization scaling
    std::string note;
};

/// Eigenvalues of the companion matrix of the (P,Q) recurrence, the
/// exceptional membership tests, and the exact ratio scan when none of
/// them hold.
ClassificationReport eigen_analyze(const Scalar& b, const Scalar& c, long n_max = 64);

/// Full existence decision for the leading-coefficient-one case.
/// Closed form where available, bounded scan otherwise.
ClassificationReport classify_quadratic(const Scalar& b, const Scalar& c, long n_max = 64);

/// Normalizes (a, b, c) and dispatches; handles the a = 0 regime too.
ClassificationReport classify(const Scalar& a, const Scalar& b, const Scalar& c,
                              long n_max = 64);

/// The unique twisting matrix with second row (1, b, c), built from its
/// homogeneous components. Throws RootHit when some required Q_n vanishes.
BandMatrix build_quadratic(const Scalar& b, const Scalar& c, std::size_t rows);

/// Bidiagonal matrix for the a = 0 regime.
BandMatrix build_a0_case(const Scalar& b, const Scalar& c, std::size_t rows);

enum class ExceptionalCase { BEqNegC, CEqZero, EqualEigen0Quarter, BEqNeg1 };

/// Explicit matrices for the four special parameter branches. `param` is
/// c for BEqNegC and BEqNeg1, b for CEqZero, and is ignored (apart from
/// its field) for EqualEigen0Quarter.
BandMatrix build_exceptional(ExceptionalCase which, const Scalar& param, std::size_t rows);

/// Graded-algebra type of the quadratic with relation yx = ax^2+bxy+cy^2.
/// Requires ac != 1; throws OutOfTable when no tabulated case matches.
AlgebraType classify_algebra_type(const Scalar& a, const Scalar& b, const Scalar& c);

const char* to_string(Verdict v);
const char* to_string(Method m);

}  // namespace twistplane::quadratic
