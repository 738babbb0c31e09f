#pragma once

// Internal: complex tracks of the trigonometric Arnoldi recurrence.

#include "recteig/basis.hpp"

#include <span>
#include <utility>
#include <vector>

namespace recteig::detail {

/// Complex column values and Laplacians, one column per exponent pair.
struct ArnoldiTracks {
    CMatrix f;
    CMatrix lap;
};

/// Exponent pairs (k, m) in orthogonalization order: degree d = k + |m|
/// ascending; within a degree (0, d) first, then for k = 1..d the pair
/// (k, d-k) followed by (k, -(d-k)).
std::vector<std::pair<int, int>> arnoldi_exponent_order(int max_degree);

/// Runs the recurrence at `points`, recording coefficients in `family`.
ArnoldiTracks arnoldi_build(int max_degree, std::span<const Point2> points, ArnoldiFourierFamily& family);

/// Re-applies the recorded recurrence at new points. At the build points this
/// repeats the build arithmetic operation for operation.
ArnoldiTracks arnoldi_replay(const ArnoldiFourierFamily& family, std::span<const Point2> points);

/// Real columns: Re of every complex column, then Im of columns 1..N-1.
std::pair<Matrix, Matrix> arnoldi_realify(const ArnoldiTracks& tracks);

}  // namespace recteig::detail
