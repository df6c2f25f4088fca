#pragma once

// Riera's formula for the Weil-Petersson gradient norm of a length function,
// double-coset enumeration, and the WP distance and gradient bounds.

#include <cstddef>
#include <vector>

#include "hypsurf/fuchsian.hpp"

namespace hypsurf {

struct AxisFrame {
    FuchsianGroup group;  // conjugated so the curve's axis is the imaginary axis
    Moebius A;            // z -> e^length z
    Moebius conjugator;   // the map applied to the original group
    double length;
};

/// Conjugates G so the element w has axis i R+ and acts as z -> e^l z.
AxisFrame conjugate_to_axis(const FuchsianGroup& group, const Word& w);

struct CosetRep {
    Moebius element;
    /// cosh of the distance between i R+ and element(i R+); for crossing
    /// axes this is the cosine of the crossing angle instead (< 1).
    double u;
    /// Nearest point of element(i R+) to i R+ (the crossing point when the
    /// axes meet), in polar form with r in [1, e^l).
    double r;
    double theta;
    bool intersecting;
};

/// Representatives of <A>\G/<A> - {id} having a representative that moves
/// the basepoint at most `cutoff`, left-normalized so r lies in [1, e^l) and
/// sorted by u, then (r, theta). Crossing axes are returned flagged.
std::vector<CosetRep> double_cosets(const AxisFrame& frame, int cutoff);

/// u ln((u+1)/(u-1)) - 2 for u > 1.
double riera_term(double u);

struct RieraEvaluation {
    double curve_length;
    double truncated_sum;
    double value;
    int word_cutoff;
    std::size_t coset_count;
    std::size_t intersecting_excluded;
    double min_u;
    double tail_bound;  // heuristic extrapolation, never certified
};

/// <grad l_w, grad l_w>_WP = (2/pi)(l + sum over disjoint cosets of
/// riera_term(u)), truncated at the given cutoff.
RieraEvaluation gradient_norm_sq(const FuchsianGroup& group, const Word& w, int cutoff);

/// sqrt(2 pi L).
double wolpert_distance_bound(double L);

/// (2/pi) L (1 + C e^{-L/8}) for L >= 8.
double up_eff_rhs(double L, double C);

struct OrbitBallReport {
    bool hypothesis_met;       // systole >= 8
    std::size_t reps_compared;
    double min_pairwise_dist;  // between nearest points p_B
    double max_sin_theta;
    double sin_theta_bound;    // 2 e^{-systole/8}
    bool passed;               // meaningful only when hypothesis_met
};

/// Empirical disjointness and angular checks on coset nearest points.
/// Pairwise distances use at most max_reps representatives of smallest u.
OrbitBallReport orbit_ball_checks(const std::vector<CosetRep>& cosets, double systole_length,
                                  std::size_t max_reps = 4000);

}  // namespace hypsurf
