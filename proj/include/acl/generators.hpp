#pragma once

// Finite discretizations of continuous metric spaces, all normalized to
// diameter 1 and carrying the empty signature.

#include "acl/structures.hpp"

namespace acl::generators {

/// Two points at distance 1.
FiniteStructure two_point();

/// n equally spaced points of [0,1] with the usual metric |s-t|. For n = 3
/// this is {0, 1/2, 1}.
FiniteStructure interval(std::size_t n);

/// n equally spaced points on a circle with the geodesic metric normalized so
/// antipodal points are at distance 1. Exact.
FiniteStructure circle_geodesic(std::size_t n);

/// Left endpoints of the 2^level intervals of the level-th Cantor stage plus
/// the point 1, with the metric of [0,1]. Exact.
FiniteStructure cantor(unsigned level);

/// Denominator of the grid used for chordal (Euclidean) metrics.
inline constexpr long chordal_grid = 1L << 20;

/// n equally spaced points on a circle of diameter 1 with the Euclidean
/// (chordal) metric. Distances are rounded up to multiples of 1/chordal_grid,
/// capped at 1, and closed under shortest paths so the triangle inequality
/// holds exactly; each entry is within 1/chordal_grid above the true chord.
FiniteStructure circle_chordal(std::size_t n);

/// n Fibonacci-lattice points on a sphere of diameter 1 with the chordal
/// metric, rounded as for circle_chordal.
FiniteStructure sphere_chordal(std::size_t n);

/// n Fibonacci-lattice points with the geodesic metric normalized to diameter
/// 1, rounded as for circle_chordal.
FiniteStructure sphere_geodesic(std::size_t n);

}  // namespace acl::generators
