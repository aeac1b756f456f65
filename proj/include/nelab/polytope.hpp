#pragma once

#include <utility>
#include <vector>

#include "nelab/spaces.hpp"

namespace nelab::polytope {

/// Real coordinate views of the ball geometry of a single polytope leaf
/// (l1/linf, or any one-dimensional leaf). Shared by the norm oracle and the
/// slice/hull/denting checkers.

std::vector<std::vector<double>> ball_vertices(const SpaceDesc& space);

std::vector<std::vector<double>> ball_facets(const SpaceDesc& space);

/// Vertex index pairs forming the edges of the ball polytope.
std::vector<std::pair<int, int>> ball_edges(const SpaceDesc& space);

/// Vertices of B ∩ {y : normal·y >= threshold}: the surviving ball vertices
/// plus the crossing points on cut edges. Exact for one halfspace cut.
std::vector<std::vector<double>> cut_vertices(const SpaceDesc& space,
                                              const std::vector<double>& normal,
                                              double threshold);

double dot(const std::vector<double>& a, const std::vector<double>& b);

Vector to_vector(const std::vector<double>& c);
Functional to_functional(const std::vector<double>& c);
std::vector<double> to_real(const std::vector<Scalar>& c);

}  // namespace nelab::polytope
