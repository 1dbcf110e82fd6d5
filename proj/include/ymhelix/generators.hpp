#pragma once

// Desk-scale mesh generators. All generators embed in R^n, return positive
// volumes, and attach integer "period cochains" that pin down the homology
// generators geometrically (used by harmonic bases and generator cuts).

#include <memory>
#include <vector>

#include "ymhelix/metric.hpp"
#include "ymhelix/simplicial_complex.hpp"

namespace ymhelix {

// A non-separating admissible cut recorded by a mesh builder: (n-1)-faces
// with +-1 jumps whose relative homology class is a generator.
struct GeneratorCutSpec {
    std::vector<SimplexId> faces;
    std::vector<double> jumps;  // relative to (lower coface -> higher coface)
    std::string label;
};

struct Mesh {
    std::shared_ptr<SimplicialComplex> complex;
    std::shared_ptr<MetricData> metric;

    // Exactly closed integer 1-cochains representing a basis of H^1(U);
    // empty when b1 = 0. Values are small integers (branch-crossing counts).
    std::vector<std::vector<double>> h1_period_cochains;
    // Same for H^1(U, boundary): integer relative cocycles (zero trace).
    std::vector<std::vector<double>> h1_relative_period_cochains;
    // Closed integer 1-cycles (edge chains) pairing with the absolute
    // generators, e.g. the core loop of a solid torus.
    std::vector<Chain> h1_cycles;
    // Relative 1-chains (paths between boundary components) pairing with the
    // relative generators.
    std::vector<Chain> h1_relative_cycles;
    // Cuts with nonzero relative class (one per relative generator).
    std::vector<GeneratorCutSpec> generator_cuts;

    std::string name;
};

// Kuhn (Freudenthal) triangulation of an axis-aligned box.
// resolution: cells per axis; edge_lengths: box extents per axis.
Mesh build_box(int n, const std::vector<int>& resolution,
               const std::vector<double>& edge_lengths);

// Triangulated solid torus S^1 x D^2 embedded in R^3.
// major_segments: subdivisions around the core circle (>= 3);
// minor_resolution: rings in each cross-section disk (>= 1).
Mesh build_solid_torus(int major_segments, int minor_resolution,
                       double major_radius = 2.0, double minor_radius = 0.75);

// Flat annulus r_in <= r <= r_out in R^2.
Mesh build_annulus(int radial_resolution, int angular_segments,
                   double r_in = 1.0, double r_out = 2.0);

// Ranks of (relative) simplicial homology over Q.
std::vector<int> betti_numbers(const SimplicialComplex& complex, bool relative);

// Exact rank over Q of an integer matrix given as triplets (Gaussian
// elimination with rational arithmetic, lexicographic pivoting).
long rational_rank(std::size_t rows, std::size_t cols,
                   const std::vector<std::array<long long, 3>>& triplets);

}  // namespace ymhelix
