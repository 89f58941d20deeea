// Newton polyhedron Γ₊(f) = conv{ν + μ} + ℝ₊ⁿ, its faces, and the non-compact
// Newton boundary. All predicates are exact (integer / rational arithmetic).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixsing/lattice.hpp"
#include "mixsing/mixedpoly.hpp"

namespace mixsing {

inline constexpr int kDefaultFaceDimCap = 6;

struct Facet {
    WeightVector normal;  // primitive
    long long d;
};

struct NewtonPolyhedron {
    int n = 0;
    std::vector<LatticePoint> support;   // sorted, distinct
    std::vector<LatticePoint> vertices;  // sorted
};

struct Face {
    WeightVector weight{std::vector<long long>{1}};  // certificate: Δ = Δ_w
    long long d = 0;                   // min of l_w over Γ₊
    std::vector<LatticePoint> points;  // support points on Δ, sorted
    int dim = 0;
    bool compact = true;
    IndexSet direction;  // {i : w_i = 0}; empty iff compact

    bool contains(const LatticePoint& p) const;
    /// Lexicographically smallest point; used for ordering.
    const LatticePoint& min_point() const { return points.front(); }
};

struct NcBoundary {
    int n = 0;
    std::vector<Face> compact_faces;         // all dims, sorted by (dim, min point, ...)
    std::vector<Face> essential_noncompact;  // same ordering
    std::vector<Face> noncompact_rejected;   // non-compact faces failing the vanishing test
    std::vector<std::string> diagnostics;

    std::vector<Face> vertices() const;
    std::vector<Face> compact_of_dim(int k) const;
};

struct SubspaceClassification {
    std::vector<IndexSet> vanishing;     // 𝓘_v, sorted by (size, bits)
    std::vector<IndexSet> nonvanishing;  // 𝓘_nv
    bool is_vanishing(IndexSet I) const;
};

/// Throws std::invalid_argument for the zero polynomial.
NewtonPolyhedron build_polyhedron(const MixedPolynomial& f);
NewtonPolyhedron build_polyhedron(std::vector<LatticePoint> support);

/// True iff p ∈ conv(others) + ℝ₊ⁿ, decided by an exact rational LP.
bool in_hull_plus_orthant(const LatticePoint& p, const std::vector<LatticePoint>& others);

Face face_of_weight(const NewtonPolyhedron& P, const WeightVector& w);

/// Facets of Γ₊ (faces of dimension n − 1), sorted by normal.
std::vector<Facet> enumerate_facets(const NewtonPolyhedron& P);
/// Every proper face of Γ₊, compact or not.
std::vector<Face> enumerate_faces(const NewtonPolyhedron& P, int dim_cap = kDefaultFaceDimCap);

NcBoundary enumerate_nc_boundary(const MixedPolynomial& f, int dim_cap = kDefaultFaceDimCap);

/// Terms of f whose support point lies on Δ. Throws if Δ is not a face of Γ₊(f).
MixedPolynomial face_function(const MixedPolynomial& f, const Face& face);

SubspaceClassification classify_subspaces(const MixedPolynomial& f, int dim_cap = 20);

bool is_convenient(const MixedPolynomial& f);

/// Rank over ℚ of a list of integer row vectors.
int exact_rank(const std::vector<std::vector<long long>>& rows, int ncols);

/// Ordering used for every face list: (dim, min point, direction, points).
bool face_less(const Face& a, const Face& b);
bool same_face(const Face& a, const Face& b);

std::string point_to_string(const LatticePoint& p);
/// e.g. "(2,3)+R+e2" or "[(2,3),(3,2)]".
std::string describe_face(const Face& face);

}  // namespace mixsing
