#include "mixsing/newton.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace mixsing {

namespace mp = boost::multiprecision;
using BigInt = mp::cpp_int;
using Rational = mp::cpp_rational;

namespace {

long long dot(const std::vector<long long>& w, const LatticePoint& p) {
    long long s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * p[i];
    return s;
}

// Fraction-free elimination; the fast path works in __int128 and bails out on overflow.
std::optional<__int128> det_fast(std::vector<std::vector<__int128>> a) {
    const std::size_t k = a.size();
    if (k == 0) return 1;
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        while (piv < k && a[piv][c] == 0) ++piv;
        if (piv == k) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            sign = -sign;
        }
        for (std::size_t r = c + 1; r < k; ++r)
            for (std::size_t j = c + 1; j < k; ++j) {
                __int128 x, y;
                if (__builtin_mul_overflow(a[r][j], a[c][c], &x)) return std::nullopt;
                if (__builtin_mul_overflow(a[r][c], a[c][j], &y)) return std::nullopt;
                __int128 diff;
                if (__builtin_sub_overflow(x, y, &diff)) return std::nullopt;
                a[r][j] = diff / prev;
            }
        prev = a[c][c];
    }
    return sign * a[k - 1][k - 1];
}

BigInt det_big(std::vector<std::vector<BigInt>> a) {
    const std::size_t k = a.size();
    if (k == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        while (piv < k && a[piv][c] == 0) ++piv;
        if (piv == k) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            sign = -sign;
        }
        for (std::size_t r = c + 1; r < k; ++r)
            for (std::size_t j = c + 1; j < k; ++j) a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;
        prev = a[c][c];
    }
    return sign * a[k - 1][k - 1];
}

BigInt det_exact(const std::vector<std::vector<long long>>& m) {
    std::vector<std::vector<__int128>> a(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) a[i].assign(m[i].begin(), m[i].end());
    if (auto fast = det_fast(a)) {
        const __int128 v = *fast;
        const bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
        BigInt out = static_cast<unsigned long long>(u >> 64);
        out <<= 64;
        out += static_cast<unsigned long long>(u & ~0ull);
        return neg ? BigInt(-out) : out;
    }
    std::vector<std::vector<BigInt>> b(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (long long x : m[i]) b[i].emplace_back(x);
    return det_big(std::move(b));
}

// Primitive normal of the hyperplane spanned by n - 1 integer rows (generalized
// cross product). Empty if the rows are dependent.
std::vector<BigInt> cross_normal(const std::vector<std::vector<long long>>& rows, int n) {
    std::vector<BigInt> w(n);
    bool nonzero = false;
    for (int k = 0; k < n; ++k) {
        std::vector<std::vector<long long>> minor(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < n; ++c)
                if (c != k) minor[r].push_back(rows[r][c]);
        w[k] = det_exact(minor);
        if (k % 2) w[k] = -w[k];
        nonzero = nonzero || w[k] != 0;
    }
    if (!nonzero) return {};
    BigInt g = 0;
    for (const auto& x : w) g = mp::gcd(g, BigInt(mp::abs(x)));
    for (auto& x : w) x /= g;
    return w;
}

struct RawFace {
    std::vector<int> pts;  // indices into support, sorted
    IndexSet rec;
    auto operator<=>(const RawFace&) const = default;
};

template <class T>
std::vector<T> sorted_intersection(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

int face_dimension(const std::vector<LatticePoint>& pts, IndexSet rec, int n) {
    std::vector<std::vector<long long>> rows;
    for (std::size_t j = 1; j < pts.size(); ++j) {
        std::vector<long long> r(n);
        for (int i = 0; i < n; ++i) r[i] = pts[j][i] - pts[0][i];
        rows.push_back(std::move(r));
    }
    for (int i : rec.members()) {
        std::vector<long long> r(n, 0);
        r[i] = 1;
        rows.push_back(std::move(r));
    }
    return exact_rank(rows, n);
}

// Simplex tableau over ℚ, Bland's rule. Returns true iff {A x = b, x ≥ 0} is feasible (b ≥ 0).
bool phase_one_feasible(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b) {
    const std::size_t m = A.size();
    const std::size_t nv = m ? A[0].size() : 0;
    const std::size_t cols = nv + m;  // originals + artificials
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < nv; ++c) T[r][c] = A[r][c];
        T[r][nv + r] = 1;
        T[r][cols] = b[r];
        basis[r] = nv + r;
    }
    // Objective: minimize Σ artificials, expressed as reduced costs.
    std::vector<Rational> cost(cols + 1);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c <= cols; ++c)
            if (c < nv || c == cols) cost[c] -= T[r][c];
    while (true) {
        std::size_t enter = cols;
        for (std::size_t c = 0; c < cols; ++c)
            if (cost[c] < 0) {
                enter = c;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t r = 0; r < m; ++r) {
            if (T[r][enter] <= 0) continue;
            Rational ratio = T[r][cols] / T[r][enter];
            if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction; cannot happen for phase one
        const Rational piv = T[leave][enter];
        for (auto& x : T[leave]) x /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave || T[r][enter] == 0) continue;
            const Rational f = T[r][enter];
            for (std::size_t c = 0; c <= cols; ++c) T[r][c] -= f * T[leave][c];
        }
        if (cost[enter] != 0) {
            const Rational f = cost[enter];
            for (std::size_t c = 0; c <= cols; ++c) cost[c] -= f * T[leave][c];
        }
        basis[leave] = enter;
    }
    return cost[cols] == 0;
}

std::vector<LatticePoint> support_points(const MixedPolynomial& f) {
    std::set<LatticePoint> pts;
    for (const auto& [key, c] : f.terms()) pts.insert(key.support_point());
    return {pts.begin(), pts.end()};
}

}  // namespace

int exact_rank(const std::vector<std::vector<long long>>& rows, int ncols) {
    std::vector<std::vector<Rational>> a;
    for (const auto& r : rows) a.emplace_back(r.begin(), r.end());
    int rank = 0;
    for (int c = 0; c < ncols && rank < static_cast<int>(a.size()); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[rank][c];
            for (int j = c; j < ncols; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

bool in_hull_plus_orthant(const LatticePoint& p, const std::vector<LatticePoint>& others) {
    if (others.empty()) return false;
    const std::size_t n = p.size();
    const std::size_t k = others.size();
    // Σ λ_j q_j + s = p,  Σ λ_j = 1,  λ, s ≥ 0.
    std::vector<std::vector<Rational>> A(n + 1, std::vector<Rational>(k + n));
    std::vector<Rational> b(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) A[i][j] = others[j][i];
        A[i][k + i] = 1;
        b[i] = p[i];
    }
    for (std::size_t j = 0; j < k; ++j) A[n][j] = 1;
    b[n] = 1;
    return phase_one_feasible(A, b);
}

NewtonPolyhedron build_polyhedron(std::vector<LatticePoint> support) {
    if (support.empty()) throw std::invalid_argument("Newton polyhedron of the zero polynomial");
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    NewtonPolyhedron P;
    P.n = static_cast<int>(support.front().size());
    P.support = support;
    for (std::size_t j = 0; j < support.size(); ++j) {
        std::vector<LatticePoint> rest;
        for (std::size_t k = 0; k < support.size(); ++k)
            if (k != j) rest.push_back(support[k]);
        if (!in_hull_plus_orthant(support[j], rest)) P.vertices.push_back(support[j]);
    }
    return P;
}

NewtonPolyhedron build_polyhedron(const MixedPolynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("Newton polyhedron of the zero polynomial");
    return build_polyhedron(support_points(f));
}

bool Face::contains(const LatticePoint& p) const {
    return std::binary_search(points.begin(), points.end(), p);
}

std::vector<Face> NcBoundary::vertices() const { return compact_of_dim(0); }

std::vector<Face> NcBoundary::compact_of_dim(int k) const {
    std::vector<Face> out;
    for (const auto& f : compact_faces)
        if (f.dim == k) out.push_back(f);
    return out;
}

bool SubspaceClassification::is_vanishing(IndexSet I) const {
    return std::find(vanishing.begin(), vanishing.end(), I) != vanishing.end();
}

Face face_of_weight(const NewtonPolyhedron& P, const WeightVector& w) {
    if (w.dim() != P.n) throw std::invalid_argument("weight length mismatch");
    long long d = w.apply(P.support.front());
    for (const auto& p : P.support) d = std::min(d, w.apply(p));
    Face face{w, d, {}, 0, w.all_positive(), w.zero_set()};
    for (const auto& p : P.support)
        if (w.apply(p) == d) face.points.push_back(p);
    face.dim = face_dimension(face.points, face.direction, P.n);
    return face;
}

std::vector<Facet> enumerate_facets(const NewtonPolyhedron& P) {
    const int n = P.n;
    std::map<std::vector<long long>, long long> found;
    for (const auto& base : P.vertices) {
        std::vector<std::vector<long long>> gens;
        for (const auto& v : P.vertices) {
            if (v == base) continue;
            std::vector<long long> g(n);
            for (int i = 0; i < n; ++i) g[i] = v[i] - base[i];
            gens.push_back(std::move(g));
        }
        for (int i = 0; i < n; ++i) {
            std::vector<long long> e(n, 0);
            e[i] = 1;
            gens.push_back(std::move(e));
        }
        const int k = n - 1;
        const int m = static_cast<int>(gens.size());
        if (k > m) continue;
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<std::vector<long long>> rows;
            for (int j : idx) rows.push_back(gens[j]);
            auto w = cross_normal(rows, n);
            if (!w.empty()) {
                bool pos = false, neg = false;
                for (const auto& x : w) {
                    pos = pos || x > 0;
                    neg = neg || x < 0;
                }
                if (!(pos && neg)) {
                    std::vector<long long> wl(n);
                    for (int i = 0; i < n; ++i) wl[i] = static_cast<long long>(neg ? BigInt(-w[i]) : w[i]);
                    const long long d = dot(wl, base);
                    bool supporting = true;
                    for (const auto& v : P.vertices)
                        if (dot(wl, v) < d) {
                            supporting = false;
                            break;
                        }
                    if (supporting) found.emplace(wl, d);
                }
            }
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == m - k + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    std::vector<Facet> out;
    for (const auto& [w, d] : found) out.push_back({WeightVector(w), d});
    return out;
}

std::vector<Face> enumerate_faces(const NewtonPolyhedron& P, int dim_cap) {
    const int n = P.n;
    if (n > dim_cap)
        throw std::invalid_argument("face enumeration is capped at n = " + std::to_string(dim_cap) + " (got " +
                                    std::to_string(n) + ")");
    const auto facets = enumerate_facets(P);
    std::vector<RawFace> facet_raw;
    for (const auto& F : facets) {
        RawFace r;
        for (std::size_t j = 0; j < P.support.size(); ++j)
            if (F.normal.apply(P.support[j]) == F.d) r.pts.push_back(static_cast<int>(j));
        r.rec = F.normal.zero_set();
        facet_raw.push_back(std::move(r));
    }
    std::set<RawFace> seen(facet_raw.begin(), facet_raw.end());
    std::vector<RawFace> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<RawFace> next;
        for (const auto& a : frontier)
            for (const auto& b : facet_raw) {
                RawFace c{sorted_intersection(a.pts, b.pts), a.rec & b.rec};
                if (c.pts.empty()) continue;
                if (seen.insert(c).second) next.push_back(std::move(c));
            }
        frontier = std::move(next);
    }

    std::vector<Face> faces;
    for (const auto& raw : seen) {
        std::vector<long long> w(n, 0);
        for (std::size_t k = 0; k < facets.size(); ++k) {
            const auto& fr = facet_raw[k];
            const bool contains = std::includes(fr.pts.begin(), fr.pts.end(), raw.pts.begin(), raw.pts.end()) &&
                                  raw.rec.is_subset_of(fr.rec);
            if (!contains) continue;
            for (int i = 0; i < n; ++i) w[i] += facets[k].normal[i];
        }
        long long g = 0;
        for (long long x : w) g = std::gcd(g, x);
        for (auto& x : w) x /= g;
        Face face = face_of_weight(P, WeightVector(w));
        std::vector<LatticePoint> expected;
        for (int j : raw.pts) expected.push_back(P.support[j]);
        if (face.points != expected || face.direction != raw.rec)
            throw std::logic_error("face certificate does not reproduce the face " + describe_face(face));
        faces.push_back(std::move(face));
    }
    std::sort(faces.begin(), faces.end(), face_less);
    return faces;
}

NcBoundary enumerate_nc_boundary(const MixedPolynomial& f, int dim_cap) {
    const auto P = build_polyhedron(f);
    NcBoundary out;
    out.n = P.n;
    for (auto& face : enumerate_faces(P, dim_cap)) {
        if (face.compact) {
            out.compact_faces.push_back(std::move(face));
            continue;
        }
        // (ii): f vanishes on ℂ^I.
        if (!restrict_to(f, face.direction).is_zero()) {
            out.noncompact_rejected.push_back(std::move(face));
            continue;
        }
        // (iii): each point of Δ stays on Δ along e_i, i ∈ I.
        for (int i : face.direction.members())
            for (auto p : face.points) {
                p[i] += 1;
                if (face.weight.apply(p) != face.d)
                    out.diagnostics.push_back("half-line condition fails for " + describe_face(face));
            }
        // I_Δ must not depend on the certificate: any other weight in the relative
        // interior of the normal cone (here 2w + a facet normal through Δ) has the same zeros.
        for (const auto& F : enumerate_facets(P)) {
            bool through = true;
            for (const auto& p : face.points) through = through && F.normal.apply(p) == F.d;
            if (!through || !face.direction.is_subset_of(F.normal.zero_set())) continue;
            std::vector<long long> w2(P.n);
            for (int i = 0; i < P.n; ++i) w2[i] = 2 * face.weight[i] + F.normal[i];
            const Face alt = face_of_weight(P, WeightVector(w2));
            if (alt.points == face.points && alt.direction != face.direction)
                out.diagnostics.push_back("non-compact direction depends on the certificate for " + describe_face(face));
        }
        out.essential_noncompact.push_back(std::move(face));
    }
    return out;
}

MixedPolynomial face_function(const MixedPolynomial& f, const Face& face) {
    if (face.weight.dim() != f.dim()) throw std::invalid_argument("face dimension mismatch");
    const auto P = build_polyhedron(f);
    const Face check = face_of_weight(P, face.weight);
    if (check.d != face.d || check.points != face.points)
        throw std::invalid_argument("not a face of this polynomial's Newton polyhedron: " + describe_face(face));
    MixedPolynomial out(f.dim());
    for (const auto& [key, c] : f.terms())
        if (face.contains(key.support_point())) out.add_term(c, key.nu, key.mu);
    return out;
}

SubspaceClassification classify_subspaces(const MixedPolynomial& f, int dim_cap) {
    const int n = f.dim();
    if (n > dim_cap) throw std::invalid_argument("subspace classification is capped at n = " + std::to_string(dim_cap));
    SubspaceClassification out;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        const IndexSet I(bits);
        (restrict_to(f, I).is_zero() ? out.vanishing : out.nonvanishing).push_back(I);
    }
    auto order = [](IndexSet a, IndexSet b) {
        return a.size() != b.size() ? a.size() < b.size() : a.bits() < b.bits();
    };
    std::sort(out.vanishing.begin(), out.vanishing.end(), order);
    std::sort(out.nonvanishing.begin(), out.nonvanishing.end(), order);
    return out;
}

bool is_convenient(const MixedPolynomial& f) {
    const int n = f.dim();
    std::vector<bool> hit(n, false);
    for (const auto& [key, c] : f.terms()) {
        const auto p = key.support_point();
        int nonzero = 0, where = -1;
        for (int i = 0; i < n; ++i)
            if (p[i] > 0) {
                ++nonzero;
                where = i;
            }
        if (nonzero == 1) hit[where] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool face_less(const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.min_point() != b.min_point()) return a.min_point() < b.min_point();
    if (a.direction != b.direction) return a.direction < b.direction;
    return a.points < b.points;
}

bool same_face(const Face& a, const Face& b) { return a.points == b.points && a.direction == b.direction; }

std::string point_to_string(const LatticePoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

std::string describe_face(const Face& face) {
    std::string s;
    if (face.points.size() == 1)
        s = point_to_string(face.points.front());
    else {
        s = "[";
        for (std::size_t j = 0; j < face.points.size(); ++j) s += (j ? "," : "") + point_to_string(face.points[j]);
        s += "]";
    }
    for (int i : face.direction.members()) s += "+R+e" + std::to_string(i + 1);
    return s;
}

}  // namespace mixsing
