// planar_map.hpp — rooted combinatorial maps in dart (half-edge) representation.
// alpha is the edge involution, sigma the counterclockwise rotation around the
// origin vertex. Faces are orbits of phi = sigma o alpha and lie on the RIGHT
// of their darts. Marked holes are the non-triangle faces (outer/top/bottom).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypermap {

using Dart = std::int32_t;
inline constexpr Dart kNoDart = -1;

enum class HoleRole : std::uint8_t { Outer = 0, Bottom = 1, Top = 2 };

struct PlanarMap {
    std::vector<Dart> alpha;
    std::vector<Dart> sigma;
    Dart root = 0;
    std::vector<Dart> hole_reps;      // one dart per marked hole; hole on its right
    std::vector<HoleRole> hole_roles;

    // derived by finalize()
    std::vector<std::int32_t> vertex_of;
    std::vector<std::int32_t> face_of;
    std::int32_t n_vertices = 0;
    std::int32_t n_faces = 0;

    std::size_t dart_count() const { return alpha.size(); }
    std::size_t edge_count() const { return alpha.size() / 2; }
    Dart phi(Dart d) const { return sigma[alpha[d]]; }

    void finalize();  // computes vertex_of / face_of
    bool is_hole(std::int32_t face) const;
    std::int32_t hole_index_of_face(std::int32_t face) const;  // -1 if none
    std::vector<Dart> face_cycle(Dart d) const;                // phi-orbit
    std::vector<Dart> vertex_darts(Dart d) const;              // sigma-orbit
    std::int32_t face_degree(Dart d) const;

    Dart find_hole(HoleRole role) const;  // rep dart, or kNoDart
};

// growable map under construction; sigma maintained with its inverse so corner
// splices are O(1).
struct MapBuilder {
    std::vector<Dart> alpha, sigma, sigma_inv;

    Dart new_dart();
    std::pair<Dart, Dart> new_edge();  // alpha-linked pair
    void link_alpha(Dart a, Dart b);
    void set_next(Dart a, Dart b);            // sigma[a] = b
    void make_singleton(Dart d);              // rotation {d}
    void insert_after(Dart anchor, Dart d);   // d right after anchor in rotation
    void insert_before(Dart anchor, Dart d);
    void remove_from_rotation(Dart d);
    void drop_dart(Dart d);  // mark dead; compacted by finish()
    void adopt(const PlanarMap& m);  // start from an existing map's darts

    PlanarMap finish(Dart root, std::vector<Dart> hole_reps,
                     std::vector<HoleRole> hole_roles);

  private:
    std::vector<bool> dead_;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
    void fail(std::string msg);
};

// Checks: alpha fixed-point-free involution, sigma a permutation, connectivity,
// Euler characteristic 2, all non-hole faces are triangles, hole boundaries are
// simple cycles.
ValidationReport validate(const PlanarMap& m);

// BFS distances from a set of source vertices; -1 marks unreachable.
std::vector<std::int32_t> vertex_distances(const PlanarMap& m,
                                           const std::vector<std::int32_t>& sources);
enum class DistanceSource { Root, BottomBoundary };
std::vector<std::int32_t> distances(const PlanarMap& m, DistanceSource src);

// Canonical relabeling by BFS over darts from the root; two rooted-isomorphic
// maps canonicalize to identical arrays.
PlanarMap canonicalize(const PlanarMap& m);
bool identical(const PlanarMap& a, const PlanarMap& b);
bool canonically_equal(const PlanarMap& a, const PlanarMap& b);

// Line-oriented text format: header (counts, root), one line per dart
// "id alpha sigma", then one line per hole (role + face dart list).
std::string to_text(const PlanarMap& m);
PlanarMap from_text(const std::string& text);
void write_map(const PlanarMap& m, const std::string& path);
PlanarMap read_map(const std::string& path);

// Hull B_r^*: faces within distance r of the source (root vertex for plane
// form, bottom boundary for cylinders) plus all complementary components that
// do not contain the top/outer hole. The new boundary becomes the Top hole.
PlanarMap hull(const PlanarMap& m, std::int32_t r);

// Root transformation between the plane form (rooted at an ordinary edge) and
// the 1-gon form (bottom hole a loop). Vertex count is unchanged.
PlanarMap root_transform_forward(const PlanarMap& plane);
PlanarMap root_transform_inverse(const PlanarMap& onegon);

}  // namespace hypermap
