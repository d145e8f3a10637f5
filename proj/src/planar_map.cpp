// planar_map.cpp — map core: orbits, validation, BFS, hulls, io, root transform.
#include "hypermap/planar_map.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace hypermap {

void PlanarMap::finalize() {
    const std::size_t n = alpha.size();
    vertex_of.assign(n, -1);
    face_of.assign(n, -1);
    std::int32_t vid = 0;
    for (Dart d = 0; d < Dart(n); ++d) {
        if (vertex_of[d] >= 0) continue;
        Dart e = d;
        do {
            vertex_of[e] = vid;
            e = sigma[e];
        } while (e != d);
        ++vid;
    }
    n_vertices = vid;
    std::int32_t fid = 0;
    for (Dart d = 0; d < Dart(n); ++d) {
        if (face_of[d] >= 0) continue;
        Dart e = d;
        do {
            face_of[e] = fid;
            e = phi(e);
        } while (e != d);
        ++fid;
    }
    n_faces = fid;
}

bool PlanarMap::is_hole(std::int32_t face) const { return hole_index_of_face(face) >= 0; }

std::int32_t PlanarMap::hole_index_of_face(std::int32_t face) const {
    for (std::size_t i = 0; i < hole_reps.size(); ++i)
        if (face_of[hole_reps[i]] == face) return std::int32_t(i);
    return -1;
}

std::vector<Dart> PlanarMap::face_cycle(Dart d) const {
    std::vector<Dart> out;
    Dart e = d;
    do {
        out.push_back(e);
        e = phi(e);
    } while (e != d);
    return out;
}

std::vector<Dart> PlanarMap::vertex_darts(Dart d) const {
    std::vector<Dart> out;
    Dart e = d;
    do {
        out.push_back(e);
        e = sigma[e];
    } while (e != d);
    return out;
}

std::int32_t PlanarMap::face_degree(Dart d) const {
    std::int32_t n = 0;
    Dart e = d;
    do {
        ++n;
        e = phi(e);
    } while (e != d);
    return n;
}

Dart PlanarMap::find_hole(HoleRole role) const {
    for (std::size_t i = 0; i < hole_reps.size(); ++i)
        if (hole_roles[i] == role) return hole_reps[i];
    return kNoDart;
}

// --- builder -------------------------------------------------------------------

Dart MapBuilder::new_dart() {
    alpha.push_back(kNoDart);
    sigma.push_back(kNoDart);
    sigma_inv.push_back(kNoDart);
    dead_.push_back(false);
    return Dart(alpha.size()) - 1;
}

std::pair<Dart, Dart> MapBuilder::new_edge() {
    Dart a = new_dart(), b = new_dart();
    link_alpha(a, b);
    return {a, b};
}

void MapBuilder::link_alpha(Dart a, Dart b) {
    alpha[a] = b;
    alpha[b] = a;
}

void MapBuilder::set_next(Dart a, Dart b) {
    sigma[a] = b;
    sigma_inv[b] = a;
}

void MapBuilder::make_singleton(Dart d) { set_next(d, d); }

void MapBuilder::insert_after(Dart anchor, Dart d) {
    Dart nxt = sigma[anchor];
    set_next(anchor, d);
    set_next(d, nxt);
}

void MapBuilder::insert_before(Dart anchor, Dart d) { insert_after(sigma_inv[anchor], d); }

void MapBuilder::remove_from_rotation(Dart d) {
    Dart p = sigma_inv[d], n = sigma[d];
    if (p == d) {
        sigma[d] = sigma_inv[d] = kNoDart;
        return;
    }
    set_next(p, n);
    sigma[d] = sigma_inv[d] = kNoDart;
}

void MapBuilder::drop_dart(Dart d) { dead_[d] = true; }

void MapBuilder::adopt(const PlanarMap& m) {
    const std::size_t n = m.dart_count();
    alpha = m.alpha;
    sigma = m.sigma;
    sigma_inv.assign(n, kNoDart);
    for (Dart d = 0; d < Dart(n); ++d) sigma_inv[m.sigma[d]] = d;
    dead_.assign(n, false);
}

PlanarMap MapBuilder::finish(Dart root, std::vector<Dart> hole_reps,
                             std::vector<HoleRole> hole_roles) {
    std::vector<Dart> remap(alpha.size(), kNoDart);
    Dart next_id = 0;
    for (std::size_t d = 0; d < alpha.size(); ++d)
        if (!dead_[d]) remap[d] = next_id++;
    PlanarMap m;
    m.alpha.resize(next_id);
    m.sigma.resize(next_id);
    for (std::size_t d = 0; d < alpha.size(); ++d) {
        if (dead_[d]) continue;
        if (alpha[d] == kNoDart || sigma[d] == kNoDart)
            throw std::logic_error("MapBuilder: incomplete dart " + std::to_string(d));
        if (remap[alpha[d]] == kNoDart || remap[sigma[d]] == kNoDart)
            throw std::logic_error("MapBuilder: live dart linked to a dead dart");
        m.alpha[remap[d]] = remap[alpha[d]];
        m.sigma[remap[d]] = remap[sigma[d]];
    }
    m.root = remap[root];
    for (Dart& h : hole_reps) h = remap[h];
    m.hole_reps = std::move(hole_reps);
    m.hole_roles = std::move(hole_roles);
    m.finalize();
    return m;
}

// --- validation ------------------------------------------------------------------

void ValidationReport::fail(std::string msg) {
    ok = false;
    issues.push_back(std::move(msg));
}

ValidationReport validate(const PlanarMap& m) {
    ValidationReport rep;
    const std::size_t n = m.alpha.size();
    if (n == 0) {
        rep.fail("empty map");
        return rep;
    }
    if (n % 2 != 0) rep.fail("odd number of darts");
    for (Dart d = 0; d < Dart(n); ++d) {
        if (m.alpha[d] < 0 || m.alpha[d] >= Dart(n) || m.sigma[d] < 0 ||
            m.sigma[d] >= Dart(n)) {
            rep.fail("dart " + std::to_string(d) + " has out-of-range links");
            return rep;
        }
    }
    std::vector<int> seen(n, 0);
    for (Dart d = 0; d < Dart(n); ++d) seen[m.sigma[d]]++;
    for (Dart d = 0; d < Dart(n); ++d)
        if (seen[d] != 1) {
            rep.fail("sigma is not a permutation at dart " + std::to_string(d));
            return rep;
        }
    for (Dart d = 0; d < Dart(n); ++d) {
        if (m.alpha[d] == d) rep.fail("alpha has a fixed point at dart " + std::to_string(d));
        if (m.alpha[m.alpha[d]] != d)
            rep.fail("alpha is not an involution at dart " + std::to_string(d));
    }
    if (!rep.ok) return rep;
    std::vector<char> vis(n, 0);
    std::queue<Dart> q;
    q.push(0);
    vis[0] = 1;
    std::size_t cnt = 0;
    while (!q.empty()) {
        Dart d = q.front();
        q.pop();
        ++cnt;
        for (Dart e : {m.alpha[d], m.sigma[d]})
            if (!vis[e]) {
                vis[e] = 1;
                q.push(e);
            }
    }
    if (cnt != n) rep.fail("map is disconnected");
    long V = m.n_vertices, E = long(n) / 2, F = m.n_faces;
    if (V - E + F != 2)
        rep.fail("Euler characteristic is " + std::to_string(V - E + F) + ", want 2");
    std::vector<char> is_hole_face(m.n_faces, 0);
    for (Dart r : m.hole_reps) is_hole_face[m.face_of[r]] = 1;
    std::vector<std::int32_t> fdeg(m.n_faces, 0);
    for (Dart d = 0; d < Dart(n); ++d) fdeg[m.face_of[d]]++;
    for (std::int32_t f = 0; f < m.n_faces; ++f)
        if (!is_hole_face[f] && fdeg[f] != 3)
            rep.fail("non-triangle inner face " + std::to_string(f) + " of degree " +
                     std::to_string(fdeg[f]));
    for (std::size_t i = 0; i < m.hole_reps.size(); ++i) {
        auto cyc = m.face_cycle(m.hole_reps[i]);
        std::vector<std::int32_t> vs;
        for (Dart d : cyc) vs.push_back(m.vertex_of[d]);
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            rep.fail("hole " + std::to_string(i) + " boundary is not a simple cycle");
    }
    if (m.root < 0 || m.root >= Dart(n)) rep.fail("root out of range");
    return rep;
}

// --- BFS ---------------------------------------------------------------------------

std::vector<std::int32_t> vertex_distances(const PlanarMap& m,
                                           const std::vector<std::int32_t>& sources) {
    std::vector<std::int32_t> dist(m.n_vertices, -1);
    std::vector<std::int32_t> queue;
    queue.reserve(m.n_vertices);
    for (auto s : sources)
        if (dist[s] < 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    std::vector<Dart> rep(m.n_vertices, kNoDart);
    for (Dart d = 0; d < Dart(m.dart_count()); ++d)
        if (rep[m.vertex_of[d]] == kNoDart) rep[m.vertex_of[d]] = d;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto v = queue[head];
        Dart d0 = rep[v], e = d0;
        do {
            auto w = m.vertex_of[m.alpha[e]];
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            e = m.sigma[e];
        } while (e != d0);
    }
    return dist;
}

std::vector<std::int32_t> distances(const PlanarMap& m, DistanceSource src) {
    std::vector<std::int32_t> sources;
    if (src == DistanceSource::Root) {
        sources.push_back(m.vertex_of[m.root]);
    } else {
        Dart b = m.find_hole(HoleRole::Bottom);
        if (b == kNoDart) throw std::invalid_argument("distances: map has no bottom hole");
        for (Dart d : m.face_cycle(b)) sources.push_back(m.vertex_of[d]);
    }
    auto dist = vertex_distances(m, sources);
    for (auto v : dist)
        if (v < 0) throw std::runtime_error("distances: map is disconnected");
    return dist;
}

// --- canonical form -----------------------------------------------------------------

PlanarMap canonicalize(const PlanarMap& m) {
    const std::size_t n = m.alpha.size();
    std::vector<Dart> remap(n, kNoDart);
    std::vector<Dart> order;
    order.reserve(n);
    remap[m.root] = 0;
    order.push_back(m.root);
    for (std::size_t head = 0; head < order.size(); ++head) {
        Dart d = order[head];
        for (Dart e : {m.alpha[d], m.sigma[d]}) {
            if (remap[e] == kNoDart) {
                remap[e] = Dart(order.size());
                order.push_back(e);
            }
        }
    }
    if (order.size() != n) throw std::runtime_error("canonicalize: disconnected map");
    PlanarMap out;
    out.alpha.resize(n);
    out.sigma.resize(n);
    for (Dart d = 0; d < Dart(n); ++d) {
        out.alpha[remap[d]] = remap[m.alpha[d]];
        out.sigma[remap[d]] = remap[m.sigma[d]];
    }
    out.root = 0;
    out.finalize();
    std::vector<std::pair<int, Dart>> holes;
    for (std::size_t i = 0; i < m.hole_reps.size(); ++i) {
        Dart r = remap[m.hole_reps[i]];
        Dart best = r, e = r;
        do {
            best = std::min(best, e);
            e = out.phi(e);
        } while (e != r);
        holes.push_back({int(m.hole_roles[i]), best});
    }
    std::sort(holes.begin(), holes.end());
    for (auto& [role, rep2] : holes) {
        out.hole_reps.push_back(rep2);
        out.hole_roles.push_back(HoleRole(role));
    }
    return out;
}

bool identical(const PlanarMap& a, const PlanarMap& b) {
    return a.alpha == b.alpha && a.sigma == b.sigma && a.root == b.root &&
           a.hole_reps == b.hole_reps && a.hole_roles == b.hole_roles;
}

bool canonically_equal(const PlanarMap& a, const PlanarMap& b) {
    if (a.dart_count() != b.dart_count()) return false;
    return identical(canonicalize(a), canonicalize(b));
}

// --- io ---------------------------------------------------------------------------

std::string to_text(const PlanarMap& m) {
    std::ostringstream out;
    out << "hypermap-map 1\n";
    out << "darts " << m.dart_count() << " vertices " << m.n_vertices << " faces "
        << m.n_faces << " root " << m.root << "\n";
    for (Dart d = 0; d < Dart(m.dart_count()); ++d)
        out << d << " " << m.alpha[d] << " " << m.sigma[d] << "\n";
    out << "holes " << m.hole_reps.size() << "\n";
    static const char* role_names[] = {"outer", "bottom", "top"};
    for (std::size_t i = 0; i < m.hole_reps.size(); ++i) {
        out << role_names[int(m.hole_roles[i])];
        for (Dart d : m.face_cycle(m.hole_reps[i])) out << " " << d;
        out << "\n";
    }
    return out.str();
}

PlanarMap from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    int version;
    in >> tag >> version;
    if (tag != "hypermap-map" || version != 1)
        throw std::runtime_error("from_text: bad header");
    std::string kw;
    std::size_t nd, nv, nf;
    Dart root;
    in >> kw >> nd >> kw >> nv >> kw >> nf >> kw >> root;
    PlanarMap m;
    m.alpha.resize(nd);
    m.sigma.resize(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        Dart id, a, s;
        in >> id >> a >> s;
        if (id != Dart(i)) throw std::runtime_error("from_text: darts out of order");
        m.alpha[i] = a;
        m.sigma[i] = s;
    }
    std::size_t nh;
    in >> kw >> nh;
    if (kw != "holes") throw std::runtime_error("from_text: missing holes section");
    std::getline(in, kw);
    for (std::size_t i = 0; i < nh; ++i) {
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error("from_text: truncated holes");
        std::istringstream ls(line);
        std::string role;
        ls >> role;
        HoleRole hr;
        if (role == "outer")
            hr = HoleRole::Outer;
        else if (role == "bottom")
            hr = HoleRole::Bottom;
        else if (role == "top")
            hr = HoleRole::Top;
        else
            throw std::runtime_error("from_text: unknown hole role " + role);
        Dart d;
        if (!(ls >> d)) throw std::runtime_error("from_text: empty hole");
        m.hole_reps.push_back(d);
        m.hole_roles.push_back(hr);
    }
    m.root = root;
    m.finalize();
    if (m.n_vertices != std::int32_t(nv) || m.n_faces != std::int32_t(nf))
        throw std::runtime_error("from_text: counts disagree with structure");
    return m;
}

void write_map(const PlanarMap& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_map: cannot open " + path);
    out << to_text(m);
}

PlanarMap read_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_map: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

// --- hull -------------------------------------------------------------------------

namespace {

PlanarMap submap_by_faces(const PlanarMap& m, const std::vector<char>& keep_face,
                          HoleRole new_role) {
    const std::size_t n = m.dart_count();
    std::vector<char> keep(n, 0);
    for (Dart d = 0; d < Dart(n); ++d)
        if (keep_face[m.face_of[d]] || keep_face[m.face_of[m.alpha[d]]]) keep[d] = 1;
    std::vector<Dart> remap(n, kNoDart);
    Dart next = 0;
    for (Dart d = 0; d < Dart(n); ++d)
        if (keep[d]) remap[d] = next++;
    PlanarMap out;
    out.alpha.resize(next);
    out.sigma.resize(next);
    Dart new_hole_rep = kNoDart;
    for (Dart d = 0; d < Dart(n); ++d) {
        if (!keep[d]) continue;
        out.alpha[remap[d]] = remap[m.alpha[d]];
        Dart s = m.sigma[d];
        while (!keep[s]) s = m.sigma[s];
        out.sigma[remap[d]] = remap[s];
        if (!keep_face[m.face_of[d]] && new_hole_rep == kNoDart) new_hole_rep = remap[d];
    }
    if (!keep[m.root]) throw std::invalid_argument("submap_by_faces: root not kept");
    out.root = remap[m.root];
    for (std::size_t i = 0; i < m.hole_reps.size(); ++i) {
        if (keep_face[m.face_of[m.hole_reps[i]]]) {
            out.hole_reps.push_back(remap[m.hole_reps[i]]);
            out.hole_roles.push_back(m.hole_roles[i]);
        }
    }
    if (new_hole_rep != kNoDart) {
        out.hole_reps.push_back(new_hole_rep);
        out.hole_roles.push_back(new_role);
    }
    out.finalize();
    return out;
}

}  // namespace

PlanarMap hull(const PlanarMap& m, std::int32_t r) {
    if (r < 1) throw std::invalid_argument("hull: r >= 1 required");
    Dart top = m.find_hole(HoleRole::Top);
    if (top == kNoDart) top = m.find_hole(HoleRole::Outer);
    if (top == kNoDart) throw std::invalid_argument("hull: no top/outer hole");
    bool cylinder = m.find_hole(HoleRole::Bottom) != kNoDart;
    auto dist = distances(m, cylinder ? DistanceSource::BottomBoundary : DistanceSource::Root);
    for (Dart d : m.face_cycle(top))
        if (dist[m.vertex_of[d]] < r)
            throw std::invalid_argument("hull: r exceeds available height");

    std::vector<std::int32_t> fmin(m.n_faces, INT32_MAX);
    for (Dart d = 0; d < Dart(m.dart_count()); ++d)
        fmin[m.face_of[d]] = std::min(fmin[m.face_of[d]], dist[m.vertex_of[d]]);
    std::int32_t top_face = m.face_of[top];
    std::vector<char> in_top_comp(m.n_faces, 0);
    std::vector<Dart> face_rep(m.n_faces, kNoDart);
    for (Dart d = 0; d < Dart(m.dart_count()); ++d)
        if (face_rep[m.face_of[d]] == kNoDart) face_rep[m.face_of[d]] = d;
    std::vector<std::int32_t> stack{top_face};
    in_top_comp[top_face] = 1;
    while (!stack.empty()) {
        auto f = stack.back();
        stack.pop_back();
        Dart d0 = face_rep[f], e = d0;
        do {
            auto g = m.face_of[m.alpha[e]];
            if (!in_top_comp[g] && fmin[g] >= r) {
                in_top_comp[g] = 1;
                stack.push_back(g);
            }
            e = m.phi(e);
        } while (e != d0);
    }
    std::vector<char> keep(m.n_faces, 0);
    for (std::int32_t f = 0; f < m.n_faces; ++f) keep[f] = !in_top_comp[f];
    return submap_by_faces(m, keep, HoleRole::Top);
}

// --- root transformation -------------------------------------------------------------

PlanarMap root_transform_forward(const PlanarMap& plane) {
    MapBuilder bb;
    bb.adopt(plane);
    Dart r0 = plane.root, r0p = plane.alpha[r0];
    auto [dup_uv, dup_vu] = bb.new_edge();
    auto [loop_b, loop_bp] = bb.new_edge();
    // at u, the corner holding the right face of r0 receives [dup_uv, b', b]
    bb.insert_before(r0, dup_uv);
    bb.insert_after(dup_uv, loop_bp);
    bb.insert_after(loop_bp, loop_b);
    // at v, the duplicate sits right after alpha(r0)
    bb.insert_after(r0p, dup_vu);
    std::vector<Dart> holes = plane.hole_reps;
    std::vector<HoleRole> roles = plane.hole_roles;
    holes.push_back(loop_b);
    roles.push_back(HoleRole::Bottom);
    return bb.finish(loop_b, std::move(holes), std::move(roles));
}

PlanarMap root_transform_inverse(const PlanarMap& onegon) {
    Dart loop = onegon.find_hole(HoleRole::Bottom);
    if (loop == kNoDart)
        throw std::invalid_argument("root_transform_inverse: no bottom hole");
    if (onegon.face_degree(loop) != 1)
        throw std::invalid_argument("root_transform_inverse: bottom hole is not a 1-gon");
    Dart b = loop;              // bottom hole on the right of b
    Dart bp = onegon.alpha[b];  // the triangle f1 on its right
    Dart x = onegon.phi(bp);    // u -> w
    Dart y = onegon.phi(x);     // w -> u
    if (onegon.phi(y) != bp)
        throw std::invalid_argument(
            "root_transform_inverse: face next to the loop is not a triangle");
    MapBuilder bb;
    bb.adopt(onegon);
    Dart xa = onegon.alpha[x], ya = onegon.alpha[y];
    for (Dart d : {b, bp, x, y}) bb.remove_from_rotation(d);
    bb.link_alpha(xa, ya);
    for (Dart d : {b, bp, x, y}) bb.drop_dart(d);
    std::vector<Dart> holes;
    std::vector<HoleRole> roles;
    for (std::size_t i = 0; i < onegon.hole_reps.size(); ++i) {
        if (onegon.hole_roles[i] == HoleRole::Bottom) continue;
        Dart rep = onegon.hole_reps[i];
        while (rep == b || rep == bp || rep == x || rep == y) rep = onegon.phi(rep);
        holes.push_back(rep);
        roles.push_back(onegon.hole_roles[i]);
    }
    return bb.finish(ya, std::move(holes), std::move(roles));
}

}  // namespace hypermap
