// forest.cpp — plane trees, reverse forests, balls, and the U(f) genealogy.
#include "hypermap/forest.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace hypermap {

std::int32_t PlaneTree::height() const {
    auto d = depths();
    return *std::max_element(d.begin(), d.end());
}

std::vector<std::int32_t> PlaneTree::depths() const {
    std::vector<std::int32_t> d(kids.size(), 0);
    std::vector<std::int32_t> stack{0};
    std::vector<char> seen(kids.size(), 0);
    seen[0] = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto c : kids[v]) {
            if (seen[c]) throw std::logic_error("PlaneTree: not a tree");
            seen[c] = 1;
            d[c] = d[v] + 1;
            stack.push_back(c);
        }
    }
    return d;
}

std::string PlaneTree::parenthesized() const {
    std::string out;
    struct Item {
        std::int32_t node;
        bool close;
    };
    std::vector<Item> stack{{0, false}};
    while (!stack.empty()) {
        auto [v, close] = stack.back();
        stack.pop_back();
        if (close) {
            out += ')';
            continue;
        }
        out += '(';
        stack.push_back({v, true});
        for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it)
            stack.push_back({*it, false});
    }
    return out;
}

PlaneTree PlaneTree::from_parenthesized(const std::string& s) {
    PlaneTree t;
    std::vector<std::int32_t> stack;
    for (char c : s) {
        if (c == '(') {
            t.kids.push_back({});
            std::int32_t id = std::int32_t(t.kids.size()) - 1;
            if (!stack.empty()) t.kids[stack.back()].push_back(id);
            stack.push_back(id);
        } else if (c == ')') {
            if (stack.empty()) throw std::runtime_error("from_parenthesized: unbalanced");
            stack.pop_back();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw std::runtime_error("from_parenthesized: bad character");
        }
    }
    if (!stack.empty() || t.kids.empty())
        throw std::runtime_error("from_parenthesized: unbalanced");
    return t;
}

std::int32_t ReverseForest::total_nodes() const {
    std::int32_t n = 0;
    for (const auto& t : trees) n += t.size();
    return n;
}

std::int32_t ReverseForest::dist_node() const {
    std::int32_t v = 0;
    const PlaneTree& t = trees[dist_tree];
    for (auto c : dist_path) v = t.kids[v][c];
    return v;
}

bool ReverseForest::admissible() const { return dist_tree == 0; }

std::int32_t ReverseForest::bottom_count() const { return std::int32_t(level(0).size()); }

std::int32_t ReverseForest::global_id(std::int32_t tree, std::int32_t node) const {
    std::int32_t base = 0;
    for (std::int32_t t = 0; t < tree; ++t) base += trees[t].size();
    return base + node;
}

std::pair<std::int32_t, std::int32_t> ReverseForest::from_global(std::int32_t gid) const {
    for (std::int32_t t = 0; t < tree_count(); ++t) {
        if (gid < trees[t].size()) return {t, gid};
        gid -= trees[t].size();
    }
    throw std::out_of_range("ReverseForest::from_global");
}

namespace {
void collect_level(const PlaneTree& t, std::int32_t node, std::int32_t depth,
                   std::int32_t want, std::int32_t base, std::vector<std::int32_t>& out) {
    if (depth == want) {
        out.push_back(base + node);
        return;
    }
    for (auto c : t.kids[node]) collect_level(t, c, depth + 1, want, base, out);
}
}  // namespace

std::vector<std::int32_t> ReverseForest::level(std::int32_t rev_height) const {
    std::int32_t depth = height - rev_height;
    std::vector<std::int32_t> out;
    std::int32_t base = 0;
    for (const auto& t : trees) {
        if (depth >= 0) collect_level(t, 0, 0, depth, base, out);
        base += t.size();
    }
    return out;
}

std::int32_t ReverseForest::child_count(std::int32_t gid) const {
    auto [t, v] = from_global(gid);
    return std::int32_t(trees[t].kids[v].size());
}

void check_pre_admissible(const ReverseForest& f) {
    if (f.trees.empty()) throw std::invalid_argument("forest: no trees");
    std::int32_t maxh = 0;
    for (const auto& t : f.trees) maxh = std::max(maxh, t.height());
    if (maxh != f.height)
        throw std::invalid_argument("forest: maximal tree height differs from declared height");
    if (f.dist_tree < 0 || f.dist_tree >= f.tree_count())
        throw std::invalid_argument("forest: distinguished tree out of range");
    if (std::int32_t(f.dist_path.size()) != f.height)
        throw std::invalid_argument("forest: distinguished vertex not at reverse height 0");
    const PlaneTree& t = f.trees[f.dist_tree];
    std::int32_t v = 0;
    for (auto c : f.dist_path) {
        if (c < 0 || c >= std::int32_t(t.kids[v].size()))
            throw std::invalid_argument("forest: distinguished path invalid");
        v = t.kids[v][c];
    }
}

namespace {
struct SubtreeCopier {
    const PlaneTree& t;
    PlaneTree& out;
    void go(std::int32_t v, std::int32_t nv) {
        for (auto c : t.kids[v]) {
            out.kids.push_back({});
            std::int32_t nc = std::int32_t(out.kids.size()) - 1;
            out.kids[nv].push_back(nc);
            go(c, nc);
        }
    }
};

PlaneTree subtree(const PlaneTree& t, std::int32_t root) {
    PlaneTree out;
    out.kids.push_back({});
    SubtreeCopier{t, out}.go(root, 0);
    return out;
}

struct LevelRootCollector {
    const PlaneTree& t;
    std::int32_t cut;
    std::vector<std::int32_t> roots;
    void go(std::int32_t v, std::int32_t d) {
        if (d == cut) {
            roots.push_back(v);
            return;
        }
        for (auto c : t.kids[v]) go(c, d + 1);
    }
};
}  // namespace

ReverseForest ball(const ReverseForest& f, std::int32_t j) {
    if (j > f.height || j < 0) throw std::invalid_argument("ball: bad radius");
    ReverseForest out;
    out.height = j;
    out.dist_tree = -1;
    std::int32_t cut = f.height - j;
    for (std::int32_t ti = 0; ti < f.tree_count(); ++ti) {
        const PlaneTree& t = f.trees[ti];
        LevelRootCollector rec{t, cut, {}};
        rec.go(0, 0);
        // node on the distinguished path at depth cut, if this is the tree
        std::int32_t path_node = -1;
        if (ti == f.dist_tree) {
            std::int32_t v = 0;
            for (std::int32_t k = 0; k < cut; ++k) v = t.kids[v][f.dist_path[k]];
            path_node = v;
        }
        for (auto rt : rec.roots) {
            out.trees.push_back(subtree(t, rt));
            if (rt == path_node && ti == f.dist_tree) {
                out.dist_tree = out.tree_count() - 1;
                out.dist_path.assign(f.dist_path.begin() + cut, f.dist_path.end());
            }
        }
    }
    if (out.dist_tree < 0) throw std::logic_error("ball: lost the distinguished vertex");
    return out;
}

ReverseForest rotate_to_admissible(const ReverseForest& f) {
    ReverseForest out;
    out.height = f.height;
    std::int32_t q = f.tree_count();
    for (std::int32_t i = 0; i < q; ++i) out.trees.push_back(f.trees[(f.dist_tree + i) % q]);
    out.dist_tree = 0;
    out.dist_path = f.dist_path;
    return out;
}

ReverseForest reordered_ball(const ReverseForest& f, std::int32_t j) {
    return rotate_to_admissible(ball(f, j));
}

PlaneTree u_tree(const ReverseForest& f, const std::vector<std::int32_t>& blocks) {
    std::int32_t q = f.tree_count(), r = f.height;
    std::int32_t sum = 0;
    for (auto b : blocks) {
        if (b <= 0) throw std::invalid_argument("u_tree: empty block");
        sum += b;
    }
    if (sum != q) throw std::invalid_argument("u_tree: blocks do not partition the forest");
    std::int32_t ell = std::int32_t(blocks.size());
    std::vector<std::int32_t> h(ell, 0);
    std::int32_t t0 = 0;
    for (std::int32_t j = 0; j < ell; ++j) {
        for (std::int32_t t = t0; t < t0 + blocks[j]; ++t)
            h[j] = std::max(h[j], f.trees[t].height());
        t0 += blocks[j];
    }
    if (h[0] != r) throw std::invalid_argument("u_tree: first block does not reach height r");
    PlaneTree u;
    std::vector<std::vector<std::int32_t>> id(ell);
    for (std::int32_t j = 0; j < ell; ++j) id[j].assign(r + 1, -1);
    u.kids.push_back({});
    id[0][0] = 0;
    for (std::int32_t i = 1; i <= r; ++i) {
        for (std::int32_t j = 0; j < ell; ++j) {
            if (i < r - h[j]) continue;
            u.kids.push_back({});
            std::int32_t v = std::int32_t(u.kids.size()) - 1;
            id[j][i] = v;
            std::int32_t pj = j;
            if (i == r - h[j]) {
                pj = j - 1;
                while (pj >= 0 && h[pj] < r - i + 1) --pj;
                if (pj < 0) throw std::logic_error("u_tree: no parent block found");
            }
            u.kids[id[pj][i - 1]].push_back(v);
        }
    }
    return u;
}

std::vector<std::int32_t> block_heights_from_u(const PlaneTree& u, std::int32_t r) {
    auto depth = u.depths();
    std::vector<std::int32_t> parent(u.kids.size(), -1), rank(u.kids.size(), 0);
    for (std::size_t v = 0; v < u.kids.size(); ++v)
        for (std::size_t c = 0; c < u.kids[v].size(); ++c) {
            parent[u.kids[v][c]] = std::int32_t(v);
            rank[u.kids[v][c]] = std::int32_t(c);
        }
    std::vector<std::int32_t> leaves;
    struct Rec {
        const PlaneTree& u;
        const std::vector<std::int32_t>& depth;
        std::int32_t r;
        std::vector<std::int32_t>& leaves;
        void go(std::int32_t v) {
            if (u.kids[v].empty()) {
                if (depth[v] != r) throw std::invalid_argument("u tree has a short leaf");
                leaves.push_back(v);
                return;
            }
            for (auto c : u.kids[v]) go(c);
        }
    } rec{u, depth, r, leaves};
    rec.go(0);
    std::vector<std::int32_t> h;
    for (std::size_t j = 0; j < leaves.size(); ++j) {
        if (j == 0) {
            h.push_back(r);
            continue;
        }
        std::int32_t v = leaves[j];
        while (v != 0 && rank[v] == 0) v = parent[v];
        h.push_back(r - depth[v]);
    }
    return h;
}

std::string forest_to_text(const ReverseForest& f) {
    std::ostringstream out;
    out << "hypermap-forest 1\n";
    out << "height " << f.height << " trees " << f.tree_count() << " dist " << f.dist_tree;
    for (auto c : f.dist_path) out << " " << c;
    out << "\n";
    for (const auto& t : f.trees) out << t.parenthesized() << "\n";
    return out.str();
}

ReverseForest forest_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    int version;
    in >> tag >> version;
    if (tag != "hypermap-forest" || version != 1)
        throw std::runtime_error("forest_from_text: bad header");
    std::string kw;
    ReverseForest f;
    std::int32_t q;
    in >> kw >> f.height >> kw >> q >> kw >> f.dist_tree;
    std::string rest;
    std::getline(in, rest);
    {
        std::istringstream rs(rest);
        std::int32_t c;
        while (rs >> c) f.dist_path.push_back(c);
    }
    for (std::int32_t i = 0; i < q; ++i) {
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error("forest_from_text: truncated");
        f.trees.push_back(PlaneTree::from_parenthesized(line));
    }
    check_pre_admissible(f);
    return f;
}

}  // namespace hypermap
