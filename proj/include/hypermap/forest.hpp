// forest.hpp — plane trees and (p,q,r)-admissible reverse forests.
// Reverse height of a node at depth d in a forest of height r is r - d; the
// distinguished vertex sits at reverse height 0.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypermap {

struct PlaneTree {
    // node 0 is the root; children ordered left to right
    std::vector<std::vector<std::int32_t>> kids;

    std::int32_t size() const { return std::int32_t(kids.size()); }
    std::int32_t height() const;
    std::vector<std::int32_t> depths() const;
    std::string parenthesized() const;          // canonical form, e.g. "(()())"
    static PlaneTree from_parenthesized(const std::string& s);
    bool operator==(const PlaneTree&) const = default;
};

struct ReverseForest {
    std::vector<PlaneTree> trees;
    std::int32_t height = 0;               // r; max tree height must equal r
    std::int32_t dist_tree = -1;            // tree containing the distinguished vertex
    std::vector<std::int32_t> dist_path;    // child indices root -> distinguished (length r)

    std::int32_t tree_count() const { return std::int32_t(trees.size()); }
    std::int32_t total_nodes() const;
    std::int32_t dist_node() const;         // node id of the distinguished vertex
    bool admissible() const;                // distinguished in first tree
    std::int32_t bottom_count() const;      // number of vertices at reverse height 0

    // global node ids: trees in order, preorder within each tree
    std::int32_t global_id(std::int32_t tree, std::int32_t node) const;
    std::pair<std::int32_t, std::int32_t> from_global(std::int32_t gid) const;

    // vertices at reverse height j (depth height-j), left to right, as global ids
    std::vector<std::int32_t> level(std::int32_t rev_height) const;
    std::int32_t child_count(std::int32_t gid) const;

    bool operator==(const ReverseForest&) const = default;
};

// Checks the (p,q,r)-pre-admissibility invariants; throws on failure.
void check_pre_admissible(const ReverseForest& f);

// B_j: forest of descendant trees of the vertices at reverse height j, with the
// distinguished vertex carried along. B'_j additionally rotates the trees so
// the distinguished vertex's tree comes first.
ReverseForest ball(const ReverseForest& f, std::int32_t j);
ReverseForest reordered_ball(const ReverseForest& f, std::int32_t j);
ReverseForest rotate_to_admissible(const ReverseForest& f);

// The finite analog of the tree U(f): vertices (block j, level i), heights
// matching reverse heights. blocks[j] = number of consecutive trees in block j.
PlaneTree u_tree(const ReverseForest& f, const std::vector<std::int32_t>& blocks);

// Heights h(f_j) read back from a u-tree of height r (leftmost-child rule).
std::vector<std::int32_t> block_heights_from_u(const PlaneTree& u, std::int32_t r);

std::string forest_to_text(const ReverseForest& f);
ReverseForest forest_from_text(const std::string& text);

}  // namespace hypermap
