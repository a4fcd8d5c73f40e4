#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lattile/poset.hpp"

namespace lattile {

/// Exact cover by dancing links (Algorithm X). Columns are ground
/// elements; rows are candidate sets. Column choice is most-constrained
/// first with ties broken by smallest column index. An optional hole
/// budget allows leaving up to that many columns uncovered.
class ExactCover {
 public:
  explicit ExactCover(int n_columns) : ncols_(n_columns) {
    // node 0..ncols-1 are column headers; node ncols is the root
    int root = ncols_;
    nodes_.resize(static_cast<size_t>(ncols_) + 1);
    for (int c = 0; c <= ncols_; ++c) {
      nodes_[static_cast<size_t>(c)] = {c, c, c, c, c, 0};
    }
    for (int c = 0; c < ncols_; ++c) {
      nodes_[static_cast<size_t>(c)].left = c == 0 ? root : c - 1;
      nodes_[static_cast<size_t>(c)].right = c == ncols_ - 1 ? root : c + 1;
    }
    nodes_[static_cast<size_t>(root)].left = ncols_ - 1;
    nodes_[static_cast<size_t>(root)].right = 0;
  }

  void add_row(const std::vector<int>& cols) {
    if (cols.empty()) throw std::invalid_argument("empty exact-cover row");
    int first = -1;
    for (int c : cols) {
      if (c < 0 || c >= ncols_) throw std::invalid_argument("exact-cover column out of range");
      int node = static_cast<int>(nodes_.size());
      Node nd;
      nd.col = c;
      nd.row = static_cast<int>(row_count_);
      // vertical insertion above the column header
      nd.up = nodes_[static_cast<size_t>(c)].up;
      nd.down = c;
      nodes_[static_cast<size_t>(nd.up)].down = node;
      nodes_[static_cast<size_t>(c)].up = node;
      ++nodes_[static_cast<size_t>(c)].size;
      if (first < 0) {
        nd.left = node;
        nd.right = node;
      } else {
        nd.left = nodes_[static_cast<size_t>(first)].left;
        nd.right = first;
        nodes_[static_cast<size_t>(nd.left)].right = node;
        nodes_[static_cast<size_t>(first)].left = node;
      }
      nodes_.push_back(nd);
      if (first < 0) first = node;
    }
    ++row_count_;
  }

  std::uint64_t row_count() const { return row_count_; }

  struct Result {
    std::optional<std::vector<int>> rows;   // selected row ids
    std::vector<int> holes;                 // columns left uncovered
    bool exhausted = false;                 // search space fully explored
    std::uint64_t nodes_visited = 0;
  };

  /// Search for a cover leaving at most `hole_budget` columns uncovered.
  Result solve(int hole_budget = 0, std::uint64_t node_budget = 50'000'000) {
    Result res;
    sol_.clear();
    holes_.clear();
    nodes_visited_ = 0;
    node_budget_ = node_budget;
    budget_hit_ = false;
    bool found = search(hole_budget);
    res.nodes_visited = nodes_visited_;
    res.exhausted = !budget_hit_;
    if (found) {
      res.rows = sol_;
      res.holes = holes_;
    } else if (budget_hit_) {
      throw budget_error("exact-cover search exceeded the node budget");
    }
    return res;
  }

 private:
  struct Node {
    int left = 0, right = 0, up = 0, down = 0;
    int col = 0;
    union {
      int size;  // for headers
      int row;   // for row nodes
    };
  };

  int ncols_;
  std::vector<Node> nodes_;
  std::uint64_t row_count_ = 0;
  std::vector<int> sol_, holes_;
  std::uint64_t nodes_visited_ = 0, node_budget_ = 0;
  bool budget_hit_ = false;

  int root() const { return ncols_; }

  void cover(int c) {
    Node& hc = nodes_[static_cast<size_t>(c)];
    nodes_[static_cast<size_t>(hc.right)].left = hc.left;
    nodes_[static_cast<size_t>(hc.left)].right = hc.right;
    for (int i = hc.down; i != c; i = nodes_[static_cast<size_t>(i)].down)
      for (int j = nodes_[static_cast<size_t>(i)].right; j != i; j = nodes_[static_cast<size_t>(j)].right) {
        Node& nj = nodes_[static_cast<size_t>(j)];
        nodes_[static_cast<size_t>(nj.down)].up = nj.up;
        nodes_[static_cast<size_t>(nj.up)].down = nj.down;
        --nodes_[static_cast<size_t>(nj.col)].size;
      }
  }

  void uncover(int c) {
    Node& hc = nodes_[static_cast<size_t>(c)];
    for (int i = hc.up; i != c; i = nodes_[static_cast<size_t>(i)].up)
      for (int j = nodes_[static_cast<size_t>(i)].left; j != i; j = nodes_[static_cast<size_t>(j)].left) {
        Node& nj = nodes_[static_cast<size_t>(j)];
        ++nodes_[static_cast<size_t>(nj.col)].size;
        nodes_[static_cast<size_t>(nj.down)].up = j;
        nodes_[static_cast<size_t>(nj.up)].down = j;
      }
    nodes_[static_cast<size_t>(hc.right)].left = c;
    nodes_[static_cast<size_t>(hc.left)].right = c;
  }

  bool search(int hole_budget) {
    if (++nodes_visited_ > node_budget_) {
      budget_hit_ = true;
      return false;
    }
    int r = root();
    if (nodes_[static_cast<size_t>(r)].right == r) return true;
    // most-constrained column, smallest index on ties
    int best = -1, best_size = -1;
    for (int c = nodes_[static_cast<size_t>(r)].right; c != r; c = nodes_[static_cast<size_t>(c)].right)
      if (best < 0 || nodes_[static_cast<size_t>(c)].size < best_size) {
        best = c;
        best_size = nodes_[static_cast<size_t>(c)].size;
      }
    cover(best);
    for (int i = nodes_[static_cast<size_t>(best)].down; i != best;
         i = nodes_[static_cast<size_t>(i)].down) {
      sol_.push_back(nodes_[static_cast<size_t>(i)].row);
      for (int j = nodes_[static_cast<size_t>(i)].right; j != i; j = nodes_[static_cast<size_t>(j)].right)
        cover(nodes_[static_cast<size_t>(j)].col);
      if (search(hole_budget)) return true;
      for (int j = nodes_[static_cast<size_t>(i)].left; j != i; j = nodes_[static_cast<size_t>(j)].left)
        uncover(nodes_[static_cast<size_t>(j)].col);
      sol_.pop_back();
      if (budget_hit_) break;
    }
    uncover(best);
    if (!budget_hit_ && hole_budget > 0) {
      // leave this element uncovered: no row through it may be selected
      cover(best);
      holes_.push_back(best);
      if (search(hole_budget - 1)) return true;
      holes_.pop_back();
      uncover(best);
    }
    return false;
  }
};

}  // namespace lattile
