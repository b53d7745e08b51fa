#pragma once
// Configurations: finite sets of occupied cells, optionally labelled.

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "squares/geom.hpp"

namespace sq {

using CellSet = std::unordered_set<Cell, CellHash>;
template <typename V>
using CellMap = std::unordered_map<Cell, V, CellHash>;

// A configuration is a finite set of occupied cells.  In labelled mode every
// cell additionally carries a distinct non-negative integer label.
class Config {
public:
    Config() = default;
    explicit Config(bool labeled) : labeled_(labeled) {}

    static Config from_cells(const std::vector<Cell>& cells);
    static Config from_labeled(const std::vector<std::pair<int, Cell>>& items);

    bool labeled() const { return labeled_; }
    size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    bool occupied(const Cell& c) const { return cells_.count(c) != 0; }
    const CellSet& cells() const { return cells_; }

    // Labelled access.  label_at returns -1 for unlabelled configurations.
    int label_at(const Cell& c) const;
    std::optional<Cell> cell_of(int label) const;
    const std::unordered_map<int, Cell>& labels() const { return label_to_cell_; }

    void add(const Cell& c);
    void add(const Cell& c, int label);
    void remove(const Cell& c);
    // Move a module between cells, carrying its label if any.
    void relocate(const Cell& from, const Cell& to);

    // Forget labels.
    Config silhouette() const;
    Config translated(const Cell& delta) const;

    Box bounding_box() const;
    bool connected() const;

    // Equality: same occupied cells; labelled configurations must also agree
    // on the labelling.
    bool same_as(const Config& o) const;

    // Cells in deterministic (lexicographic) order.
    std::vector<Cell> sorted_cells() const;

private:
    bool labeled_ = false;
    CellSet cells_;
    std::unordered_map<int, Cell> label_to_cell_;
    CellMap<int> cell_to_label_;
};

// Connectivity of an arbitrary cell set under edge adjacency.
bool is_connected(const CellSet& cells);
std::vector<CellSet> connected_components(const CellSet& cells);
Box bounding_box(const CellSet& cells);
std::vector<Cell> sorted_cells(const CellSet& cells);

// Backbone freeness: C \ M is connected and non-empty.
bool is_free_backbone(const CellSet& config, const CellSet& moving);
// Subset-quantified freeness: C \ M' is connected for every non-empty
// M' subseteq M.  Exponential in |M|; intended for small M only.
bool is_free_subsets(const CellSet& config, const CellSet& moving);

}  // namespace sq
