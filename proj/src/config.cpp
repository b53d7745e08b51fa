#include "squares/config.hpp"

#include <algorithm>
#include <queue>

namespace sq {

Config Config::from_cells(const std::vector<Cell>& cells) {
    Config c(false);
    for (const Cell& cell : cells) c.add(cell);
    return c;
}

Config Config::from_labeled(const std::vector<std::pair<int, Cell>>& items) {
    Config c(true);
    for (const auto& [label, cell] : items) c.add(cell, label);
    return c;
}

int Config::label_at(const Cell& c) const {
    if (!labeled_) return -1;
    auto it = cell_to_label_.find(c);
    return it == cell_to_label_.end() ? -1 : it->second;
}

std::optional<Cell> Config::cell_of(int label) const {
    auto it = label_to_cell_.find(label);
    if (it == label_to_cell_.end()) return std::nullopt;
    return it->second;
}

void Config::add(const Cell& c) {
    if (labeled_) throw std::logic_error("labelled configuration needs a label");
    if (!cells_.insert(c).second) throw std::logic_error("cell already occupied: " + to_string(c));
}

void Config::add(const Cell& c, int label) {
    if (!labeled_) throw std::logic_error("unlabelled configuration cannot take labels");
    if (label < 0) throw std::logic_error("labels must be non-negative");
    if (label_to_cell_.count(label)) throw std::logic_error("duplicate label " + std::to_string(label));
    if (!cells_.insert(c).second) throw std::logic_error("cell already occupied: " + to_string(c));
    label_to_cell_[label] = c;
    cell_to_label_[c] = label;
}

void Config::remove(const Cell& c) {
    if (!cells_.erase(c)) throw std::logic_error("cell not occupied: " + to_string(c));
    if (labeled_) {
        auto it = cell_to_label_.find(c);
        label_to_cell_.erase(it->second);
        cell_to_label_.erase(it);
    }
}

void Config::relocate(const Cell& from, const Cell& to) {
    if (from == to) return;
    if (!cells_.count(from)) throw std::logic_error("relocate source not occupied");
    if (cells_.count(to)) throw std::logic_error("relocate target occupied");
    cells_.erase(from);
    cells_.insert(to);
    if (labeled_) {
        int label = cell_to_label_.at(from);
        cell_to_label_.erase(from);
        cell_to_label_[to] = label;
        label_to_cell_[label] = to;
    }
}

Config Config::silhouette() const {
    Config c(false);
    c.cells_ = cells_;
    return c;
}

Config Config::translated(const Cell& delta) const {
    Config c(labeled_);
    for (const Cell& cell : cells_) c.cells_.insert(cell + delta);
    if (labeled_) {
        for (const auto& [label, cell] : label_to_cell_) {
            c.label_to_cell_[label] = cell + delta;
            c.cell_to_label_[cell + delta] = label;
        }
    }
    return c;
}

Box Config::bounding_box() const { return sq::bounding_box(cells_); }

bool Config::connected() const { return is_connected(cells_); }

bool Config::same_as(const Config& o) const {
    if (labeled_ != o.labeled_) return false;
    if (cells_.size() != o.cells_.size()) return false;
    if (labeled_) {
        for (const auto& [label, cell] : label_to_cell_) {
            auto it = o.label_to_cell_.find(label);
            if (it == o.label_to_cell_.end() || it->second != cell) return false;
        }
        return true;
    }
    for (const Cell& c : cells_)
        if (!o.cells_.count(c)) return false;
    return true;
}

std::vector<Cell> Config::sorted_cells() const { return sq::sorted_cells(cells_); }

bool is_connected(const CellSet& cells) {
    if (cells.empty()) return true;
    CellSet seen;
    std::vector<Cell> stack{*cells.begin()};
    seen.insert(stack.back());
    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        for (const Cell& n : neighbors4(c)) {
            if (cells.count(n) && seen.insert(n).second) stack.push_back(n);
        }
    }
    return seen.size() == cells.size();
}

std::vector<CellSet> connected_components(const CellSet& cells) {
    std::vector<CellSet> comps;
    CellSet seen;
    for (const Cell& start : sorted_cells(cells)) {
        if (seen.count(start)) continue;
        CellSet comp;
        std::vector<Cell> stack{start};
        seen.insert(start);
        comp.insert(start);
        while (!stack.empty()) {
            Cell c = stack.back();
            stack.pop_back();
            for (const Cell& n : neighbors4(c)) {
                if (cells.count(n) && seen.insert(n).second) {
                    comp.insert(n);
                    stack.push_back(n);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

Box bounding_box(const CellSet& cells) {
    Box b;
    for (const Cell& c : cells) b.include(c);
    return b;
}

std::vector<Cell> sorted_cells(const CellSet& cells) {
    std::vector<Cell> v(cells.begin(), cells.end());
    std::sort(v.begin(), v.end());
    return v;
}

bool is_free_backbone(const CellSet& config, const CellSet& moving) {
    CellSet rest;
    rest.reserve(config.size());
    for (const Cell& c : config)
        if (!moving.count(c)) rest.insert(c);
    if (rest.empty()) return false;
    return is_connected(rest);
}

bool is_free_subsets(const CellSet& config, const CellSet& moving) {
    std::vector<Cell> mv = sorted_cells(moving);
    if (mv.size() > 24) throw std::logic_error("subset freeness check is limited to small sets");
    for (uint32_t mask = 1; mask < (1u << mv.size()); ++mask) {
        CellSet rest = config;
        for (size_t i = 0; i < mv.size(); ++i)
            if (mask & (1u << i)) rest.erase(mv[i]);
        if (!is_connected(rest)) return false;
    }
    return true;
}

}  // namespace sq
