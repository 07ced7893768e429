#pragma once

#include "actlab/types.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace actlab {

// Moore neighborhood offsets in row-major scan order. Every neighbor
// enumeration in the engine and the models uses this fixed order, so random
// choices among neighbors are reproducible from the documented draw alone.
inline constexpr std::array<GridPos, 8> kMooreOffsets = {{
    {-1, -1}, {-1, 0}, {-1, 1},
    {0, -1},           {0, 1},
    {1, -1},  {1, 0},  {1, 1},
}};

// Von Neumann offsets, also row-major: N, W, E, S.
inline constexpr std::array<GridPos, 4> kVonNeumannOffsets = {{
    {-1, 0},
    {0, -1}, {0, 1},
    {1, 0},
}};

template <typename Cell>
class TorusGrid {
public:
    TorusGrid() = default;
    TorusGrid(int width, int height, Cell fill)
        : width_(width), height_(height), cells_(static_cast<std::size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return cells_.size(); }

    GridPos wrap(GridPos p) const {
        int r = p.row % height_;
        int c = p.col % width_;
        if (r < 0) r += height_;
        if (c < 0) c += width_;
        return {r, c};
    }

    std::size_t index_of(GridPos p) const {
        const GridPos w = wrap(p);
        return static_cast<std::size_t>(w.row) * width_ + w.col;
    }

    GridPos pos_of(std::size_t index) const {
        return {static_cast<int>(index) / width_, static_cast<int>(index) % width_};
    }

    Cell& at(GridPos p) { return cells_[index_of(p)]; }
    const Cell& at(GridPos p) const { return cells_[index_of(p)]; }

    const std::vector<Cell>& cells() const { return cells_; }
    std::vector<Cell>& cells() { return cells_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Cell> cells_;
};

// Tracks the set of vacant cells of a grid and answers "k-th vacant cell in
// row-major scan order" via a Fenwick tree. Target cells for relocation and
// placement are always specified that way, which keeps the draw semantics
// independent of movement history.
class VacancyIndex {
public:
    VacancyIndex() = default;
    // Starts with every cell vacant.
    explicit VacancyIndex(std::size_t cell_count)
        : tree_(cell_count + 1, 0), vacant_(cell_count, true), count_(cell_count) {
        top_bit_ = 1;
        while ((top_bit_ << 1) <= cell_count) top_bit_ <<= 1;
        for (std::size_t i = 0; i < cell_count; ++i) add(i, 1);
    }

    std::size_t vacant_count() const { return count_; }
    bool is_vacant(std::size_t cell) const { return vacant_[cell]; }

    void occupy(std::size_t cell) {
        if (!vacant_[cell]) return;
        vacant_[cell] = false;
        add(cell, -1);
        --count_;
    }

    void release(std::size_t cell) {
        if (vacant_[cell]) return;
        vacant_[cell] = true;
        add(cell, +1);
        ++count_;
    }

    // Row-major index of the (k+1)-th vacant cell, k in [0, vacant_count()).
    std::size_t select(std::size_t k) const {
        std::size_t pos = 0;
        std::size_t remaining = k + 1;
        std::size_t mask = top_bit_;
        while (mask != 0) {
            const std::size_t next = pos + mask;
            if (next < tree_.size() && static_cast<std::size_t>(tree_[next]) < remaining) {
                pos = next;
                remaining -= static_cast<std::size_t>(tree_[next]);
            }
            mask >>= 1;
        }
        return pos; // tree is 1-based; pos is the 0-based cell index
    }

private:
    void add(std::size_t cell, int delta) {
        for (std::size_t i = cell + 1; i < tree_.size(); i += i & (~i + 1)) {
            tree_[i] += delta;
        }
    }

    std::vector<int> tree_; // 1-based Fenwick tree of vacancy indicators
    std::vector<bool> vacant_;
    std::size_t count_ = 0;
    std::size_t top_bit_ = 0;
};

} // namespace actlab
