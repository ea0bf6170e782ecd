#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qsspi {

// Square row-major grid. Sides are small powers of two throughout the
// library, but Grid itself only requires side > 0.
template <typename T>
class Grid {
 public:
  Grid() = default;
  explicit Grid(int side, T fill = T{})
      : side_(side),
        cells_(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), fill) {
    assert(side > 0);
  }

  int side() const { return side_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  T& operator()(int row, int col) { return cells_[index(row, col)]; }
  const T& operator()(int row, int col) const { return cells_[index(row, col)]; }

  // Linear row-major access.
  T& operator[](std::size_t i) { return cells_[i]; }
  const T& operator[](std::size_t i) const { return cells_[i]; }

  auto begin() { return cells_.begin(); }
  auto end() { return cells_.end(); }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  const std::vector<T>& cells() const { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int row, int col) const {
    assert(row >= 0 && row < side_ && col >= 0 && col < side_);
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(side_) +
           static_cast<std::size_t>(col);
  }

  int side_ = 0;
  std::vector<T> cells_;
};

using ImageGrid = Grid<double>;
using ByteGrid = Grid<std::uint8_t>;

}  // namespace qsspi
