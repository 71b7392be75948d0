#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gaugewalk {

enum class Boundary { open, torus };

using Site = std::vector<int>;

/// Finite box of Z^n. Axis 0 is fastest in the linear site index.
/// With a time axis, internal axis 0 carries label 0 and space axes carry
/// labels 1..s; without one, internal axis a carries label a+1.
class LatticeWindow {
 public:
  LatticeWindow() = default;
  LatticeWindow(std::vector<int> extents, Boundary boundary, bool time_axis = false);
  LatticeWindow(std::vector<int> extents, std::vector<Boundary> boundary,
                std::vector<int> origin = {}, bool time_axis = false);

  int dims() const noexcept { return static_cast<int>(extents_.size()); }
  int space_dims() const noexcept { return dims() - (time_ ? 1 : 0); }
  bool has_time() const noexcept { return time_; }

  int extent(int axis) const { return extents_.at(axis); }
  const std::vector<int>& extents() const noexcept { return extents_; }
  Boundary boundary(int axis) const { return boundary_.at(axis); }
  const std::vector<Boundary>& boundaries() const noexcept { return boundary_; }
  bool periodic(int axis) const { return boundary_.at(axis) == Boundary::torus; }
  bool any_periodic() const noexcept;
  bool all_periodic() const noexcept;
  const std::vector<int>& origin() const noexcept { return origin_; }

  std::size_t size() const noexcept { return size_; }
  std::size_t stride(int axis) const { return strides_.at(axis); }

  std::size_t index(const Site& x) const;
  Site coords(std::size_t index) const;
  int coord(std::size_t index, int axis) const {
    return static_cast<int>((index / strides_[axis]) % static_cast<std::size_t>(extents_[axis]));
  }
  bool contains(const Site& x) const;

  /// Neighbour in direction dir (+1/-1), wrapping on periodic axes.
  std::optional<std::size_t> step(std::size_t index, int axis, int dir) const;
  /// True when the +1 link leaving this site along axis wraps around.
  bool is_wrap_link(std::size_t index, int axis) const {
    return coord(index, axis) == extents_[axis] - 1;
  }

  double position(std::size_t index, int axis) const { return coord(index, axis) + origin_[axis]; }

  int label(int axis) const { return time_ ? axis : axis + 1; }
  /// Internal axis for a label; AxisOutOfRange on failure.
  int axis_of(int label) const;

  /// Window with the time axis removed.
  LatticeWindow spatial() const;
  /// Window with a time axis of the given extent prepended.
  LatticeWindow with_time(int extent, Boundary boundary) const;

  std::string describe() const;

  friend bool operator==(const LatticeWindow& a, const LatticeWindow& b) {
    return a.extents_ == b.extents_ && a.boundary_ == b.boundary_ && a.origin_ == b.origin_ &&
           a.time_ == b.time_;
  }
  friend bool operator!=(const LatticeWindow& a, const LatticeWindow& b) { return !(a == b); }

 private:
  void init();

  std::vector<int> extents_;
  std::vector<Boundary> boundary_;
  std::vector<int> origin_;
  bool time_ = false;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

}  // namespace gaugewalk
