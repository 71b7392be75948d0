#include "gaugewalk/lattice.hpp"

#include <sstream>

#include "gaugewalk/error.hpp"

namespace gaugewalk {

LatticeWindow::LatticeWindow(std::vector<int> extents, Boundary boundary, bool time_axis)
    : extents_(std::move(extents)), time_(time_axis) {
  boundary_.assign(extents_.size(), boundary);
  init();
}

LatticeWindow::LatticeWindow(std::vector<int> extents, std::vector<Boundary> boundary,
                             std::vector<int> origin, bool time_axis)
    : extents_(std::move(extents)), boundary_(std::move(boundary)), origin_(std::move(origin)),
      time_(time_axis) {
  if (boundary_.size() == 1 && extents_.size() > 1) boundary_.assign(extents_.size(), boundary_[0]);
  init();
}

void LatticeWindow::init() {
  if (extents_.empty()) raise(ErrorCode::InvalidArgument, "window needs at least one axis");
  if (extents_.size() > 16) raise(ErrorCode::InvalidArgument, "at most 16 axes are supported");
  if (boundary_.size() != extents_.size())
    raise(ErrorCode::InvalidArgument, "boundary list does not match the number of axes");
  if (origin_.empty()) origin_.assign(extents_.size(), 0);
  if (origin_.size() != extents_.size())
    raise(ErrorCode::InvalidArgument, "origin does not match the number of axes");
  strides_.resize(extents_.size());
  size_ = 1;
  for (std::size_t a = 0; a < extents_.size(); ++a) {
    if (extents_[a] < 1) raise(ErrorCode::InvalidArgument, "extents must be positive");
    strides_[a] = size_;
    size_ *= static_cast<std::size_t>(extents_[a]);
  }
}

bool LatticeWindow::any_periodic() const noexcept {
  for (auto b : boundary_)
    if (b == Boundary::torus) return true;
  return false;
}

bool LatticeWindow::all_periodic() const noexcept {
  for (auto b : boundary_)
    if (b != Boundary::torus) return false;
  return true;
}

std::size_t LatticeWindow::index(const Site& x) const {
  if (x.size() != extents_.size()) raise(ErrorCode::InvalidArgument, "site has wrong dimension");
  std::size_t idx = 0;
  for (std::size_t a = 0; a < extents_.size(); ++a) {
    int c = x[a];
    if (boundary_[a] == Boundary::torus) {
      c %= extents_[a];
      if (c < 0) c += extents_[a];
    } else if (c < 0 || c >= extents_[a]) {
      raise(ErrorCode::WindowUnderflow, "site outside open window");
    }
    idx += strides_[a] * static_cast<std::size_t>(c);
  }
  return idx;
}

Site LatticeWindow::coords(std::size_t index) const {
  Site x(extents_.size());
  for (std::size_t a = 0; a < extents_.size(); ++a) x[a] = coord(index, static_cast<int>(a));
  return x;
}

bool LatticeWindow::contains(const Site& x) const {
  if (x.size() != extents_.size()) return false;
  for (std::size_t a = 0; a < extents_.size(); ++a)
    if (boundary_[a] == Boundary::open && (x[a] < 0 || x[a] >= extents_[a])) return false;
  return true;
}

std::optional<std::size_t> LatticeWindow::step(std::size_t index, int axis, int dir) const {
  const int c = coord(index, axis);
  const int L = extents_[axis];
  int n = c + dir;
  if (n < 0 || n >= L) {
    if (boundary_[axis] == Boundary::open) return std::nullopt;
    n = ((n % L) + L) % L;
  }
  return index + static_cast<std::size_t>(n) * strides_[axis] - static_cast<std::size_t>(c) * strides_[axis];
}

int LatticeWindow::axis_of(int lbl) const {
  const int axis = time_ ? lbl : lbl - 1;
  if (axis < 0 || axis >= dims())
    raise(ErrorCode::AxisOutOfRange, "direction " + std::to_string(lbl) + " is not an axis of this window");
  return axis;
}

LatticeWindow LatticeWindow::spatial() const {
  if (!time_) return *this;
  if (dims() == 1) raise(ErrorCode::InvalidArgument, "window has no spatial axes");
  return LatticeWindow(std::vector<int>(extents_.begin() + 1, extents_.end()),
                       std::vector<Boundary>(boundary_.begin() + 1, boundary_.end()),
                       std::vector<int>(origin_.begin() + 1, origin_.end()), false);
}

LatticeWindow LatticeWindow::with_time(int extent, Boundary boundary) const {
  if (time_) raise(ErrorCode::InvalidArgument, "window already has a time axis");
  std::vector<int> e{extent};
  e.insert(e.end(), extents_.begin(), extents_.end());
  std::vector<Boundary> b{boundary};
  b.insert(b.end(), boundary_.begin(), boundary_.end());
  std::vector<int> o{0};
  o.insert(o.end(), origin_.begin(), origin_.end());
  return LatticeWindow(std::move(e), std::move(b), std::move(o), true);
}

std::string LatticeWindow::describe() const {
  std::ostringstream os;
  for (int a = 0; a < dims(); ++a) {
    if (a) os << 'x';
    os << extents_[a] << (boundary_[a] == Boundary::torus ? "p" : "");
  }
  if (time_) os << " (time axis 0)";
  return os.str();
}

}  // namespace gaugewalk
