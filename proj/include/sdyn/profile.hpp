#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sdyn {

/// Per-agent attachment strength toward the initial opinion.
///
/// Levels are in [0, inf]: 0 means non-stubborn, a positive finite value
/// is a partially stubborn agent, and +infinity marks a fully stubborn
/// agent whose opinion never moves. Infinity is a distinct marker here,
/// never an approximation knob.
class StubbornnessProfile {
 public:
  explicit StubbornnessProfile(int n) : levels_(n, 0.0) {
    if (n < 1) throw std::invalid_argument("profile: need at least one agent");
  }

  static StubbornnessProfile none(int n) { return StubbornnessProfile(n); }

  int size() const { return static_cast<int>(levels_.size()); }

  void set(int i, double k) {
    check_index(i);
    if (std::isnan(k) || k < 0.0) throw std::invalid_argument("profile: level must be >= 0");
    levels_[i] = k;
  }

  void set_fully_stubborn(int i) { set(i, std::numeric_limits<double>::infinity()); }

  /// May be +infinity.
  double level(int i) const {
    check_index(i);
    return levels_[i];
  }

  bool is_stubborn(int i) const { return level(i) > 0.0; }
  bool is_fully_stubborn(int i) const { return std::isinf(level(i)); }
  bool is_partially_stubborn(int i) const { return is_stubborn(i) && !is_fully_stubborn(i); }

  bool any_stubborn() const {
    for (int i = 0; i < size(); ++i)
      if (is_stubborn(i)) return true;
    return false;
  }

  std::vector<int> stubborn() const { return collect([this](int i) { return is_stubborn(i); }); }
  std::vector<int> partially_stubborn() const {
    return collect([this](int i) { return is_partially_stubborn(i); });
  }
  std::vector<int> fully_stubborn() const {
    return collect([this](int i) { return is_fully_stubborn(i); });
  }

  double partial_level_sum() const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i)
      if (is_partially_stubborn(i)) s += levels_[i];
    return s;
  }

  friend bool operator==(const StubbornnessProfile&, const StubbornnessProfile&) = default;

 private:
  template <typename Pred>
  std::vector<int> collect(Pred pred) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (pred(i)) out.push_back(i);
    return out;
  }

  void check_index(int i) const {
    if (i < 0 || i >= size()) throw std::invalid_argument("profile: agent id out of range");
  }

  std::vector<double> levels_;
};

}  // namespace sdyn
