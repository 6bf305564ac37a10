#pragma once

#include <string>
#include <vector>

#include "smoothed/geometry.hpp"
#include "smoothed/log_scaled.hpp"

namespace smoothed {

/// A lottery: per-item allocation probabilities and a price.
struct MenuEntry {
  Vector allocation;
  LogScaled price;

  double linear_price() const { return price.linear(); }
};

/// Menu of lotteries. The null entry (nothing, price 0) is always available
/// and is not stored.
class Menu {
 public:
  static constexpr long kNull = -1;

  Menu() = default;
  explicit Menu(std::size_t m) : m_(m) {}

  std::size_t items() const { return m_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<MenuEntry>& entries() const { return entries_; }
  const MenuEntry& operator[](std::size_t i) const { return entries_[i]; }

  /// Throws std::invalid_argument for allocations outside [0, 1] or a
  /// negative price.
  void add(Vector allocation, double price);
  void add(Vector allocation, LogScaled price);

 private:
  std::size_t m_ = 0;
  std::vector<MenuEntry> entries_;
};

/// Utility-maximizing entry for a buyer with values exp(ln_scale) * unit.
/// Ties go to the higher price, then the lower index; returns Menu::kNull when
/// nothing beats the null entry. Utilities are compared in the buyer's frame,
/// so huge scales never materialize.
long best_response(const Menu& menu, std::span<const double> unit, double ln_scale = 0.0);

}  // namespace smoothed
