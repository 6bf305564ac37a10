#include "smoothed/menu.hpp"

#include <cmath>
#include <stdexcept>

namespace smoothed {

void Menu::add(Vector allocation, double price) {
  if (!(price >= 0.0) || !std::isfinite(price)) throw std::invalid_argument("Menu: price must be finite and >= 0");
  add(std::move(allocation), LogScaled::from_linear(price));
}

void Menu::add(Vector allocation, LogScaled price) {
  if (m_ == 0) m_ = allocation.size();
  if (allocation.size() != m_) throw DimensionError("Menu: allocation has the wrong number of items");
  for (double q : allocation) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("Menu: allocation coordinate outside [0, 1]");
  }
  if (std::isnan(price.ln())) throw std::invalid_argument("Menu: price is NaN");
  entries_.push_back({std::move(allocation), price});
}

long best_response(const Menu& menu, std::span<const double> unit, double ln_scale) {
  if (!menu.empty() && unit.size() != menu.items()) throw DimensionError("best_response: dimension mismatch");
  const double tol = 1e-12 * std::max(1.0, sum(unit));
  long best = Menu::kNull;
  double best_u = 0.0;
  LogScaled best_price = LogScaled::zero();
  const auto& es = menu.entries();
  for (std::size_t k = 0; k < es.size(); ++k) {
    const double u = dot(unit, es[k].allocation) - std::exp(es[k].price.ln() - ln_scale);
    if (u > best_u + tol || (u >= best_u - tol && es[k].price > best_price)) {
      best = static_cast<long>(k);
      best_u = std::max(u, best_u);
      best_price = es[k].price;
    }
  }
  return best;
}

}  // namespace smoothed
