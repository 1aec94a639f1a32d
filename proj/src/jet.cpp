#include "wco/jet.hpp"

#include <mutex>

namespace wco {

std::shared_ptr<const JetLayout> JetLayout::get(int dim, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{dim, order}];
  if (slot) return slot;

  auto layout = std::make_shared<JetLayout>();
  layout->dim = dim;
  layout->order = order;
  layout->monomials = indices_up_to(dim, order);
  for (std::size_t k = 0; k < layout->monomials.size(); ++k) {
    const auto& a = layout->monomials[k];
    layout->index[a] = static_cast<int>(k);
    layout->degree.push_back(wco::order(a));
    layout->factorials.push_back(factorial(a));
  }
  const int n = static_cast<int>(layout->monomials.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (layout->degree[static_cast<std::size_t>(i)] + layout->degree[static_cast<std::size_t>(j)] > order)
        continue;
      const int k = layout->find(layout->monomials[static_cast<std::size_t>(i)] +
                                 layout->monomials[static_cast<std::size_t>(j)]);
      layout->products.push_back({i, j, k});
    }
  slot = std::move(layout);
  return slot;
}

std::vector<Jet> seed_jets(const Point& x, int order) {
  const int d = static_cast<int>(x.size());
  auto layout = JetLayout::get(d, order);
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) out.push_back(Jet::variable(layout, i, Complex(x[i], 0.0)));
  return out;
}

}  // namespace wco
