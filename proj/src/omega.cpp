#include "trimoduli/omega.hpp"

namespace trimoduli::detail {

namespace {

// Exponents of the nine symbols d(i, s), stored at 3*i + s.
using SymbolExponents = std::array<std::uint8_t, 9>;
using SymbolPoly = std::map<SymbolExponents, long long>;

SymbolPoly omega_power(int n) {
  static constexpr std::array<std::array<int, 3>, 6> kPerms = {
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  SymbolPoly cur{{SymbolExponents{}, 1}};
  for (int k = 0; k < n; ++k) {
    SymbolPoly next;
    for (const auto& [e, c] : cur) {
      for (std::size_t p = 0; p < kPerms.size(); ++p) {
        SymbolExponents f = e;
        for (int s = 0; s < 3; ++s) ++f[static_cast<std::size_t>(3 * kPerms[p][static_cast<std::size_t>(s)] + s)];
        auto& slot = next[f];
        slot += p < 3 ? c : -c;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

std::vector<OperatorTerm> expand_omega_operator(const OmegaBudget& budget) {
  std::vector<OperatorTerm> terms{OperatorTerm{1, {}}};
  for (Group g : kAllGroups) {
    const int n = budget.power(g);
    if (n < 0) throw std::invalid_argument("transvectant: negative Omega power");
    if (n == 0) continue;
    const SymbolPoly op = omega_power(n);
    std::vector<OperatorTerm> next;
    next.reserve(terms.size() * op.size());
    for (const auto& t : terms) {
      for (const auto& [e, c] : op) {
        OperatorTerm u = t;
        u.coefficient *= c;
        for (int i = 0; i < 3; ++i) {
          for (int s = 0; s < 3; ++s) {
            u.orders[static_cast<std::size_t>(s)][static_cast<std::size_t>(static_cast<int>(g) * 3 + i)] +=
                e[static_cast<std::size_t>(3 * i + s)];
          }
        }
        next.push_back(u);
      }
    }
    terms = std::move(next);
  }
  return terms;
}

}  // namespace trimoduli::detail
