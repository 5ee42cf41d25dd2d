#include "trimoduli/multipoly.hpp"

namespace trimoduli {

namespace {

constexpr std::array<const char*, 6> kGroupNames = {"x", "y", "z", "xi", "eta", "zeta"};

std::vector<std::string> group_variable_names(int slots) {
  std::vector<std::string> names;
  for (int s = 1; s <= slots; ++s) {
    for (Group g : kAllGroups) {
      for (int i = 1; i <= 3; ++i) {
        std::string n = std::string(kGroupNames[static_cast<std::size_t>(g)]) + std::to_string(i);
        if (slots > 1) n += "_" + std::to_string(s);
        names.push_back(std::move(n));
      }
    }
  }
  return names;
}

}  // namespace

const char* group_name(Group g) { return kGroupNames[static_cast<std::size_t>(g)]; }

std::shared_ptr<const Catalog> Catalog::single_slot() {
  static const std::shared_ptr<const Catalog> cat(
      new Catalog(Kind::single_slot, group_variable_names(1)));
  return cat;
}

std::shared_ptr<const Catalog> Catalog::three_slot() {
  static const std::shared_ptr<const Catalog> cat(
      new Catalog(Kind::three_slot, group_variable_names(3)));
  return cat;
}

std::shared_ptr<const Catalog> Catalog::named(std::vector<std::string> names) {
  if (names.empty() || static_cast<int>(names.size()) > kMaxVariables)
    throw CatalogError("Catalog::named: need 1.." + std::to_string(kMaxVariables) + " variables");
  return std::shared_ptr<const Catalog>(new Catalog(Kind::named, std::move(names)));
}

int Catalog::slots() const {
  switch (kind_) {
    case Kind::single_slot:
      return 1;
    case Kind::three_slot:
      return 3;
    case Kind::named:
      break;
  }
  return 0;
}

std::optional<int> Catalog::position(const VariableRef& v) const {
  if (kind_ == Kind::named) return std::nullopt;
  if (v.index < 1 || v.index > 3 || v.slot < 1 || v.slot > slots()) return std::nullopt;
  return (v.slot - 1) * 18 + static_cast<int>(v.group) * 3 + (v.index - 1);
}

int Catalog::require(const VariableRef& v) const {
  auto p = position(v);
  if (!p)
    throw CatalogError(std::string("variable ") + group_name(v.group) + std::to_string(v.index) +
                       " slot " + std::to_string(v.slot) + " is not in the catalog");
  return *p;
}

std::optional<VariableRef> Catalog::reference(int pos) const {
  if (kind_ == Kind::named || pos < 0 || pos >= size()) return std::nullopt;
  VariableRef v;
  v.slot = pos / 18 + 1;
  v.group = static_cast<Group>((pos % 18) / 3);
  v.index = pos % 3 + 1;
  return v;
}

}  // namespace trimoduli
