#pragma once

// Small semigroups shared by the unit tests and the acceptance run.

#include <string>
#include <utility>
#include <vector>

#include "shadowlab/semigroup.hpp"

namespace catalog {

struct Entry {
  std::string name;
  shadowlab::SemigroupTable table;
};

inline std::vector<Entry> small_semigroups() {
  using namespace shadowlab;
  using namespace shadowlab::families;
  std::vector<Entry> out;
  out.push_back({"trivial", trivial_monoid()});
  out.push_back({"Z2", cyclic_group(2)});
  out.push_back({"Z3", cyclic_group(3)});
  out.push_back({"Z4", cyclic_group(4)});
  out.push_back({"right-zero-2", right_zero(2)});
  out.push_back({"right-zero-3", right_zero(3)});
  out.push_back({"left-zero-2", left_zero(2)});
  out.push_back({"left-zero-3", left_zero(3)});
  out.push_back({"null-2", null_semigroup(2)});
  out.push_back({"null-3", null_semigroup(3)});
  out.push_back({"semilattice", two_element_semilattice()});
  out.push_back({"saturating-2", saturating_monoid(2)});
  out.push_back({"saturating-3", saturating_monoid(3)});
  out.push_back({"glued-2", glued_union({trivial_monoid("u"), trivial_monoid("v")})});
  out.push_back({"glued-3", glued_union({trivial_monoid("u"), trivial_monoid("v"), trivial_monoid("w")})});
  out.push_back({"glued-Z2-u", glued_union({cyclic_group(2), trivial_monoid("u")})});
  out.push_back({"Z2xRZ2", direct_product(cyclic_group(2), right_zero(2))});
  out.push_back({"LZ2xZ2", direct_product(left_zero(2), cyclic_group(2))});
  out.push_back({"null-2xZ2", direct_product(null_semigroup(2), cyclic_group(2))});
  return out;
}

}  // namespace catalog
