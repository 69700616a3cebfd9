#pragma once

#include "toricdegen/polytope.hpp"

#include <initializer_list>
#include <vector>

namespace build {

using namespace toricdegen;

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.push_back(Integer(x));
  return v;
}

inline RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

inline std::vector<IntVector> ivs(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> out;
  for (const auto& r : rows) out.push_back(iv(r));
  return out;
}

inline LatticePolytope hull(std::initializer_list<std::initializer_list<long>> pts) {
  return LatticePolytope::from_vertices(ivs(pts));
}

inline std::vector<long long> to_ll(const IntVector& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

inline std::vector<long long> to_ll(const RatVector& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(Integer(x.get_num() / x.get_den()).get_si());
  return out;
}

}  // namespace build
