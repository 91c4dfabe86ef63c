#ifndef RFB_RESIDUE_HPP
#define RFB_RESIDUE_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace rfb {

using ElementIndex = std::pair<std::int64_t, std::int64_t>;  // (row l, column k)

// Residue-class bookkeeping of a P x Q modulation matrix: m = gcd(P, Q)
// classes, class d holding the (l, k) with (l - k) mod m == d. Every element
// of a class is an argument shift of any other, so one filter per class
// characterizes the whole matrix.
struct ResidueStructure {
  std::int64_t P = 0;
  std::int64_t Q = 0;
  std::int64_t m = 0;
  std::int64_t p = 0;  // P / m
  std::int64_t q = 0;  // Q / m
  std::int64_t a = 0;  // a*p + b*q == 1, |a| minimal
  std::int64_t b = 0;
  std::int64_t mpq = 0;  // lcm(P, Q)
  std::vector<std::vector<ElementIndex>> classes;  // classes[d], row-major order
  std::vector<ElementIndex> representatives;       // smallest (l, k) per class
};

ResidueStructure residue_structure(std::int64_t P, std::int64_t Q);

std::int64_t residue_of(const ElementIndex& e, std::int64_t m);

// Shift g in {0..mpq-1} with elem(phi) = rep(phi - 2*pi*g/mpq): g solves
// g = l'-l (mod mp) and g = k'-k (mod mq). Throws if the elements are in
// different residue classes.
std::int64_t modulation_shift(const ElementIndex& rep, const ElementIndex& elem,
                              const ResidueStructure& rs);

}  // namespace rfb

#endif  // RFB_RESIDUE_HPP
