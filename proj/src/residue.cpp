#include "rfb/residue.hpp"

#include <string>

#include "rfb/errors.hpp"
#include "rfb/fraction.hpp"

namespace rfb {

ResidueStructure residue_structure(std::int64_t P, std::int64_t Q) {
  if (P < 1 || Q < 1) throw InvalidPartition("residue structure needs P, Q >= 1");
  ResidueStructure rs;
  rs.P = P;
  rs.Q = Q;
  rs.m = checked_gcd(P, Q);
  rs.p = P / rs.m;
  rs.q = Q / rs.m;
  rs.mpq = checked_lcm(P, Q);

  Bezout bez = extended_gcd(rs.p, rs.q);
  rs.a = bez.a;
  rs.b = bez.b;

  rs.classes.assign(rs.m, {});
  for (std::int64_t l = 0; l < P; ++l) {
    for (std::int64_t k = 0; k < Q; ++k) {
      rs.classes[pos_mod(l - k, rs.m)].push_back({l, k});
    }
  }
  rs.representatives.reserve(rs.m);
  for (std::int64_t d = 0; d < rs.m; ++d) {
    rs.representatives.push_back(rs.classes[d].front());  // row-major => smallest (l, k)
  }
  return rs;
}

std::int64_t residue_of(const ElementIndex& e, std::int64_t m) {
  return pos_mod(e.first - e.second, m);
}

std::int64_t modulation_shift(const ElementIndex& rep, const ElementIndex& elem,
                              const ResidueStructure& rs) {
  if (residue_of(rep, rs.m) != residue_of(elem, rs.m)) {
    throw OracleFailure("modulation shift requested across residue classes");
  }
  std::int64_t mp = rs.m * rs.p;
  std::int64_t mq = rs.m * rs.q;
  std::int64_t t = pos_mod(elem.first - rep.first, mp);
  std::int64_t dk = pos_mod(elem.second - rep.second, mq);
  // dk == t (mod m), so the difference is divisible by m.
  std::int64_t h = (dk - t) / rs.m;
  std::int64_t g = pos_mod(t + checked_mul(h, checked_mul(rs.a, mp)), rs.mpq);
  return g;
}

}  // namespace rfb
