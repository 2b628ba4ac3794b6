#pragma once

#include "klsum/expsum.hpp"
#include "klsum/residue.hpp"

namespace klsum {

// Kl_3(a; p^k) for p != 3, k >= 2 via the finite evaluation
//   Kl_3(a; q) = (p^k / 3) * sum_{r^3 = a mod q} e(3r / q),
// with the Jacobi factor read off from p^k mod 3. Exactly 0 when a is a
// non-cube. Costs O(p + k) against O(q^2) for the defining sum.
Complex kl3_closed(u64 a, u64 p, unsigned k);

// Closed-form Kl_3 at every residue (0 off the units and at non-cubes):
// one pass over the units r, each contributing e(3r/q) at index r^3.
std::vector<Complex> kl3_table(u64 p, unsigned k);

// Kl_4(a; q) = q^{-1/2} sum*_{x mod q} e(ax/q) Kl_3(xbar; q) with the
// closed form inside; O(q (p + k)) per argument.
Complex kl4_via_kl3(u64 a, u64 p, unsigned k);

// Kl_4 at every residue by the same identity (0 off units), O(q^2) total.
std::vector<Complex> kl4_table(u64 p, unsigned k);

// Residual for the vanishing of Kl_4(am; q) when p | m and (a, p) = 1.
// The defining unit-tuple sum is empty (exactly 0); what is returned is
// the dual form q^{-1/2} sum*_x e(am x / q) Kl_3(xbar; q) with brute-force
// Kl_3 inside, whose cancellation is the actual content being checked.
Complex kl4_vanishing_check(i64 m, u64 a, u64 p, unsigned k);

// Number of cube roots of a mod p^k: 0, 1 or 3.
unsigned cube_root_count(u64 a, u64 p, unsigned k);

} // namespace klsum
