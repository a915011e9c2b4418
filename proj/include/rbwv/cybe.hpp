#ifndef RBWV_CYBE_HPP
#define RBWV_CYBE_HPP

#include <vector>

#include "rbwv/tensor.hpp"

namespace rbwv {

struct CybeFailure {
  BasisSymbol i, j, k;
  Rational value;
};

struct CybeReport {
  long window = 0;
  std::vector<CybeFailure> failures;
  bool pass() const { return failures.empty(); }
};

// One component of the formal classical Yang-Baxter equation:
//   [[r]](e_i,e_j,e_k) = sum_{s,t} ( C^i_{st} a_{sj} a_{tk}
//                                  + a_{is} C^j_{st} a_{tk}
//                                  + a_{is} a_{jt} C^k_{st} )
// The sums are finite because each band contributes at most one entry per
// row and per column; zero for all triples iff r solves the formal CYBE.
Rational cybe_component(const FormalTensor& r, BasisSymbol i, BasisSymbol j, BasisSymbol k);

// Exhaustive component check over all basis triples with indices in [-N, N],
// all sectors of the semidirect product. Parallel kernel and serial reference
// return identical, canonically ordered reports.
CybeReport verify_formal_cybe(const FormalTensor& r, long window);
CybeReport verify_formal_cybe_serial(const FormalTensor& r, long window);
CybeReport verify_formal_cybe_parallel(const FormalTensor& r, long window);

}  // namespace rbwv

#endif
