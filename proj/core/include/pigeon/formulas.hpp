#pragma once

#include "pigeon/clause.hpp"

namespace pigeon {

// Pigeonhole principle over k pigeons, k-1 holes, variables x[u,w].
// Clauses: pigeon clauses by u, then hole clauses by (w,u,v), u<v. k >= 2.
CnfFormula gen_php(int32_t k);

// 3-CNF pigeonhole principle over q[v,w] with chain variables z[v,w]:
// per pigeon v the chain  q[v,1] | z[v,1],  -z[v,w] | q[v,w+1] | z[v,w+1]
// (w in [k-4]),  -z[v,k-3] | q[v,k-2] | q[v,k-1],  then injectivity
// -q[v,w] | -q[v',w] by (w,v,v'), v<v'.  k=3 collapses the chain to
// q[v,1] | q[v,2]; k >= 3.
CnfFormula gen_tphp(int32_t k);

// Relativized PHP: p maps [k] injectively into [n], r marks the image,
// q is defined and injective on the image rows. Wide clauses in the five
// groups Pdef, Pinj, Pimage, Qdef, Qinj; pair groups over v<v' / u<u'.
// k >= 2, n >= 2.
CnfFormula gen_rphp(int32_t k, int32_t n);

// 3-CNF form of gen_rphp with chain variables y (pigeon clauses) and
// z (image clauses) plus pair variables rr[v,v']. Ten clause groups in
// the order PdefA, PdefB, PdefC, QdefA, QdefB, QdefC, Pinj, Pimage,
// Rpair, Qinj. k >= 4, n >= 4.
CnfFormula gen_erphp(int32_t k, int32_t n);

}  // namespace pigeon
