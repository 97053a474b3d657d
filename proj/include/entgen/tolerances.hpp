#pragma once

namespace entgen {

// Central numeric tolerance configuration. Every module-level contract reads
// its threshold from here so a single record governs the whole pipeline.
//
// The split between `inequality` and `representation_cross_check` is
// deliberate: the bound inequalities are evaluated in the exact
// coherent-component representation, while the cross check runs through the
// truncated Fock oracle and carries truncation error.
struct Tolerances {
  double hermiticity = 1e-12;         // density operators: ||rho - rho^dag||
  double unit_trace = 1e-10;          // density operators: |tr(rho) - 1|
  double min_eigenvalue = -1e-10;     // density operators / POVM defects
  double identity = 1e-12;            // closed-form identities (overlap relation, f)
  double partial_trace = 1e-12;       // trace preservation of multilinear ops
  double picture_equivalence = 1e-10; // lossy channel vs phase-flip picture
  double inequality = 1e-9;           // Monte Carlo bound assertions
  double representation_cross_check = 1e-8; // component rep vs Fock oracle
  double compliance = 1e-10;          // orthogonality of success images
  double completeness = 1e-10;        // POVM defect positivity
};

inline constexpr Tolerances kTol{};

}  // namespace entgen
