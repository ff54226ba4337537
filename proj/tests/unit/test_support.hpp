#pragma once

#include <cmath>

#include "purdyn/matrix.hpp"
#include "purdyn/states.hpp"

namespace purdyn::testing {

inline ComplexVector basis(Index dim, Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

/// (|00> + |11>) / sqrt(2)
inline DensityMatrix bell_state() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = 1.0;
  psi(3) = 1.0;
  return from_pure(psi);
}

/// (|00><00| + |11><11|) / 2
inline DensityMatrix classical_state() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return DensityMatrix(m);
}

inline ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(values.size()),
                                        static_cast<Index>(values.size()));
  Index i = 0;
  for (double v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline ComplexMatrix xx() { return tensor_product(pauli::x(), pauli::x()); }

}  // namespace purdyn::testing
