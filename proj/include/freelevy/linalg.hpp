#pragma once

#include <vector>

#include "freelevy/cplx.hpp"

namespace freelevy {

// Dense n x n complex matrix, row-major.
struct CMatrix {
  int n = 0;
  std::vector<cplx> a;
  CMatrix() = default;
  explicit CMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, cplx(0.0, 0.0)) {}
  cplx& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// Real symmetric tridiagonal form: diag[0..n-1], off[0..n-2] (off[k] couples k and k+1).
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

// Householder reduction of a Hermitian matrix (lower triangle is read).
// The complex off-diagonal phases are absorbed by a diagonal unitary, so the result is real.
Tridiagonal hermitian_tridiagonalize(CMatrix h);

// Eigenvalues by implicit-shift QL; sorted ascending. Throws Numeric after 60 sweeps on one eigenvalue.
std::vector<double> tridiagonal_eigenvalues(Tridiagonal t);

std::vector<double> hermitian_eigenvalues(const CMatrix& h);

// T^* T
CMatrix gram(const CMatrix& t);

}  // namespace freelevy
