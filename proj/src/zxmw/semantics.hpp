#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "diagram.hpp"
#include "exact.hpp"
#include "phase.hpp"

namespace zxmw {

// Dense 2^m x 2^n matrix, row-major. Row index bits are the outputs, column
// index bits the inputs; the first boundary point is the most significant bit.
template <typename T>
struct Matrix {
  int rows = 1, cols = 1;
  std::vector<T> a;

  Matrix() : a(1) {}
  Matrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}
  T& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
  const T& at(int r, int c) const { return a[std::size_t(r) * cols + c]; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

using CMatrix = Matrix<std::complex<double>>;
using EMatrix = Matrix<ExactComplex>;

template <typename T>
Matrix<T> matmul(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: shape mismatch");
  Matrix<T> out(x.rows, y.cols);
  for (int r = 0; r < x.rows; ++r)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(r, k) == T{}) continue;
      for (int c = 0; c < y.cols; ++c) out.at(r, c) = out.at(r, c) + x.at(r, k) * y.at(k, c);
    }
  return out;
}

template <typename T>
Matrix<T> kron(const Matrix<T>& x, const Matrix<T>& y) {
  Matrix<T> out(x.rows * y.rows, x.cols * y.cols);
  for (int rx = 0; rx < x.rows; ++rx)
    for (int cx = 0; cx < x.cols; ++cx)
      for (int ry = 0; ry < y.rows; ++ry)
        for (int cy = 0; cy < y.cols; ++cy)
          out.at(rx * y.rows + ry, cx * y.cols + cy) = x.at(rx, cx) * y.at(ry, cy);
  return out;
}

template <typename T>
Matrix<T> scale(const Matrix<T>& x, const T& s) {
  Matrix<T> out = x;
  for (auto& v : out.a) v = v * s;
  return out;
}

bool approx_equal(const CMatrix& x, const CMatrix& y, double tol);
double max_abs(const CMatrix& x);
CMatrix to_cmatrix(const EMatrix& x);

// Spider/box semantics. Z: |0...0><0...0| + e^{ia}|1...1><1...1|;
// X: Hadamard-conjugated Z; H: the 2x2 Hadamard (n = m = 1 required);
// Diamond: 1x1 [sqrt 2].
CMatrix spider_matrix(NodeKind kind, int n, int m, const Phase& phase);
// Exact (Gaussian-rational + sqrt2) variant; requires quarter-turn phases.
std::optional<EMatrix> spider_matrix_exact(NodeKind kind, int n, int m, const Phase& phase);

enum class ContractionOrder {
  Assignment,  // sum over all internal wire-bit assignments
  Pairwise,    // greedy pairwise tensor contraction
};

CMatrix diagram_matrix(const ZXDiagram& d,
                       ContractionOrder order = ContractionOrder::Assignment);
// nullopt when some phase is not a quarter-turn multiple.
std::optional<EMatrix> diagram_matrix_exact(
    const ZXDiagram& d, ContractionOrder order = ContractionOrder::Assignment);

// lambda with ||m1 - lambda*m2||_max <= tol * max(1, ||m1||_max), if any.
std::optional<std::complex<double>> proportional(const CMatrix& m1, const CMatrix& m2,
                                                 double tol);
std::optional<ExactComplex> proportional_exact(const EMatrix& m1, const EMatrix& m2);

struct Verdict {
  enum Kind { Equal, Proportional, Unsound } kind = Unsound;
  std::complex<double> lambda{0.0, 0.0};
  bool exact = false;  // decided in exact arithmetic
};

// Semantic comparison of two diagrams with equal boundary signatures. Uses
// exact arithmetic automatically when all phases are quarter-turn multiples.
Verdict verify_pair(const ZXDiagram& lhs, const ZXDiagram& rhs, double tol = 1e-9);

}  // namespace zxmw
