#include "semantics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace zxmw {

namespace {

template <typename T>
struct ScalarOps;

template <>
struct ScalarOps<std::complex<double>> {
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> unit(const Phase& p) {
    return std::polar(1.0, p.radians());
  }
  static std::complex<double> inv_sqrt2() { return {1.0 / std::sqrt(2.0), 0.0}; }
  static std::complex<double> sqrt2() { return {std::sqrt(2.0), 0.0}; }
  static std::complex<double> two() { return {2.0, 0.0}; }
};

template <>
struct ScalarOps<ExactComplex> {
  static ExactComplex one() { return ExactComplex::one(); }
  static ExactComplex unit(const Phase& p) {
    auto u = p.exact_unit();
    if (!u) throw std::domain_error("exact mode requires quarter-turn phases");
    return *u;
  }
  static ExactComplex inv_sqrt2() { return ExactComplex::inv_sqrt2(); }
  static ExactComplex sqrt2() { return ExactComplex::sqrt2(); }
  static ExactComplex two() { return ExactComplex(Rational(2)); }
};

// Tensor entry of a node given the bit carried by each incident leg.
template <typename T>
T node_entry(const ZXNode& node, const std::vector<int>& bits) {
  using S = ScalarOps<T>;
  switch (node.kind) {
    case NodeKind::Z: {
      bool all0 = true, all1 = true;
      for (int b : bits) (b ? all0 : all1) = false;
      if (bits.empty()) return S::one() + S::unit(node.phase);
      if (all0) return S::one();
      if (all1) return S::unit(node.phase);
      return T{};
    }
    case NodeKind::X: {
      // (1/sqrt2)^k (1 + e^{ia} (-1)^{sum bits})
      int parity = 0;
      for (int b : bits) parity ^= b;
      T u = S::unit(node.phase);
      T val = parity ? S::one() - u : S::one() + u;
      for (std::size_t i = 0; i < bits.size(); ++i) val = val * S::inv_sqrt2();
      return val;
    }
    case NodeKind::H: {
      T v = S::inv_sqrt2();
      if (bits.size() != 2) throw std::logic_error("H box with degree != 2");
      if (bits[0] && bits[1]) return T{} - v;
      return v;
    }
    default:
      return S::sqrt2();
  }
}

template <typename T>
Matrix<T> spider_matrix_impl(NodeKind kind, int n, int m, const Phase& phase) {
  if (n < 0 || m < 0) throw std::invalid_argument("negative arity");
  if (kind == NodeKind::H && (n != 1 || m != 1))
    throw std::invalid_argument("H is a 1->1 box");
  if (kind == NodeKind::Diamond && (n != 0 || m != 0))
    throw std::invalid_argument("diamond has arity 0");
  ZXNode node{kind, phase};
  Matrix<T> out(1 << m, 1 << n);
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < out.cols; ++c) {
      std::vector<int> bits;
      for (int k = 0; k < m; ++k) bits.push_back((r >> (m - 1 - k)) & 1);
      for (int k = 0; k < n; ++k) bits.push_back((c >> (n - 1 - k)) & 1);
      out.at(r, c) = node_entry<T>(node, bits);
    }
  return out;
}

// ---- assignment-enumeration contraction ----

template <typename T>
Matrix<T> contract_by_assignment(const ZXDiagram& d) {
  using S = ScalarOps<T>;
  int n = d.n_inputs, m = d.n_outputs;
  int W = int(d.wires.size());
  std::vector<int> free_wires;  // node-node wires: free binary value
  for (int w = 0; w < W; ++w) {
    const auto& [a, b] = d.wires[w];
    if (a.kind == Endpoint::Node && b.kind == Endpoint::Node) free_wires.push_back(w);
  }

  Matrix<T> out(1 << m, 1 << n);
  std::vector<int> wire_bit(W, 0);
  std::vector<int> bits;
  for (int r = 0; r < out.rows; ++r) {
    for (int c = 0; c < out.cols; ++c) {
      auto boundary_bit = [&](const Endpoint& e) {
        return e.kind == Endpoint::Input ? (c >> (n - 1 - e.index)) & 1
                                         : (r >> (m - 1 - e.index)) & 1;
      };
      // wires touching the boundary carry forced values
      bool consistent = true;
      for (int w = 0; w < W && consistent; ++w) {
        const auto& [a, b] = d.wires[w];
        bool ab = a.kind != Endpoint::Node, bb = b.kind != Endpoint::Node;
        if (ab && bb) {
          if (boundary_bit(a) != boundary_bit(b)) consistent = false;
          else wire_bit[w] = boundary_bit(a);
        } else if (ab) {
          wire_bit[w] = boundary_bit(a);
        } else if (bb) {
          wire_bit[w] = boundary_bit(b);
        }
      }
      if (!consistent) continue;
      T total{};
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << free_wires.size()); ++mask) {
        for (std::size_t i = 0; i < free_wires.size(); ++i)
          wire_bit[free_wires[i]] = int((mask >> i) & 1);
        T prod = S::one();
        for (std::size_t v = 0; v < d.nodes.size() && !(prod == T{}); ++v) {
          bits.clear();
          for (int w = 0; w < W; ++w) {
            const auto& [a, b] = d.wires[w];
            if (a.kind == Endpoint::Node && a.index == int(v)) bits.push_back(wire_bit[w]);
            if (b.kind == Endpoint::Node && b.index == int(v)) bits.push_back(wire_bit[w]);
          }
          prod = prod * node_entry<T>(d.nodes[v], bits);
        }
        total = total + prod;
      }
      out.at(r, c) = total;
    }
  }
  for (int l = 0; l < d.loops; ++l)
    for (auto& v : out.a) v = v * S::two();
  return out;
}

// ---- greedy pairwise tensor contraction ----

template <typename T>
struct Tensor {
  std::vector<int> legs;  // distinct leg ids; legs[0] is the most significant bit
  std::vector<T> data;    // size 2^legs
};

template <typename T>
Tensor<T> contract_pair(const Tensor<T>& x, const Tensor<T>& y) {
  std::vector<int> shared;
  for (int l : x.legs)
    if (std::find(y.legs.begin(), y.legs.end(), l) != y.legs.end()) shared.push_back(l);
  Tensor<T> out;
  for (int l : x.legs)
    if (std::find(shared.begin(), shared.end(), l) == shared.end()) out.legs.push_back(l);
  for (int l : y.legs)
    if (std::find(shared.begin(), shared.end(), l) == shared.end()) out.legs.push_back(l);
  out.data.assign(std::size_t(1) << out.legs.size(), T{});

  auto index_of = [](const Tensor<T>& t, const std::map<int, int>& bit) {
    std::size_t idx = 0;
    for (int l : t.legs) idx = (idx << 1) | std::size_t(bit.at(l));
    return idx;
  };
  std::map<int, int> bit;
  std::size_t n_out = out.legs.size(), n_sh = shared.size();
  for (std::uint64_t om = 0; om < (std::uint64_t(1) << n_out); ++om) {
    for (std::size_t i = 0; i < n_out; ++i) bit[out.legs[i]] = int((om >> (n_out - 1 - i)) & 1);
    T total{};
    for (std::uint64_t sm = 0; sm < (std::uint64_t(1) << n_sh); ++sm) {
      for (std::size_t i = 0; i < n_sh; ++i) bit[shared[i]] = int((sm >> i) & 1);
      total = total + x.data[index_of(x, bit)] * y.data[index_of(y, bit)];
    }
    out.data[om] = total;
  }
  return out;
}

template <typename T>
Matrix<T> contract_pairwise(const ZXDiagram& d) {
  using S = ScalarOps<T>;
  int W = int(d.wires.size());
  // leg ids: wire w has end ids 2w (first endpoint) and 2w+1 (second)
  std::vector<Tensor<T>> tensors;
  for (int w = 0; w < W; ++w) {
    Tensor<T> delta;
    delta.legs = {2 * w, 2 * w + 1};
    delta.data = {S::one(), T{}, T{}, S::one()};
    tensors.push_back(std::move(delta));
  }
  for (std::size_t v = 0; v < d.nodes.size(); ++v) {
    Tensor<T> t;
    for (int w = 0; w < W; ++w) {
      const auto& [a, b] = d.wires[w];
      if (a.kind == Endpoint::Node && a.index == int(v)) t.legs.push_back(2 * w);
      if (b.kind == Endpoint::Node && b.index == int(v)) t.legs.push_back(2 * w + 1);
    }
    std::size_t k = t.legs.size();
    t.data.resize(std::size_t(1) << k);
    std::vector<int> bits(k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
      for (std::size_t i = 0; i < k; ++i) bits[i] = int((mask >> (k - 1 - i)) & 1);
      t.data[mask] = node_entry<T>(d.nodes[v], bits);
    }
    tensors.push_back(std::move(t));
  }

  // greedily contract the pair with the smallest resulting tensor
  while (true) {
    int bi = -1, bj = -1;
    std::size_t best = SIZE_MAX;
    for (std::size_t i = 0; i < tensors.size(); ++i)
      for (std::size_t j = i + 1; j < tensors.size(); ++j) {
        std::size_t shared = 0;
        for (int l : tensors[i].legs)
          if (std::find(tensors[j].legs.begin(), tensors[j].legs.end(), l) !=
              tensors[j].legs.end())
            ++shared;
        if (shared == 0) continue;
        std::size_t result = tensors[i].legs.size() + tensors[j].legs.size() - 2 * shared;
        if (result < best) {
          best = result;
          bi = int(i);
          bj = int(j);
        }
      }
    if (bi < 0) break;
    Tensor<T> merged = contract_pair(tensors[bi], tensors[bj]);
    tensors.erase(tensors.begin() + bj);
    tensors.erase(tensors.begin() + bi);
    tensors.push_back(std::move(merged));
  }

  // combine leftovers by outer product (deterministic order: as stored)
  Tensor<T> result;
  result.data = {S::one()};
  for (const auto& t : tensors) {
    Tensor<T> next;
    next.legs = result.legs;
    next.legs.insert(next.legs.end(), t.legs.begin(), t.legs.end());
    next.data.resize(std::size_t(1) << next.legs.size());
    for (std::size_t i = 0; i < result.data.size(); ++i)
      for (std::size_t j = 0; j < t.data.size(); ++j)
        next.data[(i << t.legs.size()) | j] = result.data[i] * t.data[j];
    result = std::move(next);
  }

  // remaining legs belong to boundary points; map into matrix layout
  int n = d.n_inputs, m = d.n_outputs;
  auto boundary_leg = [&](const Endpoint& bp) {
    for (int w = 0; w < W; ++w) {
      if (d.wires[w].first == bp) return 2 * w;
      if (d.wires[w].second == bp) return 2 * w + 1;
    }
    throw std::logic_error("boundary point without wire");
  };
  Matrix<T> out(1 << m, 1 << n);
  std::map<int, int> bit;
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < out.cols; ++c) {
      bit.clear();
      for (int k = 0; k < m; ++k) bit[boundary_leg(output_ep(k))] = (r >> (m - 1 - k)) & 1;
      for (int k = 0; k < n; ++k) bit[boundary_leg(input_ep(k))] = (c >> (n - 1 - k)) & 1;
      std::size_t idx = 0;
      for (int l : result.legs) idx = (idx << 1) | std::size_t(bit.at(l));
      out.at(r, c) = result.data[idx];
    }
  for (int l = 0; l < d.loops; ++l)
    for (auto& v : out.a) v = v * S::two();
  return out;
}

template <typename T>
Matrix<T> diagram_matrix_impl(const ZXDiagram& d, ContractionOrder order) {
  validate(d);
  return order == ContractionOrder::Assignment ? contract_by_assignment<T>(d)
                                               : contract_pairwise<T>(d);
}

bool all_quarter(const ZXDiagram& d) {
  for (const auto& n : d.nodes)
    if ((n.kind == NodeKind::Z || n.kind == NodeKind::X) && !n.phase.quarter_turns())
      return false;
  return true;
}

}  // namespace

bool approx_equal(const CMatrix& x, const CMatrix& y, double tol) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (std::abs(x.a[i] - y.a[i]) > tol) return false;
  return true;
}

double max_abs(const CMatrix& x) {
  double m = 0.0;
  for (const auto& v : x.a) m = std::max(m, std::abs(v));
  return m;
}

CMatrix to_cmatrix(const EMatrix& x) {
  CMatrix out(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i].to_complex();
  return out;
}

CMatrix spider_matrix(NodeKind kind, int n, int m, const Phase& phase) {
  return spider_matrix_impl<std::complex<double>>(kind, n, m, phase);
}

std::optional<EMatrix> spider_matrix_exact(NodeKind kind, int n, int m,
                                           const Phase& phase) {
  if ((kind == NodeKind::Z || kind == NodeKind::X) && !phase.quarter_turns())
    return std::nullopt;
  return spider_matrix_impl<ExactComplex>(kind, n, m, phase);
}

CMatrix diagram_matrix(const ZXDiagram& d, ContractionOrder order) {
  return diagram_matrix_impl<std::complex<double>>(d, order);
}

std::optional<EMatrix> diagram_matrix_exact(const ZXDiagram& d, ContractionOrder order) {
  if (!all_quarter(d)) return std::nullopt;
  return diagram_matrix_impl<ExactComplex>(d, order);
}

std::optional<std::complex<double>> proportional(const CMatrix& m1, const CMatrix& m2,
                                                 double tol) {
  if (m1.rows != m2.rows || m1.cols != m2.cols)
    throw std::invalid_argument("proportional: shape mismatch");
  std::size_t best = 0;
  double best_abs = 0.0;
  for (std::size_t i = 0; i < m2.a.size(); ++i)
    if (std::abs(m2.a[i]) > best_abs) {
      best_abs = std::abs(m2.a[i]);
      best = i;
    }
  double bound = tol * std::max(1.0, max_abs(m1));
  if (best_abs <= tol) {
    // m2 ~ 0: proportional only if m1 ~ 0
    if (max_abs(m1) <= bound) return std::complex<double>(1.0, 0.0);
    return std::nullopt;
  }
  std::complex<double> lambda = m1.a[best] / m2.a[best];
  for (std::size_t i = 0; i < m1.a.size(); ++i)
    if (std::abs(m1.a[i] - lambda * m2.a[i]) > bound) return std::nullopt;
  return lambda;
}

std::optional<ExactComplex> proportional_exact(const EMatrix& m1, const EMatrix& m2) {
  if (m1.rows != m2.rows || m1.cols != m2.cols)
    throw std::invalid_argument("proportional: shape mismatch");
  std::size_t pivot = m2.a.size();
  for (std::size_t i = 0; i < m2.a.size(); ++i)
    if (!m2.a[i].is_zero()) {
      pivot = i;
      break;
    }
  if (pivot == m2.a.size()) {
    for (const auto& v : m1.a)
      if (!v.is_zero()) return std::nullopt;
    return ExactComplex::one();
  }
  ExactComplex lambda = m1.a[pivot] / m2.a[pivot];
  for (std::size_t i = 0; i < m1.a.size(); ++i)
    if (!(m1.a[i] == lambda * m2.a[i])) return std::nullopt;
  return lambda;
}

Verdict verify_pair(const ZXDiagram& lhs, const ZXDiagram& rhs, double tol) {
  if (lhs.n_inputs != rhs.n_inputs || lhs.n_outputs != rhs.n_outputs)
    throw std::invalid_argument("verify: boundary signature mismatch");
  Verdict v;
  auto el = diagram_matrix_exact(lhs);
  auto er = diagram_matrix_exact(rhs);
  if (el && er) {
    v.exact = true;
    if (*el == *er) {
      v.kind = Verdict::Equal;
      v.lambda = {1.0, 0.0};
      return v;
    }
    if (auto lam = proportional_exact(*el, *er)) {
      v.kind = Verdict::Proportional;
      v.lambda = lam->to_complex();
      return v;
    }
    v.kind = Verdict::Unsound;
    return v;
  }
  CMatrix ml = diagram_matrix(lhs), mr = diagram_matrix(rhs);
  if (approx_equal(ml, mr, tol * std::max(1.0, max_abs(ml)))) {
    v.kind = Verdict::Equal;
    v.lambda = {1.0, 0.0};
    return v;
  }
  if (auto lam = proportional(ml, mr, tol)) {
    v.kind = Verdict::Proportional;
    v.lambda = *lam;
    return v;
  }
  v.kind = Verdict::Unsound;
  return v;
}

}  // namespace zxmw
