#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "semantics.hpp"

using namespace zxmw;

namespace {

using C = std::complex<double>;
const double kTol = 1e-10;

// Direct textbook construction, independent of spider_matrix.
CMatrix z_spider_reference(int n, int m, double alpha) {
  CMatrix out(1 << m, 1 << n);
  out.at(0, 0) = C(1, 0);
  out.at((1 << m) - 1, (1 << n) - 1) += std::exp(C(0, alpha));
  return out;
}

CMatrix hadamard() {
  CMatrix h(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  h.at(0, 0) = s;
  h.at(0, 1) = s;
  h.at(1, 0) = s;
  h.at(1, 1) = -s;
  return h;
}

CMatrix kron_pow(const CMatrix& m, int k) {
  CMatrix out(1, 1);
  out.at(0, 0) = C(1, 0);
  for (int i = 0; i < k; ++i) out = kron(out, m);
  return out;
}

std::vector<std::string> corpus() {
  return {
      "Z[a,1,2,pi/2]*W[i1,a]*W[a,o1]*W[a,o2]",
      "X[x,0,1,0]*Z[z,1,2,0]*W[x,z]*W[z,o1]*W[z,o2]",
      "Z[a,1,1,pi/4]*X[b,1,1,pi]*W[i1,a]*W[a,b]*W[b,o1]",
      "H[h]*W[i1,h]*W[h,o1]",
      "Z[a,2,2,0]*X[b,2,2,3pi/2]*W[i1,a]*W[i2,a]*W[a,b]*W[a,b]*W[b,o1]*W[b,o2]",
      "Z[a,0,2,0]*Z[b,2,0,pi/2]*W[a,b]*W[a,b]*L",
      "Z[a,0,0,pi]*B[d]",
  };
}

}  // namespace

TEST_CASE("Z spider matches the ketbra formula") {
  struct Case { int n, m; Rational r; };
  for (const auto& c : {Case{1, 1, Rational(0)}, Case{2, 1, Rational(1, 2)},
                        Case{0, 3, Rational(1)}, Case{3, 2, Rational(3, 2)},
                        Case{2, 2, Rational(1, 3)}}) {
    CMatrix got = spider_matrix(NodeKind::Z, c.n, c.m, Phase(c.r));
    CMatrix want = z_spider_reference(c.n, c.m, c.r.to_double() * M_PI);
    CHECK(approx_equal(got, want, kTol));
  }
}

TEST_CASE("X spider is the Hadamard conjugate of the Z spider") {
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      for (Rational r : {Rational(0), Rational(1, 2), Rational(1), Rational(2, 3)}) {
        CMatrix x = spider_matrix(NodeKind::X, n, m, Phase(r));
        CMatrix want = matmul(kron_pow(hadamard(), m),
                              matmul(z_spider_reference(n, m, r.to_double() * M_PI),
                                     kron_pow(hadamard(), n)));
        CHECK(approx_equal(x, want, kTol));
      }
}

TEST_CASE("H box and Diamond scalars") {
  CHECK(approx_equal(spider_matrix(NodeKind::H, 1, 1, Phase::zero()), hadamard(), kTol));
  CHECK_THROWS_AS((void)spider_matrix(NodeKind::H, 2, 1, Phase::zero()),
                  std::invalid_argument);
  CMatrix d = spider_matrix(NodeKind::Diamond, 0, 0, Phase::zero());
  REQUIRE(d.rows == 1);
  REQUIRE(d.cols == 1);
  CHECK(std::abs(d.at(0, 0) - C(std::sqrt(2.0), 0)) < kTol);
}

TEST_CASE("a closed loop contributes a factor of 2") {
  ZXDiagram with_loop = parse_diagram("Z[a,1,1,0]*W[i1,a]*W[a,o1]*L");
  ZXDiagram without = parse_diagram("Z[a,1,1,0]*W[i1,a]*W[a,o1]");
  CHECK(approx_equal(diagram_matrix(with_loop),
                     scale(diagram_matrix(without), C(2, 0)), kTol));
}

TEST_CASE("diagram_matrix is functorial: stack is kron") {
  auto texts = corpus();
  std::mt19937 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    const auto& ta = texts[rng() % texts.size()];
    const auto& tb = texts[rng() % texts.size()];
    ZXDiagram a = parse_diagram(ta), b = parse_diagram(tb);
    CMatrix lhs = diagram_matrix(stack(a, b));
    CMatrix rhs = kron(diagram_matrix(a), diagram_matrix(b));
    CHECK(approx_equal(lhs, rhs, kTol));
  }
}

TEST_CASE("diagram_matrix is functorial: compose is matmul") {
  ZXDiagram a = parse_diagram("Z[a,1,2,pi/2]*W[i1,a]*W[a,o1]*W[a,o2]");
  ZXDiagram b = parse_diagram("X[b,2,1,pi/4]*W[i1,b]*W[i2,b]*W[b,o1]");
  ZXDiagram c = parse_diagram("Z[c,1,1,pi]*W[i1,c]*W[c,o1]");
  // compose(a, b): a feeds b, so the matrix product is M_b * M_a
  CHECK(approx_equal(diagram_matrix(compose(a, b)),
                     matmul(diagram_matrix(b), diagram_matrix(a)), kTol));
  CHECK(approx_equal(diagram_matrix(compose(compose(a, b), c)),
                     matmul(diagram_matrix(c),
                            matmul(diagram_matrix(b), diagram_matrix(a))),
                     kTol));
}

TEST_CASE("contraction order does not change the result") {
  for (const auto& text : corpus()) {
    ZXDiagram d = parse_diagram(text);
    CHECK(approx_equal(diagram_matrix(d, ContractionOrder::Assignment),
                       diagram_matrix(d, ContractionOrder::Pairwise), kTol));
  }
}

TEST_CASE("exact evaluation matches floating point on quarter-turn phases") {
  for (const auto& text : corpus()) {
    ZXDiagram d = parse_diagram(text);
    bool quarter = true;
    for (const auto& n : d.nodes)
      if ((n.kind == NodeKind::Z || n.kind == NodeKind::X) &&
          !n.phase.quarter_turns().has_value())
        quarter = false;
    auto exact = diagram_matrix_exact(d);
    CHECK(exact.has_value() == quarter);
    if (exact) CHECK(approx_equal(to_cmatrix(*exact), diagram_matrix(d), kTol));
  }
  CHECK(!diagram_matrix_exact(parse_diagram("Z[a,1,1,pi/4]*W[i1,a]*W[a,o1]")).has_value());
}

TEST_CASE("proportionality detection") {
  ZXDiagram d = parse_diagram("Z[a,1,1,pi/2]*W[i1,a]*W[a,o1]");
  CMatrix m = diagram_matrix(d);
  auto lam = proportional(scale(m, C(0, 2)), m, 1e-9);
  REQUIRE(lam.has_value());
  CHECK(std::abs(*lam - C(0, 2)) < 1e-9);
  ZXDiagram e = parse_diagram("X[a,1,1,pi/2]*W[i1,a]*W[a,o1]");
  CHECK(!proportional(diagram_matrix(e), m, 1e-9).has_value());

  auto em = diagram_matrix_exact(d);
  REQUIRE(em.has_value());
  auto elam = proportional_exact(*em, *em);
  REQUIRE(elam.has_value());
  CHECK(*elam == ExactComplex::one());
}

TEST_CASE("verify_pair verdicts") {
  ZXDiagram id1 = parse_diagram("W[i1,o1]");
  ZXDiagram id2 = parse_diagram("Z[a,1,1,0]*W[i1,a]*W[a,o1]");
  Verdict v = verify_pair(id1, id2);
  CHECK(v.kind == Verdict::Equal);
  CHECK(v.exact);

  ZXDiagram doubled = parse_diagram("Z[a,1,1,0]*W[i1,a]*W[a,o1]*L");
  Verdict p = verify_pair(doubled, id1);
  CHECK(p.kind == Verdict::Proportional);
  CHECK(std::abs(p.lambda - C(2, 0)) < 1e-9);

  ZXDiagram other = parse_diagram("Z[a,1,1,pi]*W[i1,a]*W[a,o1]");
  CHECK(verify_pair(other, id1).kind == Verdict::Unsound);
}
