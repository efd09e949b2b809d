#include <doctest.h>

#include <cmath>

#include "periodic_spectra/error.hpp"
#include "periodic_spectra/examples.hpp"
#include "periodic_spectra/graph.hpp"
#include "periodic_spectra/lattice.hpp"
#include "support.hpp"

using namespace periodic_spectra;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("square lattice cell") {
    const auto g = square_lattice();
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 16);
    CHECK(g.kappa_minus() == 4);
    CHECK(g.kappa_plus() == 4);
    CHECK(g.tau_plus() == doctest::Approx(1.0));
    for (const auto& v : g.vertices()) CHECK(v.degree == 4);
  }

  TEST_CASE("integer line and G_p") {
    const auto z = z_line();
    CHECK(z.edge_count() == 2);
    CHECK(z.kappa_plus() == 2);
    CHECK(z.tau_plus() == doctest::Approx(1.0));

    const auto g3 = gp_graph(3);
    CHECK(g3.edge_count() == 4);
    CHECK(g3.kappa_minus() == 4);
    CHECK(g3.is_regular());
    CHECK(g3.has_loops());
    CHECK(g3.tau_plus() == doctest::Approx(3.0));
  }

  TEST_CASE("validation errors") {
    CHECK(code_of([] { build_graph(1, {{"a", 0}, {"a", 0}}, {{"a", "a", {1}}}); }) == ErrorCode::DuplicateVertexId);
    CHECK(code_of([] { build_graph(1, {{"a", 0}}, {{"a", "b", {1}}}); }) == ErrorCode::DanglingEndpoint);
    CHECK(code_of([] { build_graph(1, {{"a", 0}}, {{"a", "a", {0}}}); }) == ErrorCode::ZeroIndexLoop);
    CHECK(code_of([] { build_graph(2, {{"a", 0}}, {{"a", "a", {1}}}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { build_graph(1, {{"a", 0}, {"b", 0}}, {{"a", "a", {1}}}); }) ==
          ErrorCode::DisconnectedQuotient);
    CHECK(code_of([] { build_graph(5, {{"a", 0}}, {}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { build_graph(1, {{"a", NAN}}, {{"a", "a", {1}}}); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("edge-set closure and handshake") {
    for (const auto& [name, g] : testing::builtin_graphs()) {
      CAPTURE(name);
      int degree_sum = 0;
      for (const auto& v : g.vertices()) degree_sum += v.degree;
      CHECK(degree_sum == g.edge_count());
      for (const auto& e : g.edges()) {
        const auto& inv = g.edge(e.inverse_id);
        CHECK(g.edge(inv.inverse_id).id == e.id);
        CHECK(inv.index == -e.index);
        CHECK(inv.from == e.to);
        CHECK(inv.to == e.from);
      }
    }
  }

  TEST_CASE("decompose_coordinates examples") {
    const auto id2 = LatticeBasis::identity(2);
    const std::vector<double> x{1.2, 0.3};
    auto r = decompose_coordinates(x, id2);
    CHECK(r.fractional[0] == doctest::Approx(0.2));
    CHECK(r.fractional[1] == doctest::Approx(0.3));
    CHECK(r.lattice_part == LatticeIndex{1, 0});

    const std::vector<double> origin{0.0, 0.0};
    r = decompose_coordinates(origin, id2);
    CHECK(r.fractional == std::vector<double>{0.0, 0.0});
    CHECK(r.lattice_part.is_zero());

    Eigen::MatrixXd half(1, 1);
    half << 0.5;
    const std::vector<double> y{-0.25};
    r = decompose_coordinates(y, LatticeBasis(half));
    CHECK(r.fractional[0] == doctest::Approx(0.5));
    CHECK(r.lattice_part == LatticeIndex{-1});
  }

  TEST_CASE("decompose_coordinates reconstructs random points") {
    Eigen::MatrixXd b(2, 2);
    b << 1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0;
    const LatticeBasis basis(b);
    for (int i = 0; i < 1000; ++i) {
      const std::vector<double> x{testing::uniform(-20, 20), testing::uniform(-20, 20)};
      const auto r = decompose_coordinates(x, basis);
      Eigen::Vector2d c(r.fractional[0] + r.lattice_part[0], r.fractional[1] + r.lattice_part[1]);
      const Eigen::Vector2d back = b * c;
      CHECK(std::abs(back(0) - x[0]) < 1e-9);
      CHECK(std::abs(back(1) - x[1]) < 1e-9);
      for (double f : r.fractional) {
        CHECK(f >= 0.0);
        CHECK(f < 1.0);
      }
    }
  }

  TEST_CASE("singular basis is rejected") {
    Eigen::MatrixXd b(2, 2);
    b << 1.0, 2.0, 2.0, 4.0;
    CHECK(code_of([&] { LatticeBasis basis(b); }) == ErrorCode::SingularBasis);
  }

  TEST_CASE("index_from_embedding") {
    const auto id2 = LatticeBasis::identity(2);
    const std::vector<double> x{0.2, 0.3}, y{1.2, 0.3};
    CHECK(index_from_embedding(x, y, id2) == LatticeIndex{1, 0});
    CHECK(index_from_embedding(x, x, id2).is_zero());
    for (int i = 0; i < 20; ++i) {
      const std::vector<double> p{testing::uniform(-5, 5), testing::uniform(-5, 5)};
      const std::vector<double> q{testing::uniform(-5, 5), testing::uniform(-5, 5)};
      const LatticeIndex forward = index_from_embedding(p, q, id2);
      CHECK(index_from_embedding(q, p, id2) == -forward);
      CHECK(forward == LatticeIndex{int(std::floor(q[0])) - int(std::floor(p[0])),
                                    int(std::floor(q[1])) - int(std::floor(p[1]))});
    }
  }

  TEST_CASE("modify_graph") {
    auto m = modify_graph(square_lattice());
    CHECK(m.loop_weights == std::vector<double>{-4, -4, -4, -4});
    CHECK(m.edge_count() == 16 + 4);

    const auto k = kagome_lattice().with_potential(std::vector<double>{1.0, 2.0, 3.0});
    m = modify_graph(k);
    CHECK(m.loop_weights == std::vector<double>{-3, -2, -1});

    CHECK(modify_graph(z_line()).loop_weights == std::vector<double>{-2});
  }

  TEST_CASE("lattice index arithmetic") {
    const LatticeIndex a{1, -2}, b{3, 5};
    CHECK(a + b == LatticeIndex{4, 3});
    CHECK(a - b == LatticeIndex{-2, -7});
    CHECK(a * 3 == LatticeIndex{3, -6});
    CHECK(a.max_abs() == 2);
    CHECK(a.to_string() == "(1,-2)");
    CHECK(a < b);
  }
}
