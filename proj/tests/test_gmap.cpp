#include <doctest.h>

#include "support.hpp"

using namespace gmh;
using gmh::test::P;
using gmh::test::paper_set;

namespace {

std::vector<DartId> sorted(std::vector<DartId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("validate") {
  SUBCASE("fig 4c table is a valid 3-Gmap") {
    const auto g = test::load_fixture("fig4c.gmap");
    CHECK(g.dimension() == 3);
    CHECK(g.num_darts() == 12);
    CHECK(validate(g).ok());
  }
  SUBCASE("single dart") { CHECK(validate(GMap(2, 1)).ok()); }
  SUBCASE("alpha_2 not an involution") {
    GMap g(std::vector<std::vector<DartId>>{{1, 0}, {0, 1}, {0, 0}});
    const auto r = validate(g);
    REQUIRE_FALSE(r.ok());
    bool found = false;
    for (const auto& v : r.violations)
      if (v.kind == Violation::Kind::NotInvolution && v.i == 2) found = true;
    CHECK(found);
  }
  SUBCASE("non commuting alpha_0 alpha_2") {
    GMap g(2, 4);
    g.link(0, 0, 1);
    g.link(0, 2, 3);
    g.link(2, 0, 2);
    const auto r = validate(g);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front().kind == Violation::Kind::NotCommuting);
    CHECK_FALSE(r.describe().empty());
  }
  SUBCASE("out of range entry") {
    GMap g(std::vector<std::vector<DartId>>{{5}});
    CHECK(validate(g).violations.front().kind == Violation::Kind::OutOfRange);
  }
}

TEST_CASE("orbit") {
  const auto g = test::load_fixture("fig1b.gmap");
  CHECK(sorted(orbit(g, P(1), index_bit(0) | index_bit(1))) == paper_set({1, 2, 3, 4, 5, 6}));
  CHECK(sorted(orbit(g, P(13), index_bit(0) | index_bit(2))) == paper_set({13, 14, 15, 16}));
  CHECK(orbit(g, P(7), 0) == std::vector<DartId>{P(7)});
  CHECK(orbit(g, P(3), all_indices(2)).front() == P(3));
  CHECK_THROWS_AS(orbit(g, 24, index_bit(0)), Error);

  OrbitScratch scratch(g.num_darts());
  std::vector<DartId> out;
  for (DartId d = 0; d < g.num_darts(); ++d) {
    scratch.orbit(g, d, index_bit(1) | index_bit(2), out);
    CHECK(out == orbit(g, d, index_bit(1) | index_bit(2)));
  }
}

TEST_CASE("cell") {
  const auto g = test::load_fixture("fig1b.gmap");
  CHECK(cell(g, P(13), 1).darts == paper_set({13, 14, 15, 16}));
  CHECK(cell(g, P(15), 1) == cell(g, P(13), 1));
  CHECK(cell(g, P(13), 1).canonical() == P(13));
  CHECK(cell(g, P(2), 0).darts == paper_set({2, 3, 7, 14, 15, 24}));

  const auto m = test::load_fixture("mobius.gmap");
  CHECK(cell(m, P(1), 2).darts == paper_set({1, 2, 3, 4, 5, 6, 7, 8}));

  GMap zero(0, 3);
  CHECK(cell(zero, 2, 0).darts == std::vector<DartId>{2});
  CHECK_THROWS_AS(cell(g, P(1), 3), Error);
  CHECK_THROWS_AS(cell(g, 99, 1), Error);
}

TEST_CASE("is_free") {
  const auto g = test::load_fixture("fig1b.gmap");
  for (DartId d : {5, 6, 9, 10, 11, 12, 17, 18, 19, 20, 21, 22}) CHECK(is_free(g, P(d), 2));
  CHECK_FALSE(is_free(g, P(13), 2));
  CHECK(g.alpha(2, P(13)) == P(16));
  GMap id(2, 4);
  for (DartId d = 0; d < 4; ++d) CHECK(is_free(id, d, 1));
}

TEST_CASE("all_cells") {
  const auto g = test::load_fixture("fig1b.gmap");
  CHECK(all_cells(g, 0).size() == 7);
  CHECK(all_cells(g, 1).size() == 9);
  CHECK(all_cells(g, 2).size() == 3);

  const auto c = test::load_fixture("fig4c.gmap");
  REQUIRE(all_cells(c, 3).size() == 1);
  CHECK(all_cells(c, 3).front().darts.size() == 12);

  CHECK(all_cells(GMap(2, 0), 1).empty());

  const auto cat = CellCatalog::build(g);
  CHECK(cat.counts() == std::vector<std::size_t>{7, 9, 3});
  for (int i = 0; i <= 2; ++i) {
    std::size_t total = 0;
    for (std::size_t k = 0; k < cat.count(i); ++k) {
      const auto& cl = cat.cells(i)[k];
      total += cl.darts.size();
      if (k > 0) CHECK(cat.cells(i)[k - 1].canonical() < cl.canonical());
      for (DartId d : cl.darts) CHECK(cat.cell_index(i, d) == k);
    }
    CHECK(total == g.num_darts());
  }
}

TEST_CASE("degree and codegree") {
  const auto g = test::load_fixture("fig1b.gmap");
  const Cell e1 = cell(g, P(13), 1);
  CHECK(degree(g, e1) == 2);
  CHECK(codegree(g, e1) == 2);
  CHECK_THROWS_AS(degree(g, cell(g, P(1), 2)), Error);
  CHECK_THROWS_AS(codegree(g, cell(g, P(1), 0)), Error);

  GMap edge(1, 2);
  edge.link(0, 0, 1);
  CHECK(codegree(edge, cell(edge, 0, 1)) == 2);

  // every i-cell, i < n, of a map without i-free darts has degree >= 1
  const auto t = test::load_fixture("torus.off");
  for (int i = 0; i < 2; ++i)
    for (const auto& c : all_cells(t, i)) CHECK(degree(t, c) >= 1);
}

TEST_CASE("incident and adjacent") {
  const auto g = test::load_fixture("fig1b.gmap");
  const Cell v1 = cell(g, P(2), 0), e1 = cell(g, P(13), 1);
  CHECK(incident(v1, e1));
  CHECK_FALSE(incident(e1, e1));
  const Cell f1 = cell(g, P(23), 2), f3 = cell(g, P(1), 2);
  CHECK(f1.darts == paper_set({15, 16, 17, 18, 19, 20, 21, 22, 23, 24}));
  CHECK(adjacent(g, f1, f3));
  CHECK_FALSE(adjacent(g, f1, f1));
  CHECK_FALSE(adjacent(g, v1, e1));
}

TEST_CASE("link and unlink") {
  GMap g(1, 4);
  g.link(0, 0, 1);
  g.link(0, 2, 3);
  CHECK(g.alpha(0, 1) == 0);
  CHECK(validate(g).ok());
  g.unlink(0, 0);
  CHECK(g.is_free(0, 0));
  CHECK(g.is_free(0, 1));
  CHECK(g.alpha(0, 2) == 3);
  CHECK_THROWS_AS(GMap(std::vector<std::vector<DartId>>{{0, 1}, {0}}), Error);
}
