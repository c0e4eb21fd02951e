#include <doctest.h>

#include <algorithm>
#include <map>

#include "support.hpp"

using namespace gmh;
using gmh::test::P;
using gmh::test::paper_set;

namespace {

long euler(const GMap& g) {
  const auto counts = CellCatalog::build(g).counts();
  long x = 0;
  for (std::size_t p = 0; p < counts.size(); ++p) x += (p % 2 ? -1 : 1) * static_cast<long>(counts[p]);
  return x;
}

/// A map together with the initial dart behind each current dart.
struct Tracked {
  GMap g;
  std::vector<DartId> initial;

  explicit Tracked(GMap m) : g(std::move(m)), initial(g.num_darts()) {
    for (DartId d = 0; d < initial.size(); ++d) initial[d] = d;
  }
  DartId current(DartId init) const {
    auto it = std::find(initial.begin(), initial.end(), init);
    return it == initial.end() ? kNoDart : static_cast<DartId>(it - initial.begin());
  }
  void remove(DartId init, int dim) {
    auto [next, rec] = remove_cell(g, cell(g, current(init), dim));
    std::vector<DartId> moved(next.num_darts());
    for (DartId d = 0; d < rec.dart_index_map.size(); ++d)
      if (rec.dart_index_map[d] != kNoDart) moved[rec.dart_index_map[d]] = initial[d];
    g = std::move(next);
    initial = std::move(moved);
  }
};

/// 3x3x2 block whose two slabs have become single volumes sharing nine faces.
/// face_at[(x, y)] is an initial dart of the shared face above column (x, y).
struct TwoSlabs {
  Tracked t{GMap{}};
  std::map<std::pair<unsigned, unsigned>, DartId> face_at;

  TwoSlabs() {
    std::vector<Voxel> vox;
    for (unsigned x = 0; x < 3; ++x)
      for (unsigned y = 0; y < 3; ++y)
        for (unsigned z = 0; z < 2; ++z) vox.push_back({x, y, z});
    std::sort(vox.begin(), vox.end());
    const GMap g = voxels_to_gmap(vox);
    auto voxel_of = [&](DartId d) { return vox[d / kCubeDarts]; };
    std::vector<DartId> vertical;
    std::vector<bool> seen(g.num_darts(), false);
    for (DartId d = 0; d < g.num_darts(); ++d) {
      if (seen[d] || g.is_free(3, d)) continue;
      const Cell f = cell(g, d, 2);
      for (DartId e : f.darts) seen[e] = true;
      const Voxel a = voxel_of(d), b = voxel_of(g.alpha(3, d));
      if (a[2] == b[2])
        vertical.push_back(d);
      else
        face_at[{a[0], a[1]}] = d;
    }
    REQUIRE(vertical.size() == 24);
    REQUIRE(face_at.size() == 9);
    t = Tracked(g);
    for (DartId d : vertical) t.remove(d, 2);
  }
  Cell face(unsigned x, unsigned y) const { return cell(t.g, t.current(face_at.at({x, y})), 2); }
};

}  // namespace

TEST_CASE("is_removable and is_contractible") {
  const auto g = test::load_fixture("fig1b.gmap");
  for (const auto& e : all_cells(g, 1)) CHECK(is_removable(g, e));
  CHECK_FALSE(is_removable(g, cell(g, P(2), 0)));
  CHECK(is_removable(g, cell(g, P(10), 0)));
  CHECK(cell(g, P(10), 0).darts == paper_set({10, 11}));
  for (const auto& e : all_cells(g, 1)) CHECK(is_contractible(g, e));

  const auto p = test::load_fixture("pillow.gmap");
  CHECK(is_contractible(p, cell(p, P(1), 2)));
  CHECK(is_contractible(p, cell(p, P(5), 2)));
  CHECK(cell(p, P(1), 2).darts == paper_set({1, 2, 3, 4}));
}

TEST_CASE("remove_cell on fig 2d") {
  const auto g = test::load_fixture("fig1b.gmap");
  const Cell e1 = cell(g, P(13), 1);
  CHECK(cells_preserved(g, e1, OpKind::Removal));
  auto [h, rec] = remove_cell(g, e1);
  CHECK(validate(h).ok());
  CHECK(h.num_darts() == 20);
  CHECK(CellCatalog::build(h).counts() == std::vector<std::size_t>{7, 8, 2});
  CHECK(rec.cell_darts == paper_set({13, 14, 15, 16}));
  for (DartId d : rec.cell_darts) CHECK(rec.dart_index_map[d] == kNoDart);
  CHECK(rec.survivor != kNoDart);
  CHECK(rec.absorbed != kNoDart);

  const DartId d12 = rec.dart_index_map[P(12)], d17 = rec.dart_index_map[P(17)];
  const Cell v3 = cell(h, d12, 0);
  CHECK(v3.darts == std::vector<DartId>{std::min(d12, d17), std::max(d12, d17)});
  REQUIRE(is_removable(h, v3));
  auto [k, rec2] = remove_cell(h, v3);
  CHECK(validate(k).ok());
  CHECK(CellCatalog::build(k).counts() == std::vector<std::size_t>{6, 7, 2});
  CHECK(euler(k) == euler(g));
  CHECK(rec2.kind == OpKind::Removal);
  CHECK(rec2.dim == 0);

  CHECK_THROWS_AS(remove_cell(g, cell(g, P(2), 0)), Error);
}

TEST_CASE("remove_cell sews the outer darts of two triangles") {
  const auto m = build_polygon_mesh({{0, 1, 2}, {1, 0, 3}}, 4).map;
  Cell shared;
  for (const auto& e : all_cells(m, 1))
    if (degree(m, e) == 2) shared = e;
  REQUIRE(shared.darts.size() == 4);
  auto [h, rec] = remove_cell(m, shared);
  CHECK(validate(h).ok());
  CHECK(h.num_darts() == 8);
  CHECK(CellCatalog::build(h).counts() == std::vector<std::size_t>{4, 4, 1});
  for (DartId d = 0; d < h.num_darts(); ++d) CHECK(h.is_free(2, d));
}

TEST_CASE("contract_cell") {
  const auto p = test::load_fixture("pillow.gmap");
  auto [a, r1] = contract_cell(p, cell(p, P(1), 2));
  CHECK(validate(a).ok());
  CHECK(a.num_darts() == 4);
  CHECK(r1.kind == OpKind::Contraction);
  const Cell rest = cell(a, r1.dart_index_map[P(5)], 2);
  REQUIRE(is_contractible(a, rest));
  auto [b, r2] = contract_cell(a, rest);
  CHECK(validate(b).ok());
  CHECK(b.num_darts() == 0);

  const auto fan = build_polygon_mesh({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 6}, {0, 6, 1}}, 7).map;
  const Cell spoke = cell(fan, 0, 1);
  REQUIRE(codegree(fan, spoke) == 2);
  CHECK(cells_preserved(fan, spoke, OpKind::Contraction));
  auto [c, r3] = contract_cell(fan, spoke);
  CHECK(validate(c).ok());
  CHECK(CellCatalog::build(c).counts() == std::vector<std::size_t>{6, 11, 6});

  // both endpoints on the boundary: the merged vertex would be pinched apart
  const auto two = build_polygon_mesh({{0, 1, 2}, {0, 2, 3}}, 4).map;
  Cell inner;
  for (const auto& e : all_cells(two, 1))
    if (degree(two, e) == 2) inner = e;
  CHECK_FALSE(cells_preserved(two, inner, OpKind::Contraction));
  auto [split, r4] = contract_cell(two, inner);
  CHECK(CellCatalog::build(split).counts() == std::vector<std::size_t>{4, 4, 2});

  const auto g = test::load_fixture("fig1b.gmap");
  CHECK_THROWS_AS(contract_cell(g, cell(g, P(1), 0)), Error);
}

TEST_CASE("cells_preserved") {
  // sphere: two vertices, one edge, one face
  GMap s(2, 4);
  s.link(0, 0, 1);
  s.link(0, 2, 3);
  s.link(1, 1, 2);
  s.link(1, 3, 0);
  s.link(2, 0, 3);
  s.link(2, 1, 2);
  REQUIRE(validate(s).ok());
  REQUIRE(CellCatalog::build(s).counts() == std::vector<std::size_t>{2, 1, 1});
  const Cell edge = cell(s, 0, 1);
  CHECK(codegree(s, edge) == 2);
  CHECK_FALSE(cells_preserved(s, edge, OpKind::Contraction));

  const auto g = test::load_fixture("fig1b.gmap");
  CHECK(cells_preserved(g, cell(g, P(13), 1), OpKind::Removal));
  CHECK(cells_preserved(g, cell(g, P(10), 0), OpKind::Removal));
}

TEST_CASE("closure and coclosure") {
  const auto g = test::load_fixture("fig1b.gmap");
  const Cell e1 = cell(g, P(13), 1);
  auto cl = closure(g, e1);
  std::sort(cl.begin(), cl.end());
  std::vector<CellRef> want{{0, cell(g, P(13), 0).canonical()}, {0, P(2)}, {1, P(13)}};
  std::sort(want.begin(), want.end());
  CHECK(cl == want);
  CHECK(closure(g, cell(g, P(2), 0)) == std::vector<CellRef>{{0, P(2)}});

  TwoSlabs slabs;
  const auto& m = slabs.t.g;
  CHECK(CellCatalog::build(m).count(3) == 2);
  const Cell center = slabs.face(1, 1);
  auto co = coclosure(m, center);
  CHECK(co.size() == 3);
  std::size_t volumes = 0;
  for (const auto& c : co) volumes += c.dim == 3;
  CHECK(volumes == 2);
}

TEST_CASE("is_collapsible") {
  GMap seg(1, 2);
  seg.link(0, 0, 1);
  const auto s = assign_signs(seg);
  const auto one = is_collapsible(s, {{1, 0}, {0, 0}});
  REQUIRE(one.has_value());
  CHECK(one->size() == 1);
  CHECK(is_collapsible(s, {}).has_value());
  CHECK_FALSE(is_collapsible(s, {{1, 0}}).has_value());
}

TEST_CASE("dangling faces of the two-slab block") {
  TwoSlabs slabs;
  const Cell center = slabs.face(1, 1);
  CHECK(degree(slabs.t.g, center) == 2);
  slabs.t.remove(slabs.face_at.at({1, 1}), 2);
  const GMap& g = slabs.t.g;
  REQUIRE(validate(g).ok());
  CHECK(CellCatalog::build(g).count(3) == 1);
  const auto s = assign_signs(g);
  for (unsigned x = 0; x < 3; ++x)
    for (unsigned y = 0; y < 3; ++y) {
      if (x == 1 && y == 1) continue;
      CAPTURE(x);
      CAPTURE(y);
      const Cell f = slabs.face(x, y);
      CHECK(degree(g, f) == 1);
      const bool corner = x != 1 && y != 1;
      CHECK(is_dangling(s, f) == !corner);
    }
  CHECK_FALSE(is_dangling(assign_signs(test::load_fixture("fig1b.gmap")),
                          cell(test::load_fixture("fig1b.gmap"), P(13), 1)));

  std::vector<CellRef> corner_face{{2, slabs.face(0, 0).canonical()}};
  CHECK_FALSE(is_collapsible(s, corner_face).has_value());

  OperationLog log;
  log.dimension = 3;
  const auto out = remove_i_cells(s, 2, log);
  CHECK(validate(out.base).ok());
  const auto counts = CellCatalog::build(out.base).counts();
  CHECK(counts[3] == 1);
  CHECK(counts[2] == 42);
  CHECK(test::invariants(out) == test::invariants(s));
  std::size_t collapses = 0;
  for (const auto& r : log.records) collapses += r.collapse;
  CHECK(collapses >= 1);
}

TEST_CASE("remove_i_cells and contract_i_cells on the torus") {
  const auto g = test::load_fixture("torus.off");
  const auto s = assign_signs(g);
  OperationLog log;
  log.dimension = 2;
  auto a = remove_i_cells(s, 1, log);
  a = remove_i_cells(a, 0, log);
  CHECK(CellCatalog::build(a.base).count(2) == 1);
  auto b = contract_i_cells(a, 1, log);
  b = contract_i_cells(b, 2, log);
  CHECK(validate(b.base).ok());
  CHECK(CellCatalog::build(b.base).count(0) == 1);
  CHECK(test::invariants(b).first == std::vector<long>{1, 2, 1});

  OperationLog none;
  none.dimension = 2;
  const auto same = remove_i_cells(b, 1, none);
  CHECK(same.base == b.base);
  CHECK(none.records.empty());
}

TEST_CASE("simplify") {
  const auto g = test::load_fixture("fig1b.gmap");
  const auto r = simplify(g);
  CHECK(validate(r.map.base).ok());
  CHECK(test::invariants(r.map).first == std::vector<long>{1, 0, 0});
  CHECK(r.map.base.num_darts() <= 4);
  CHECK(replay(g, r.log) == r.map.base);
  CHECK(r.log.initial_darts == 24);
  CHECK(r.log.final_to_initial.size() == r.map.base.num_darts());

  const auto again = simplify(r.map);
  CHECK(again.map.base == r.map.base);
  CHECK(again.log.records.empty());

  SimplifyOptions removal_only;
  removal_only.contractions = false;
  const auto t = test::load_fixture("torus.off");
  const auto both = simplify(t), rem = simplify(t, removal_only);
  const auto cb = CellCatalog::build(both.map.base).counts(), cr = CellCatalog::build(rem.map.base).counts();
  for (std::size_t k = 0; k < cb.size(); ++k) CHECK(cb[k] <= cr[k]);
  for (const auto& rec : rem.log.records) CHECK(rec.kind == OpKind::Removal);

  SimplifyOptions cfirst;
  cfirst.contraction_first = true;
  const auto cf = simplify(t, cfirst);
  REQUIRE_FALSE(cf.log.records.empty());
  CHECK(cf.log.records.front().kind == OpKind::Contraction);
  CHECK(test::invariants(cf.map) == test::invariants(t));

  CHECK_THROWS_AS(simplify(test::load_fixture("fig4c.gmap")), Error);
}

TEST_CASE("pipeline invariants at every step") {
  for (const auto& name : {"torus.off", "moebius.off", "two_tori.off", "mobius.gmap", "sphere.off"}) {
    CAPTURE(name);
    const auto g = test::load_fixture(name);
    const long chi = euler(g);
    const auto before = test::invariants(g);
    std::size_t last = g.num_darts();
    SimplifyOptions opt;
    opt.on_step = [&](std::size_t, const OperationRecord&, const std::function<Snapshot()>& snap) {
      const auto s = snap();
      CHECK(validate(s.map.base).ok());
      CHECK(s.map.base.num_darts() < last);
      last = s.map.base.num_darts();
      CHECK(euler(s.map.base) == chi);
      CHECK(check_subclass(s.map.base).free_dart_violations.empty());
      CHECK_NOTHROW(assign_signs(s.map.base));
      CHECK(signs_consistent(s.map));
    };
    const auto r = simplify(g, opt);
    CHECK(test::invariants(r.map) == before);
  }
}

TEST_CASE("replay detects a foreign log") {
  const auto t = test::load_fixture("torus.off");
  const auto r = simplify(t);
  CHECK_THROWS_AS(replay(test::load_fixture("disc.off"), r.log), Error);
}
