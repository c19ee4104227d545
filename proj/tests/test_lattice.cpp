#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "wfs/lattice.hpp"

using namespace wfs;

namespace {

void check_tables(const FiniteLattice& lat) {
  const auto m = lat.size();
  for (Element a = 0; a < m; ++a) {
    CHECK(lat.leq(lat.bottom(), a));
    CHECK(lat.leq(a, lat.top()));
    for (Element b = 0; b < m; ++b) {
      CHECK(lat.meet(a, b) == oracle::scan_meet(lat, a, b));
      CHECK(lat.join(a, b) == oracle::scan_join(lat, a, b));
      CHECK(lat.meet(a, lat.join(a, b)) == a);
      CHECK(lat.join(a, lat.meet(a, b)) == a);
    }
  }
}

std::vector<CoverPair> square_covers() { return {{0, 1}, {0, 2}, {1, 3}, {2, 3}}; }

}  // namespace

TEST_CASE("from_covers builds and validates") {
  auto one = FiniteLattice::from_covers(1, {});
  CHECK(one.size() == 1);
  CHECK(one.bottom() == 0);
  CHECK(one.top() == 0);
  CHECK(one.relation_count() == 0);

  auto covers = square_covers();
  auto sq = FiniteLattice::from_covers(4, covers);
  CHECK(sq.bottom() == 0);
  CHECK(sq.top() == 3);
  CHECK(sq.covers() == covers);
  check_tables(sq);

  std::vector<CoverPair> no_top{{0, 1}, {0, 2}};
  CHECK_THROWS_AS(FiniteLattice::from_covers(3, no_top), Error);
  try {
    FiniteLattice::from_covers(3, no_top);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotALattice);
  }

  std::vector<CoverPair> cyc{{0, 1}, {1, 0}};
  try {
    FiniteLattice::from_covers(2, cyc);
    FAIL("expected CyclicCovers");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CyclicCovers);
  }
  std::vector<CoverPair> bad{{0, 5}};
  try {
    FiniteLattice::from_covers(2, bad);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRange);
  }
}

TEST_CASE("redundant cover pairs are reduced to the Hasse diagram") {
  std::vector<CoverPair> c{{0, 1}, {1, 2}, {0, 2}};
  auto lat = FiniteLattice::from_covers(3, c);
  CHECK(lat.covers() == std::vector<CoverPair>{{0, 1}, {1, 2}});
}

TEST_CASE("families") {
  CHECK(chain(1).size() == 1);
  CHECK(chain(2).covers() == std::vector<CoverPair>{{0, 1}});
  CHECK(chain(3).relation_count() == 3);

  CHECK(boolean(0).size() == 1);
  auto b2 = boolean(2);
  std::vector<Element> id{0, 1, 2, 3};
  CHECK(is_isomorphism(b2, square(), id));
  auto b3 = boolean(3);
  CHECK(b3.size() == 8);
  CHECK(b3.relation_count() == 19);
  CHECK(boolean(4).relation_count() == 65);
  for (Element x = 0; x < 8; ++x)
    for (Element y = 0; y < 8; ++y) {
      CHECK(b3.meet(x, y) == (x & y));
      CHECK(b3.join(x, y) == (x | y));
    }
  check_tables(b3);

  for (std::size_t n = 0; n <= 6; ++n) {
    std::size_t p3 = 1, p2 = 1;
    for (std::size_t i = 0; i < n; ++i) p3 *= 3, p2 *= 2;
    CHECK(boolean(n).relation_count() == p3 - p2);
  }
  CHECK_THROWS_AS(boolean(7), Error);

  std::vector<Element> idc{0, 1, 2};
  CHECK(is_isomorphism(diamond(1), chain(3), idc));
  CHECK(is_isomorphism(diamond(2), square(), id));
  // 4 from bottom, 4 to top, plus bottom-to-top.
  CHECK(diamond(4).size() == 6);
  CHECK(diamond(4).relation_count() == 9);
  check_tables(diamond(4));
}

TEST_CASE("opposite") {
  auto c3 = chain(3);
  auto op = opposite(c3);
  std::vector<Element> rev{2, 1, 0};
  CHECK(is_isomorphism(c3, op, rev));
  CHECK(opposite(opposite(c3)) == c3);

  auto b2 = boolean(2);
  auto b2op = opposite(b2);
  std::vector<Element> compl_{3, 2, 1, 0};
  CHECK(is_isomorphism(b2, b2op, compl_));
  for (Element a = 0; a < 4; ++a)
    for (Element b = 0; b < 4; ++b) {
      CHECK(b2op.leq(a, b) == b2.leq(b, a));
      CHECK(b2op.meet(a, b) == b2.join(a, b));
    }
  CHECK(b2op.bottom() == b2.top());

  auto d3 = diamond(3);
  CHECK(opposite(opposite(d3)) == d3);
}

TEST_CASE("nontrivial relations in canonical order") {
  CHECK(nontrivial_relations(chain(1)).empty());
  auto rels = nontrivial_relations(square());
  std::vector<Rel> want{{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}};
  CHECK(rels == want);
  auto sq = square();
  for (std::size_t i = 0; i < want.size(); ++i) {
    auto id = sq.rel_id(want[i].src, want[i].dst);
    REQUIRE(id);
    CHECK(id->index == i);
  }
  CHECK_FALSE(sq.rel_id(1, 2));
  CHECK_FALSE(sq.rel_id(1, 1));
}

TEST_CASE("product lattice") {
  auto p = product(chain(2), chain(3));
  CHECK(p.size() == 6);
  CHECK(p.relation_count() == 12);
  check_tables(p);
  auto sq = product(chain(2), chain(2));
  CHECK(sq.relation_count() == 5);
}

TEST_CASE("lifting table agrees with square search") {
  for (const auto& lat : {square(), chain(4), diamond(3), boolean(3)}) {
    const auto& rels = lat.relations();
    for (std::size_t f = 0; f < rels.size(); ++f)
      for (std::size_t g = 0; g < rels.size(); ++g) {
        bool expect = oracle::lifts_by_squares(lat, {rels[f].src, rels[f].dst},
                                               {rels[g].src, rels[g].dst});
        CHECK(lifts_left(lat, rels[f], rels[g]) == expect);
        CHECK(lat.lifted_by(f).test(g) == expect);
        CHECK(lat.lifting(g).test(f) == expect);
      }
  }
  auto sq = square();
  CHECK_FALSE(lifts_left(sq, {0, 1}, {2, 3}));
  CHECK(lifts_left(sq, {0, 1}, {0, 2}));
  for (const Rel& r : sq.relations()) CHECK_FALSE(lifts_left(sq, r, r));
}

TEST_CASE("relation cap") {
  // 2^7 elements have 3^7 - 2^7 = 2059 relations, under the cap once allowed.
  CHECK(boolean(7, {.override_cap = true}).relation_count() == 2059);
  // 820 * 6 - 120 = 4800 relations.
  try {
    product(chain(40), chain(3));
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("lattice file parsing") {
  std::istringstream in(
      "# the square\n"
      "lattice 4\n"
      "cover 0 1\n\n"
      "cover 0 2   # left\n"
      "cover 1 3\n"
      "cover 2 3\n"
      "perm 0 2 1 3\n");
  auto doc = parse_lattice_document(in);
  CHECK(doc.lattice == square());
  REQUIRE(doc.perms.size() == 1);
  CHECK(doc.perms[0] == Permutation{0, 2, 1, 3});

  std::ostringstream out;
  write_lattice(out, square());
  std::istringstream back(out.str());
  CHECK(parse_lattice_document(back).lattice == square());

  auto code_of = [](const std::string& text) {
    std::istringstream s(text);
    try {
      parse_lattice_document(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::TooLarge;  // sentinel: no error
  };
  CHECK(code_of("lattice 2\ncover 0 1\ncover 0 1\n") == ErrorCode::ParseError);
  CHECK(code_of("lattice 2\ncover 1 1\n") == ErrorCode::ParseError);
  CHECK(code_of("cover 0 1\n") == ErrorCode::ParseError);
  CHECK(code_of("lattice 2\ncover 0 2\n") == ErrorCode::OutOfRange);
  CHECK(code_of("lattice 2\nedge 0 1\n") == ErrorCode::ParseError);
  CHECK(code_of("lattice 3\ncover 0 1\ncover 0 2\n") == ErrorCode::NotALattice);
  CHECK(code_of("lattice 2\ncover 0 1\nperm 0 0\n") == ErrorCode::ParseError);
  CHECK(code_of("lattice 2\ncover 0 x\n") == ErrorCode::ParseError);
}
