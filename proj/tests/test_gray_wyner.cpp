#include <doctest.h>

#include "gwcacm/gray_wyner.hpp"

using namespace gwcacm;

TEST_CASE("encode then decode is the identity for every file") {
  const SourceSpec spec{8, 12, 24, 1};
  const Library lib = make_structured_library(spec, 99);
  const DescriptionSet ds = gw_encode(lib);
  CHECK(ds.tuple == RateTuple{8, 12, 24});
  CHECK(ds.tuple.sum_rate() == 8 + 3 * (12 + 24));
  for (Subset s : canonical_subsets())
    CHECK(ds.w.at(s).size() == static_cast<std::size_t>(ds.tuple.size_of(s)));
  for (int f = 1; f <= 3; ++f)
    CHECK(gw_decode(f, ds.w, ds.tuple) == lib.file(f));
}

TEST_CASE("request sets per receiver and the induced pair pattern") {
  const RequestSets rs12 = request_sets(Demand{1, 2});
  CHECK(rs12.per_receiver[0] ==
        std::array<Subset, 4>{Subset::all(), Subset::pair(1, 2),
                              Subset::pair(1, 3), Subset::single(1)});
  CHECK(rs12.per_receiver[1] ==
        std::array<Subset, 4>{Subset::all(), Subset::pair(1, 2),
                              Subset::pair(2, 3), Subset::single(2)});
  CHECK(rs12.l2.kind() == L2Kind::kDistinct);
  CHECK(rs12.l2.common() == Subset::pair(1, 2));
  CHECK(rs12.l2.only_r1() == Subset::pair(1, 3));
  CHECK(rs12.l2.only_r2() == Subset::pair(2, 3));

  const RequestSets rs33 = request_sets(Demand{3, 3});
  CHECK(rs33.l2.kind() == L2Kind::kEqual);
  CHECK(rs33.l2.wants_r1 ==
        std::array<Subset, 2>{Subset::pair(1, 3), Subset::pair(2, 3)});
  CHECK(rs33.l2.wants_r1 == rs33.l2.wants_r2);

  const RequestSets rs21 = request_sets(Demand{2, 1});
  CHECK(rs21.l2.common() == Subset::pair(1, 2));
  CHECK(rs21.l2.only_r1() == Subset::pair(2, 3));
  CHECK(rs21.l2.only_r2() == Subset::pair(1, 3));
}

TEST_CASE("decode failures name the problem subset") {
  const SourceSpec spec{8, 12, 24, 1};
  const Library lib = make_structured_library(spec, 3);
  DescriptionSet ds = gw_encode(lib);

  auto missing = ds.w;
  missing.erase(Subset::pair(1, 2));
  CHECK_THROWS_WITH_AS(gw_decode(1, missing, ds.tuple),
                       "missing description W12", DecodeError);

  auto short_ = ds.w;
  short_[Subset::pair(1, 3)].pop_back();
  CHECK_THROWS_WITH_AS(gw_decode(1, short_, ds.tuple),
                       "description W13 has 11 bits, expected 12", DecodeError);
}

TEST_CASE("sublibraries partition the seven descriptions") {
  const Sublibraries s = sublibraries();
  CHECK(s.l3 == Subset::all());
  CHECK(s.l2 == pair_subsets());
  CHECK(s.l1 == single_subsets());
}
