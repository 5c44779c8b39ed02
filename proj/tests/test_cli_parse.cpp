#include <doctest.h>

#include "sqckit/domain_parse.hpp"

using namespace sqckit;

TEST_CASE("domain spec strings parse into the right regions") {
  ConvexDomain i = parse_domain("interval:-1:1");
  CHECK(i.kind() == ConvexDomain::Kind::Interval);
  CHECK(i.interval_lo() == -1.0);
  CHECK(i.interval_hi() == 1.0);
  CHECK(i.space().p() == 2.0);

  ConvexDomain b = parse_domain("ball:0,0:1@p=4");
  CHECK(b.kind() == ConvexDomain::Kind::Ball);
  CHECK(b.dim() == 2);
  CHECK(b.ball_radius() == 1.0);
  CHECK(b.space().p() == 4.0);

  ConvexDomain box = parse_domain("box:-1,-2:3,4");
  CHECK(box.kind() == ConvexDomain::Kind::Box);
  CHECK(box.box_lo() == Vec{-1.0, -2.0});
  CHECK(box.box_hi() == Vec{3.0, 4.0});

  ConvexDomain seg = parse_domain("segment:0,0:1,1@p=inf");
  CHECK(seg.kind() == ConvexDomain::Kind::Segment);
  CHECK(seg.space().is_max_norm());

  ConvexDomain one_d_ball = parse_domain("ball:0:1");
  CHECK(one_d_ball.dim() == 1);
}

TEST_CASE("bad domain specs are rejected with the right codes") {
  CHECK_THROWS_AS((void)parse_domain("box:0:-1"), Error);
  try {
    (void)parse_domain("box:0:-1");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::LoAboveHi);
  }
  CHECK_THROWS_AS((void)parse_domain("ball:0,0:-2"), Error);
  try {
    (void)parse_domain("ball:0,0:-2");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::NonpositiveRadius);
  }
  CHECK_THROWS_AS((void)parse_domain("noidea:1:2"), Error);
  CHECK_THROWS_AS((void)parse_domain("interval:1"), Error);
  CHECK_THROWS_AS((void)parse_domain("interval:a:b"), Error);
}

TEST_CASE("domain round-trip through the string form") {
  for (const char* spec : {"interval:-1:1", "ball:0,0:1@p=4", "box:-1,-2:3,4",
                           "segment:0,0:1,1@p=inf", "interval:-150:150"}) {
    ConvexDomain d = parse_domain(spec);
    ConvexDomain d2 = parse_domain(domain_to_string(d));
    CHECK(d2.kind() == d.kind());
    CHECK(d2.dim() == d.dim());
    CHECK(d2.center() == d.center());
    CHECK(d2.diameter() == d.diameter());
  }
}
