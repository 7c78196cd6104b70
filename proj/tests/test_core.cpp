#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "fdepth/core.hpp"
#include "fdepth/error.hpp"
#include "helpers.hpp"

using namespace fdepth;
using fdepth::test::constant;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("uniform grid has trapezoid weights") {
  const Grid g = Grid::uniform(0.0, 1.0, 3);
  REQUIRE(g.size() == 3);
  CHECK(g.weights()[0] == 0.25);
  CHECK(g.weights()[1] == 0.5);
  CHECK(g.weights()[2] == 0.25);
  CHECK(g.is_equidistant());
  CHECK(g.back() == 1.0);
}

TEST_CASE("grid rejects short or non-increasing points") {
  CHECK(kind_of([] { Grid({1.0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Grid({0.0, 1.0, 1.0}); }) == ErrorKind::DomainNotIncreasing);
  CHECK_FALSE(Grid({0.0, 1.0, 3.0}).is_equidistant());
}

TEST_CASE("curve values must be finite") {
  CHECK(kind_of([] { Curve({1.0, std::numeric_limits<double>::quiet_NaN()}); }) == ErrorKind::NonFiniteValue);
  CHECK(kind_of([] { Curve({1.0, std::numeric_limits<double>::infinity()}); }) == ErrorKind::NonFiniteValue);
}

TEST_CASE("validate_labeled_sample") {
  const Grid g = Grid::uniform(0, 1, 3);
  SECTION("2 curves on a 3-point grid, labels [0,1] is valid") {
    const LabeledSample s(FunctionalSample(g, {constant(g, 0), constant(g, 1)}), {0, 1});
    CHECK_NOTHROW(validate_labeled_sample(s));
  }
  SECTION("labels [0,0] leave group 1 empty") {
    CHECK(kind_of([&] {
            const LabeledSample s(FunctionalSample(g, {constant(g, 0), constant(g, 1)}), {0, 0});
            validate_labeled_sample(s);
          }) == ErrorKind::EmptyGroup);
  }
  SECTION("curve of length 2 on a 3-point grid") {
    CHECK(kind_of([&] { FunctionalSample(g, {Curve({0.0, 1.0})}); }) == ErrorKind::GridMismatch);
  }
  SECTION("labels outside {0,1} or of the wrong length") {
    CHECK_THROWS_AS(LabeledSample(FunctionalSample(g, {constant(g, 0)}), {2}), Error);
    CHECK_THROWS_AS(LabeledSample(FunctionalSample(g, {constant(g, 0)}), {0, 1}), Error);
  }
}

TEST_CASE("labeled sample groups and subsets") {
  const Grid g = Grid::uniform(0, 1, 3);
  const LabeledSample s(FunctionalSample(g, {constant(g, 0), constant(g, 1), constant(g, 2)}), {1, 0, 1});
  CHECK(s.count(0) == 1);
  CHECK(s.count(1) == 2);
  CHECK(s.indices_of(1) == std::vector<std::size_t>{0, 2});
  CHECK(s.group(1)[1] == constant(g, 2));
  const std::vector<std::size_t> idx{2, 1};
  const auto sub = s.subset(idx);
  CHECK(sub.labels() == std::vector<Label>{1, 0});
  CHECK(sub.sample()[0] == constant(g, 2));
}

TEST_CASE("depth spec requires exactly the hyperparameters its kind uses") {
  for (DepthKind k : kAllDepths) {
    CHECK(parse_depth_kind(to_string(k)) == k);
    CHECK_NOTHROW(DepthSpec::defaults(k).validate());
  }
  DepthSpec fsd = DepthSpec::fsd();
  fsd.bandwidth_percentile = 50;
  CHECK_THROWS_AS(fsd.validate(), Error);
  DepthSpec kfsd{DepthKind::KFSD};
  CHECK_THROWS_AS(kfsd.validate(), Error);
  CHECK_THROWS_AS(DepthSpec::kfsd(100).validate(), Error);
  DepthSpec rtd = DepthSpec::rtd(0);
  CHECK_THROWS_AS(rtd.validate(), Error);
  CHECK_THROWS_AS(parse_depth_kind("XYZ"), Error);
}
