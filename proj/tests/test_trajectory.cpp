#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ers/errors.hpp"
#include "ers/trajectory.hpp"

using namespace ers;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/ers_test_" + name) {
    std::ofstream f(path);
    f << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load_dataset parses a small file") {
  TempFile f("basic.csv",
             "id,t,x,y\n"
             "a,0,0.0,1.0\n"
             "a,1,0.5,1.5\n"
             "a,2,1.0,2.0\n"
             "b,0,0.0,0.0\n"
             "b,1,0.1,0.1\n"
             "b,2,0.2,0.2\n");
  auto d = load_dataset(f.path);
  CHECK(d.size() == 2);
  CHECK(d.horizon == 2);
  CHECK(d.channel_schema == std::vector<std::string>{"x", "y"});
  CHECK(d.trajectories[0].id == "a");
  CHECK(d.trajectories[1].samples[2][0] == doctest::Approx(0.2));
}

TEST_CASE("load_dataset error paths") {
  SUBCASE("ragged horizon") {
    TempFile f("ragged.csv", "id,t,x\na,0,1\na,1,2\na,2,3\nb,0,1\nb,1,2\n");
    CHECK_THROWS_AS(load_dataset(f.path), RaggedHorizonError);
  }
  SUBCASE("NaN coordinate") {
    TempFile f("nan.csv", "id,t,x\na,0,nan\n");
    CHECK_THROWS_AS(load_dataset(f.path), NonFiniteError);
  }
  SUBCASE("empty file") {
    TempFile f("empty.csv", "");
    CHECK_THROWS_AS(load_dataset(f.path), EmptyFileError);
  }
  SUBCASE("header only") {
    TempFile f("hdronly.csv", "id,t,x\n");
    CHECK_THROWS_AS(load_dataset(f.path), EmptyFileError);
  }
  SUBCASE("missing column") {
    TempFile f("badhdr.csv", "t,x\n0,1\n");
    CHECK_THROWS_AS(load_dataset(f.path), MissingColumnError);
  }
  SUBCASE("comments are skipped") {
    TempFile f("comments.csv", "# comment\nid,t,x\n# another\na,0,1\na,1,2\n");
    CHECK(load_dataset(f.path).horizon == 1);
  }
}

TEST_CASE("load -> save -> load round-trips") {
  TempFile f("rt.csv", "id,t,x,y\na,0,3.25,-1.5\na,1,0.125,2.75\n");
  auto d1 = load_dataset(f.path);
  TempFile g("rt2.csv", "");
  save_dataset(d1, g.path);
  auto d2 = load_dataset(g.path);
  REQUIRE(d2.size() == d1.size());
  for (std::size_t i = 0; i < d1.size(); ++i) {
    CHECK(d2.trajectories[i].samples == d1.trajectories[i].samples);
  }
}

TEST_CASE("center_dataset") {
  TrajectoryDataset d;
  d.horizon = 1;
  d.channel_schema = {"x", "y"};
  d.origin = {3.0, 4.0};
  d.trajectories.push_back({"a", {{3.0, 4.0}, {5.0, 7.0}}, {}});
  auto c = center_dataset(d);
  CHECK(c.trajectories[0].samples[0] == std::vector<double>{0.0, 0.0});
  CHECK(c.trajectories[0].samples[1] == std::vector<double>{2.0, 3.0});
  // original untouched
  CHECK(d.trajectories[0].samples[0][0] == 3.0);

  SUBCASE("idempotent") {
    auto cc = center_dataset(c);
    CHECK(cc.trajectories[0].samples == c.trajectories[0].samples);
  }
  SUBCASE("single trajectory starts at origin") {
    CHECK(c.trajectories[0].samples[0] == std::vector<double>(2, 0.0));
  }
}

TEST_CASE("project_channels") {
  TrajectoryDataset d;
  d.horizon = 0;
  d.channel_schema = {"a", "b", "c", "d"};
  d.origin = {0, 0, 0, 0};
  d.trajectories.push_back({"t0", {{1.0, 2.0, 3.0, 4.0}}, {}});

  auto p = project_channels(d, {0, 1});
  CHECK(p.num_channels == 2);
  CHECK(p.value(0, 0, 0) == 1.0);
  CHECK(p.value(0, 0, 1) == 2.0);

  CHECK_THROWS_AS(project_channels(d, {0, 0}), DuplicateChannelError);
  CHECK_THROWS_AS(project_channels(d, {5}), IndexOutOfRangeError);
}

TEST_CASE("partition_by_mode") {
  TrajectoryDataset d;
  d.horizon = 0;
  d.channel_schema = {"x"};
  d.origin = {0};
  for (int i = 0; i < 3; ++i) d.trajectories.push_back({"t" + std::to_string(i), {{1.0 * i}}, {}});

  auto parts = partition_by_mode(d, {"keep", "keep", "change"});
  CHECK(parts.size() == 2);
  CHECK(parts.at("keep").size() == 2);
  CHECK(parts.at("change").size() == 1);

  // Union equals the dataset, order preserved per mode.
  std::size_t total = 0;
  for (const auto& [mode, part] : parts) total += part.size();
  CHECK(total == d.size());
  CHECK(parts.at("keep").trajectories[0].id == "t0");
  CHECK(parts.at("keep").trajectories[1].id == "t1");

  SUBCASE("all identical labels") {
    auto one = partition_by_mode(d, {"m", "m", "m"});
    CHECK(one.size() == 1);
    CHECK(one.at("m").size() == 3);
  }
  SUBCASE("label count mismatch") {
    CHECK_THROWS_AS(partition_by_mode(d, {"a", "b"}), LabelCountMismatchError);
  }
}
