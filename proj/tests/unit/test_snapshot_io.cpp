#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "critns/datagen.hpp"
#include "critns/error.hpp"
#include "critns/norms.hpp"
#include "critns/snapshot_io.hpp"

using namespace critns;

TEST(Snapshot, RoundTrip) {
  const Grid g(16, 3.5);
  const auto u = datagen::random_solenoidal(g, 9, -2.0, 4, 1.0);
  const auto path = std::filesystem::temp_directory_path() / "critns_roundtrip.cnsf";
  write_snapshot(path, u);
  const auto back = read_velocity_snapshot(path);
  EXPECT_EQ(back.grid(), g);
  EXPECT_LT(norms::sobolev(back - u, 0.0), 1e-14);
  std::filesystem::remove(path);
}

TEST(Snapshot, StreamRoundTripIsExact) {
  const Grid g(8);
  const auto u = datagen::taylor_green(g, 1.0).to_physical();
  std::stringstream ss;
  write_snapshot(ss, g, {u[0], u[1], u[2]});
  const auto s = read_snapshot(ss);
  ASSERT_EQ(s.components.size(), 3u);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < u[c].size(); ++i) ASSERT_EQ(s.components[c][i], u[c][i]);
  }
}

TEST(Snapshot, RejectsCorruptInput) {
  std::stringstream bad("NOPE and some bytes");
  EXPECT_THROW(read_snapshot(bad), FormatError);

  const Grid g(8);
  const auto u = datagen::taylor_green(g, 1.0).to_physical();
  std::stringstream ss;
  write_snapshot(ss, g, {u[0], u[1], u[2]});
  const std::string full = ss.str();
  std::stringstream truncated(full.substr(0, full.size() - 100));
  EXPECT_THROW(read_snapshot(truncated), FormatError);

  std::string wrong_version = full;
  wrong_version[4] = 99;
  std::stringstream wv(wrong_version);
  EXPECT_THROW(read_snapshot(wv), FormatError);

  EXPECT_THROW(read_velocity_snapshot("/nonexistent/file.cnsf"), Error);
}
