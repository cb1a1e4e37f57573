// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "mahc/error.hpp"
#include "mahc/segment_io.hpp"
#include "mahc/synthetic.hpp"

using namespace mahc;

TEST_CASE("three records") {
  std::istringstream in(
      "{\"id\": 1, \"label\": \"aa\", \"frames\": [[0.1, 0.2], [0.3, 0.4]]}\n"
      "\n"
      "{\"id\": 2, \"label\": \"bb\", \"frames\": [[1, 2]]}\n"
      "{\"id\": 3, \"label\": 7, \"frames\": [[5, 6], [7, 8], [9, 10]]}\n");
  const Dataset ds = read_segments(in);
  CHECK(ds.size() == 3);
  CHECK(ds.dim() == 2);
  CHECK(ds[2].label == "7");
  CHECK(ds[0].frames == std::vector<double>{0.1, 0.2, 0.3, 0.4});
}

TEST_CASE("parse errors name the line") {
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_segments(in);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Data);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string ragged = message(
      "{\"id\": 1, \"frames\": [[0, 1]]}\n"
      "{\"id\": 2, \"frames\": [[0, 1], [2]]}\n");
  CHECK(ragged.find("line 2") != std::string::npos);
  CHECK(message("{\"id\": 1, \"frames\": [[0]]}\n{oops\n").find("line 2") != std::string::npos);
  CHECK(message("{\"frames\": [[0]]}\n").find("line 1") != std::string::npos);
  CHECK(message("{\"id\": 1, \"frames\": []}\n").find("line 1") != std::string::npos);
}

TEST_CASE("write then read round trips exactly") {
  const Dataset ds = generate_synthetic(SyntheticSpec{.classes = 3, .members_min = 4, .members_max = 4});
  const auto path = std::filesystem::temp_directory_path() / "mahc_io_roundtrip.jsonl";
  save_segments(path, ds);
  const Dataset back = load_segments(path);
  std::filesystem::remove(path);
  REQUIRE(back.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(back[i].id == ds[i].id);
    CHECK(back[i].label == ds[i].label);
    CHECK(back[i].frames == ds[i].frames);
  }
  CHECK_THROWS_AS(load_segments("/nonexistent/segments.jsonl"), Error);
}
