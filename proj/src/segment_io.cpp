// SPDX-License-Identifier: Apache-2.0
#include "mahc/segment_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "mahc/error.hpp"

namespace mahc {
namespace {

using nlohmann::json;

Segment parse_line(const std::string& line, std::size_t line_no) {
  auto bad = [&](const std::string& why) -> Error {
    return Error(ErrorKind::Data, "line " + std::to_string(line_no) + ": " + why);
  };
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw bad(std::string("invalid JSON (") + e.what() + ")");
  }
  if (!record.is_object()) throw bad("record is not an object");

  const auto id = record.find("id");
  if (id == record.end() || !id->is_number_integer()) throw bad("missing integer \"id\"");

  std::optional<std::string> label;
  if (const auto l = record.find("label"); l != record.end() && !l->is_null()) {
    if (l->is_string())
      label = l->get<std::string>();
    else if (l->is_number_integer())
      label = std::to_string(l->get<std::int64_t>());
    else
      throw bad("\"label\" must be a string or an integer");
  }

  const auto frames = record.find("frames");
  if (frames == record.end() || !frames->is_array() || frames->empty())
    throw bad("\"frames\" must be a non-empty array");
  const std::size_t dim = frames->front().is_array() ? frames->front().size() : 0;
  if (dim == 0) throw bad("frame 0 is not a non-empty array");

  std::vector<double> flat;
  flat.reserve(dim * frames->size());
  std::size_t t = 0;
  for (const auto& frame : *frames) {
    if (!frame.is_array() || frame.size() != dim)
      throw bad("ragged frame " + std::to_string(t) + " (expected " + std::to_string(dim) +
                " values)");
    for (const auto& v : frame) {
      if (!v.is_number()) throw bad("non-numeric value in frame " + std::to_string(t));
      flat.push_back(v.get<double>());
    }
    ++t;
  }
  return Segment(id->get<std::int64_t>(), dim, std::move(flat), std::move(label));
}

}  // namespace

Dataset read_segments(std::istream& in) {
  std::vector<Segment> segments;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    segments.push_back(parse_line(line, line_no));
  }
  return Dataset::make(std::move(segments));
}

Dataset load_segments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Data, "cannot open " + path.string());
  return read_segments(in);
}

void write_segments(std::ostream& out, const Dataset& dataset) {
  for (const Segment& s : dataset.segments()) {
    json record;
    record["id"] = s.id;
    if (s.label) record["label"] = *s.label;
    json frames = json::array();
    for (std::size_t t = 0; t < s.length(); ++t) {
      const auto f = s.frame(t);
      frames.push_back(json(std::vector<double>(f.begin(), f.end())));
    }
    record["frames"] = std::move(frames);
    out << record.dump() << '\n';
  }
}

void save_segments(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Data, "cannot write " + path.string());
  write_segments(out, dataset);
  if (!out) fail(ErrorKind::Data, "failed writing " + path.string());
}

}  // namespace mahc
