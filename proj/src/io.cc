// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "framecache/io.h"

#include <fstream>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <utility>

#include "framecache/error.h"

namespace framecache {
namespace {

[[noreturn]] void Schema(int64_t line, const std::string& field,
                         const std::string& reason) {
  throw Error(ErrorCode::kSchemaViolation,
              "line " + std::to_string(line) + ", field '" + field + "': " +
                  reason,
              -1, -1, line);
}

Json ParseLine(const std::string& text, int64_t line) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line) + ": " + e.what(), -1, -1, line);
  }
}

void RequireObject(const Json& j, int64_t line, const std::string& what) {
  if (!j.is_object()) Schema(line, what, "expected an object");
}

void RejectUnknownKeys(const Json& j, std::initializer_list<std::string_view> allowed,
                       int64_t line) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) Schema(line, key, "unknown key");
  }
}

const Json& Field(const Json& j, const char* key, int64_t line) {
  auto it = j.find(key);
  if (it == j.end()) Schema(line, key, "missing");
  return *it;
}

size_t PositiveSize(const Json& j, const char* key, int64_t line) {
  const Json& v = Field(j, key, line);
  if (!v.is_number_unsigned() || v.get<uint64_t>() == 0) {
    Schema(line, key, "expected a positive integer");
  }
  return v.get<size_t>();
}

double Number(const Json& v, const std::string& key, int64_t line) {
  if (!v.is_number()) Schema(line, key, "expected a number");
  return v.get<double>();
}

std::vector<double> Numbers(const Json& v, const std::string& key,
                            int64_t line) {
  if (!v.is_array()) Schema(line, key, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& x : v) out.push_back(Number(x, key, line));
  return out;
}

FeatureVector Vector(const Json& record, const char* key, size_t dim,
                     int64_t line) {
  std::vector<double> values = Numbers(Field(record, key, line), key, line);
  if (values.size() != dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "line " + std::to_string(line) + ", field '" + key +
                    "': expected " + std::to_string(dim) + " components, got " +
                    std::to_string(values.size()),
                static_cast<int64_t>(dim), static_cast<int64_t>(values.size()),
                line);
  }
  return FeatureVector(std::move(values));
}

QualityScores ScoresFrom(const Json& j, int64_t line) {
  RequireObject(j, line, "scores");
  RejectUnknownKeys(j, {"clip", "musiq"}, line);
  QualityScores s{Number(Field(j, "clip", line), "scores.clip", line),
                  Number(Field(j, "musiq", line), "scores.musiq", line)};
  if (s.clip < 0.0 || s.clip > 1.0 || s.musiq < 0.0 || s.musiq > 1.0) {
    Schema(line, "scores", "components must lie in [0, 1]");
  }
  return s;
}

Raster RasterFrom(const Json& j, int64_t line) {
  RequireObject(j, line, "raster");
  RejectUnknownKeys(j, {"w", "h", "data"}, line);
  Raster r;
  r.width = PositiveSize(j, "w", line);
  r.height = PositiveSize(j, "h", line);
  r.data = Numbers(Field(j, "data", line), "raster.data", line);
  if (r.data.size() != r.width * r.height) {
    Schema(line, "raster.data", "length must equal w*h");
  }
  return r;
}

FrameRecord RecordFrom(const Json& j, const FrameStream& stream, int64_t line) {
  RequireObject(j, line, "record");
  RejectUnknownKeys(
      j, {"index", "frame_id", "appearance", "pose", "scores", "raster"}, line);
  FrameRecord rec;
  const Json& index = Field(j, "index", line);
  if (!index.is_number_integer()) Schema(line, "index", "expected an integer");
  rec.index = index.get<int64_t>();
  if (rec.index != static_cast<int64_t>(stream.records.size())) {
    Schema(line, "index",
           "expected " + std::to_string(stream.records.size()) + ", got " +
               std::to_string(rec.index));
  }
  const Json& id = Field(j, "frame_id", line);
  if (!id.is_string()) Schema(line, "frame_id", "expected a string");
  rec.frame_id = id.get<std::string>();
  rec.appearance = Vector(j, "appearance", stream.d_a, line);
  rec.pose = Vector(j, "pose", stream.d_p, line);
  if (auto it = j.find("scores"); it != j.end()) rec.scores = ScoresFrom(*it, line);
  if (auto it = j.find("raster"); it != j.end()) rec.raster = RasterFrom(*it, line);
  if (!rec.scores && !rec.raster) {
    Schema(line, "scores", "record needs scores or a raster");
  }
  return rec;
}

Json RecordJson(const FrameRecord& r) {
  Json j{{"index", r.index},
         {"frame_id", r.frame_id},
         {"appearance", std::vector<double>(r.appearance.values().begin(),
                                            r.appearance.values().end())},
         {"pose", std::vector<double>(r.pose.values().begin(),
                                      r.pose.values().end())}};
  if (r.scores) j["scores"] = Json{{"clip", r.scores->clip}, {"musiq", r.scores->musiq}};
  if (r.raster) {
    j["raster"] =
        Json{{"w", r.raster->width}, {"h", r.raster->height}, {"data", r.raster->data}};
  }
  return j;
}

void CheckSink(const std::ostream& out) {
  if (!out) throw Error(ErrorCode::kSinkError, "write failed");
}

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kParseError, "cannot open '" + path.string() + "'");
  }
  return in;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kSinkError, "cannot open '" + path.string() + "'");
  }
  return out;
}

std::vector<double> ToVector(const FeatureVector& v) {
  return {v.values().begin(), v.values().end()};
}

}  // namespace

FrameStream ParseStream(std::istream& in) {
  FrameStream stream;
  std::string text;
  int64_t line = 0;
  if (!std::getline(in, text)) {
    throw Error(ErrorCode::kParseError, "line 1: missing header", -1, -1, 1);
  }
  ++line;
  const Json header = ParseLine(text, line);
  RequireObject(header, line, "header");
  RejectUnknownKeys(header, {"version", "d_a", "d_p", "source"}, line);
  const Json& version = Field(header, "version", line);
  if (!version.is_string() || version.get<std::string>() != kStreamVersion) {
    Schema(line, "version", std::string("expected \"") + kStreamVersion + "\"");
  }
  stream.version = version.get<std::string>();
  stream.d_a = PositiveSize(header, "d_a", line);
  stream.d_p = PositiveSize(header, "d_p", line);

  while (std::getline(in, text)) {
    ++line;
    stream.records.push_back(RecordFrom(ParseLine(text, line), stream, line));
  }
  return stream;
}

FrameStream ReadStreamFile(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path);
  return ParseStream(in);
}

void WriteStream(const FrameStream& stream, std::ostream& out) {
  out << DumpJson(Json{{"version", stream.version},
                       {"d_a", stream.d_a},
                       {"d_p", stream.d_p}})
      << '\n';
  for (const FrameRecord& r : stream.records) out << DumpJson(RecordJson(r)) << '\n';
  CheckSink(out);
}

void WriteStreamFile(const FrameStream& stream,
                     const std::filesystem::path& path) {
  std::ofstream out = OpenForWrite(path);
  WriteStream(stream, out);
  out.close();
  CheckSink(out);
}

void WriteTrace(std::span<const TraceEvent> events, std::ostream& out) {
  for (const TraceEvent& e : events) {
    Json line{{"kind", EventKindName(e.kind)}, {"index", e.index}};
    for (const auto& [key, value] : e.payload.items()) line[key] = value;
    out << DumpJson(line) << '\n';
  }
  CheckSink(out);
}

void WriteTraceFile(std::span<const TraceEvent> events,
                    const std::filesystem::path& path) {
  std::ofstream out = OpenForWrite(path);
  WriteTrace(events, out);
  out.close();
  CheckSink(out);
}

std::string TraceToString(std::span<const TraceEvent> events) {
  std::ostringstream out;
  WriteTrace(events, out);
  return out.str();
}

std::vector<TraceEvent> ParseTrace(std::istream& in) {
  std::vector<TraceEvent> events;
  std::string text;
  int64_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    Json j = ParseLine(text, line);
    RequireObject(j, line, "event");
    const Json& kind = Field(j, "kind", line);
    const Json& index = Field(j, "index", line);
    if (!kind.is_string()) Schema(line, "kind", "expected a string");
    if (!index.is_number_integer()) Schema(line, "index", "expected an integer");
    TraceEvent e;
    e.kind = ParseEventKind(kind.get<std::string>());
    e.index = index.get<int64_t>();
    for (const auto& [key, value] : j.items()) {
      if (key != "kind" && key != "index") e.payload[key] = value;
    }
    events.push_back(std::move(e));
  }
  return events;
}

std::vector<TraceEvent> ReadTraceFile(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path);
  return ParseTrace(in);
}

Json SnapshotJson(const ReferenceCache& cache) {
  Json entries = Json::array();
  for (size_t slot = 0; slot < cache.size(); ++slot) {
    const CacheEntry& e = cache.entry(slot);
    entries.push_back(Json{{"slot", slot},
                           {"frame_id", e.frame_id},
                           {"appearance", ToVector(e.appearance)},
                           {"pose", ToVector(e.pose)},
                           {"score", e.score},
                           {"admitted_at", e.admitted_at}});
  }
  return Json{{"version", kSnapshotVersion},
              {"capacity", cache.capacity()},
              {"redundancy_threshold", cache.config().redundancy_threshold},
              {"d_a", cache.appearance_dim()},
              {"d_p", cache.pose_dim()},
              {"entries", std::move(entries)}};
}

void WriteSnapshotFile(const ReferenceCache& cache,
                       const std::filesystem::path& path) {
  std::ofstream out = OpenForWrite(path);
  out << DumpJson(SnapshotJson(cache)) << '\n';
  out.close();
  CheckSink(out);
}

ReferenceCache CacheFromSnapshot(const Json& j) {
  constexpr int64_t kLine = 1;
  RequireObject(j, kLine, "snapshot");
  RejectUnknownKeys(
      j, {"version", "capacity", "redundancy_threshold", "d_a", "d_p", "entries"},
      kLine);
  const Json& version = Field(j, "version", kLine);
  if (!version.is_string() || version.get<std::string>() != kSnapshotVersion) {
    Schema(kLine, "version", std::string("expected \"") + kSnapshotVersion + "\"");
  }
  CachePolicyConfig config;
  config.capacity = PositiveSize(j, "capacity", kLine);
  config.redundancy_threshold =
      Number(Field(j, "redundancy_threshold", kLine), "redundancy_threshold", kLine);
  const size_t d_a = PositiveSize(j, "d_a", kLine);
  const size_t d_p = PositiveSize(j, "d_p", kLine);
  const Json& entries = Field(j, "entries", kLine);
  if (!entries.is_array() || entries.empty()) {
    Schema(kLine, "entries", "expected a non-empty array");
  }
  if (entries.size() > config.capacity) {
    Schema(kLine, "entries", "more entries than capacity");
  }

  std::vector<CacheEntry> parsed;
  for (size_t slot = 0; slot < entries.size(); ++slot) {
    const Json& e = entries[slot];
    RequireObject(e, kLine, "entries[]");
    RejectUnknownKeys(
        e, {"slot", "frame_id", "appearance", "pose", "score", "admitted_at"},
        kLine);
    const Json& s = Field(e, "slot", kLine);
    if (!s.is_number_unsigned() || s.get<size_t>() != slot) {
      Schema(kLine, "slot", "slots must be listed in order from 0");
    }
    const Json& id = Field(e, "frame_id", kLine);
    const Json& at = Field(e, "admitted_at", kLine);
    if (!id.is_string()) Schema(kLine, "frame_id", "expected a string");
    if (!at.is_number_integer()) Schema(kLine, "admitted_at", "expected an integer");
    parsed.push_back(CacheEntry{id.get<std::string>(),
                                Vector(e, "appearance", d_a, kLine),
                                Vector(e, "pose", d_p, kLine),
                                Number(Field(e, "score", kLine), "score", kLine),
                                at.get<int64_t>()});
  }
  ReferenceCache cache(std::move(parsed[0]), config);
  for (size_t i = 1; i < parsed.size(); ++i) cache.Append(std::move(parsed[i]));
  return cache;
}

ReferenceCache ReadSnapshotFile(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return CacheFromSnapshot(ParseLine(buffer.str(), 1));
}

}  // namespace framecache
