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

#include "framecache/json.h"

#include <cmath>
#include <cstdio>

#include "framecache/error.h"

namespace framecache {
namespace {

void Dump(const Json& value, std::string& out) {
  switch (value.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        Dump(item, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const Json& item : value) {
        if (!first) out += ',';
        first = false;
        Dump(item, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += FormatDouble(value.get<double>());
      break;
    default:
      out += value.dump();
      break;
  }
}

}  // namespace

std::string FormatDouble(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kSinkError, "cannot serialize a non-finite number");
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string DumpJson(const Json& value) {
  std::string out;
  Dump(value, out);
  return out;
}

}  // namespace framecache
