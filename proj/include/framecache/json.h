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

#ifndef FRAMECACHE_JSON_H_
#define FRAMECACHE_JSON_H_

#include <string>

#include "json.hpp"

namespace framecache {

// Keys keep insertion order, which is the order they are written in.
using Json = nlohmann::ordered_json;

// Compact single-line rendering. Floating-point values use 17 significant
// digits ("%.17g"), so every double survives a write/parse round trip
// bit-exactly and identical values always render identically.
std::string DumpJson(const Json& value);

std::string FormatDouble(double value);

}  // namespace framecache

#endif  // FRAMECACHE_JSON_H_
