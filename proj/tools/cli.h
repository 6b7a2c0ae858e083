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

#ifndef FRAMECACHE_TOOLS_CLI_H_
#define FRAMECACHE_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace framecache::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification failure, runtime error
inline constexpr int kExitUsage = 2;

// Runs one `framecache` invocation. argv[0] is the program name. Human output
// goes to `out`, diagnostics and usage text to `err`.
int Dispatch(const std::vector<std::string>& argv, std::ostream& out,
             std::ostream& err);

}  // namespace framecache::cli

#endif  // FRAMECACHE_TOOLS_CLI_H_
