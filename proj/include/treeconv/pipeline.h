// Copyright 2026 The Treeconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREECONV_PIPELINE_H_
#define TREECONV_PIPELINE_H_

// Command-line driver: detect, convert, sample, eval and report.
//
// Exit status: 0 success, 2 configuration or input error, 3 gold and
// prediction corpora do not align. Inputs are validated before any output
// is written, and every output directory receives the effective
// configuration (run.config) plus run_manifest.json with checksums.

#include <iosfwd>
#include <string>
#include <vector>

namespace treeconv {

inline constexpr char kVersion[] = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitAlignmentError = 3;

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treeconv

#endif  // TREECONV_PIPELINE_H_
