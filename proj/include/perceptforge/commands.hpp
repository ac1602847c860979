/**
 * Copyright 2026 The PerceptForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <utility>

namespace perceptforge {

// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,      // unreadable or invalid config, bad arguments
  kExitIo = 2,          // missing directory, unwritable output, unreadable files
  kExitViolations = 3,  // dataset failed validation
};

struct GenerateArgs {
  std::filesystem::path configPath;
  std::filesystem::path outputDir;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> iterations;
  std::uint32_t workerIndex = 0;
  std::uint32_t workerCount = 1;
  std::optional<std::pair<int, int>> resolution;
  bool overwrite = false;
  bool quiet = false;  // no progress lines on err
};

// Each command writes exactly one JSON document to `out` (also on failure,
// as {"error": ...}) and human-readable diagnostics to `err`.
int CmdGenerate(const GenerateArgs &args, std::ostream &out, std::ostream &err);
int CmdValidate(const std::filesystem::path &dataset, std::ostream &out, std::ostream &err);
int CmdStats(const std::filesystem::path &dataset, bool perObject, std::ostream &out, std::ostream &err);
int CmdHash(const std::filesystem::path &dataset, std::ostream &out, std::ostream &err);

}  // namespace perceptforge
