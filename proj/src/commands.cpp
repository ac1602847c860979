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

#include "perceptforge/commands.hpp"

#include <chrono>

#include "perceptforge/config.hpp"
#include "perceptforge/dataset.hpp"
#include "perceptforge/error.hpp"
#include "perceptforge/stats.hpp"

namespace perceptforge {

namespace fs = std::filesystem;

namespace {

int Report(std::ostream &out, std::ostream &err, int code, const std::string &message) {
  err << "error: " << message << "\n";
  out << Json{{"error", message}, {"exit_code", code}}.dump() << "\n";
  return code;
}

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoFailure: return kExitIo;
    case ErrorCode::kValidationFailure: return kExitViolations;
    default: return kExitConfig;
  }
}

}  // namespace

int CmdGenerate(const GenerateArgs &args, std::ostream &out, std::ostream &err) {
  const auto start = std::chrono::steady_clock::now();
  Scenario scenario;
  try {
    ConfigOverrides overrides{args.seed, args.iterations, args.resolution};
    scenario = LoadScenario(args.configPath, overrides);
  } catch (const std::exception &e) {
    return Report(out, err, kExitConfig, e.what());
  }

  IterationRange range;
  try {
    range = ShardScenario(scenario.constants, args.workerIndex, args.workerCount);
  } catch (const Error &e) {
    return Report(out, err, kExitConfig, e.what());
  }

  std::error_code ec;
  if (fs::exists(args.outputDir, ec) && !fs::is_empty(args.outputDir, ec)) {
    if (!args.overwrite) {
      return Report(out, err, kExitIo, args.outputDir.string() + " is not empty (pass --overwrite to replace it)");
    }
    fs::remove_all(args.outputDir, ec);
    if (ec) return Report(out, err, kExitIo, "cannot clear " + args.outputDir.string() + ": " + ec.message());
  }

  DatasetSummary summary;
  try {
    DatasetWriter writer(args.outputDir);
    RunOptions options;
    options.range = range;
    if (!args.quiet) {
      options.progress = [&err](std::uint64_t done, std::uint64_t total) {
        err << "progress " << done << "/" << total << "\n";
      };
    }
    summary = RunScenario(scenario.constants, scenario.randomizers, scenario.env, scenario.labelers, writer, options);
  } catch (const Error &e) {
    return Report(out, err, ExitFor(e.code()), e.what());
  } catch (const std::exception &e) {
    return Report(out, err, kExitIo, e.what());
  }

  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << Json{{"captures", summary.captures},
              {"annotations", summary.annotations},
              {"metrics", summary.metrics},
              {"iteration_begin", range.begin},
              {"iteration_end", range.end},
              {"seed", scenario.constants.seed},
              {"output", args.outputDir.string()},
              {"elapsed_seconds", elapsed}}
             .dump()
      << "\n";
  return kExitOk;
}

int CmdValidate(const fs::path &dataset, std::ostream &out, std::ostream &err) {
  if (!fs::is_directory(dataset)) return Report(out, err, kExitIo, dataset.string() + " is not a directory");
  ValidationReport report;
  try {
    report = ValidateDataset(dataset);
  } catch (const std::exception &e) {
    return Report(out, err, kExitIo, e.what());
  }
  out << report.ToJson().dump() << "\n";
  for (const auto &v : report.violations) err << ToString(v.kind) << " " << v.file << ": " << v.detail << "\n";
  return report.ok() ? kExitOk : kExitViolations;
}

int CmdStats(const fs::path &dataset, bool perObject, std::ostream &out, std::ostream &err) {
  try {
    out << ComputeStats(dataset).ToJson(perObject).dump() << "\n";
  } catch (const std::exception &e) {
    return Report(out, err, kExitIo, e.what());
  }
  return kExitOk;
}

int CmdHash(const fs::path &dataset, std::ostream &out, std::ostream &err) {
  if (!fs::is_directory(dataset)) return Report(out, err, kExitIo, dataset.string() + " is not a directory");
  try {
    out << Json{{"hash", HashDirectory(dataset)}}.dump() << "\n";
  } catch (const std::exception &e) {
    return Report(out, err, kExitIo, e.what());
  }
  return kExitOk;
}

}  // namespace perceptforge
