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

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <regex>

#include "perceptforge/commands.hpp"

namespace {

std::optional<std::pair<int, int>> ParseResolution(const std::string &text) {
  std::smatch m;
  static const std::regex pattern("([0-9]+)x([0-9]+)");
  if (!std::regex_match(text, m, pattern)) return std::nullopt;
  return std::make_pair(std::stoi(m[1]), std::stoi(m[2]));
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Synthetic dataset generator with pixel-exact labels"};
  app.require_subcommand(1);

  perceptforge::GenerateArgs gen;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  std::string resolution;
  int threads = 0;
  auto *generate = app.add_subcommand("generate", "Run a scenario and write a dataset");
  generate->add_option("--config", gen.configPath, "Scenario config JSON")->required();
  generate->add_option("--out", gen.outputDir, "Output dataset directory")->required();
  auto *seedOpt = generate->add_option("--seed", seed, "Override the scenario seed");
  auto *iterOpt = generate->add_option("--iterations", iterations, "Override the iteration count")
                      ->check(CLI::PositiveNumber);
  generate->add_option("--worker-index", gen.workerIndex, "0-based worker index");
  generate->add_option("--worker-count", gen.workerCount, "Number of workers")->check(CLI::PositiveNumber);
  auto *resOpt = generate->add_option("--resolution", resolution, "Override the resolution, WIDTHxHEIGHT");
  generate->add_option("--threads", threads, "Cap worker threads (same as PERCEPTFORGE_THREADS)")
      ->check(CLI::PositiveNumber);
  generate->add_flag("--overwrite", gen.overwrite, "Replace a non-empty output directory");
  generate->add_flag("--quiet", gen.quiet, "No progress lines");

  std::string dataset;
  auto *validate = app.add_subcommand("validate", "Check a dataset's schema, references and files");
  validate->add_option("dataset", dataset, "Dataset directory")->required();

  bool perObject = false;
  auto *stats = app.add_subcommand("stats", "Object counts and relative sizes of a dataset");
  stats->add_option("dataset", dataset, "Dataset directory")->required();
  stats->add_flag("--per-object", perObject, "Include every object's size");

  auto *hash = app.add_subcommand("hash", "Content hash of a dataset directory");
  hash->add_option("dataset", dataset, "Dataset directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    // --help and --version print text and succeed; anything else still
    // leaves one JSON document on stdout.
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e, std::cerr, std::cerr);
    std::cout << "{\"error\":\"invalid arguments\",\"exit_code\":1}\n";
    return perceptforge::kExitConfig;
  }

  if (generate->parsed()) {
    if (*seedOpt) gen.seed = seed;
    if (*iterOpt) gen.iterations = iterations;
    if (*resOpt) {
      gen.resolution = ParseResolution(resolution);
      if (!gen.resolution) {
        std::cerr << "error: --resolution expects WIDTHxHEIGHT\n";
        std::cout << "{\"error\":\"bad resolution\",\"exit_code\":1}\n";
        return perceptforge::kExitConfig;
      }
    }
    if (gen.workerIndex >= gen.workerCount) {
      std::cerr << "error: --worker-index must be below --worker-count\n";
      std::cout << "{\"error\":\"worker index out of range\",\"exit_code\":1}\n";
      return perceptforge::kExitConfig;
    }
    if (threads > 0) setenv("PERCEPTFORGE_THREADS", std::to_string(threads).c_str(), 1);
    return perceptforge::CmdGenerate(gen, std::cout, std::cerr);
  }
  if (validate->parsed()) return perceptforge::CmdValidate(dataset, std::cout, std::cerr);
  if (stats->parsed()) return perceptforge::CmdStats(dataset, perObject, std::cout, std::cerr);
  return perceptforge::CmdHash(dataset, std::cout, std::cerr);
}
