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

#include "perceptforge/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

#include "perceptforge/error.hpp"
#include "perceptforge/primitives.hpp"

namespace perceptforge {

namespace {

[[noreturn]] void Fail(const std::string &where, const std::string &what) {
  throw Error(ErrorCode::kConfig, where + ": " + what);
}

void CheckKeys(const Json &j, const std::string &where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) Fail(where, "expected an object");
  for (const auto &[key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) Fail(where, "unknown key '" + key + "'");
  }
}

double Number(const Json &j, const std::string &where) {
  if (!j.is_number()) Fail(where, "expected a number");
  return j.get<double>();
}

std::uint64_t Unsigned(const Json &j, const std::string &where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    Fail(where, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

Vec3 ReadVec3(const Json &j, const std::string &where) {
  if (!j.is_array() || j.size() != 3) Fail(where, "expected [x, y, z]");
  return {Number(j[0], where), Number(j[1], where), Number(j[2], where)};
}

Range ReadRange(const Json &j, const std::string &where) {
  if (!j.is_array() || j.size() != 2) Fail(where, "expected [lo, hi]");
  return {Number(j[0], where), Number(j[1], where)};
}

template <typename T, typename F>
void Optional(const Json &j, const char *key, T &target, F read) {
  if (j.contains(key)) target = read(j.at(key), key);
}

Camera ParseCamera(const Json &j) {
  CheckKeys(j, "camera", {"width", "height", "vertical_fov_deg", "near", "far", "position", "rotation_euler_deg"});
  Camera c;
  if (j.contains("width")) c.width = static_cast<int>(Unsigned(j["width"], "camera.width"));
  if (j.contains("height")) c.height = static_cast<int>(Unsigned(j["height"], "camera.height"));
  if (j.contains("vertical_fov_deg")) c.verticalFovDeg = Number(j["vertical_fov_deg"], "camera.vertical_fov_deg");
  if (j.contains("near")) c.nearClip = Number(j["near"], "camera.near");
  if (j.contains("far")) c.farClip = Number(j["far"], "camera.far");
  if (j.contains("position")) c.pose.translation = ReadVec3(j["position"], "camera.position");
  if (j.contains("rotation_euler_deg")) {
    c.pose.rotation = Quat::FromEulerDeg(ReadVec3(j["rotation_euler_deg"], "camera.rotation_euler_deg"));
  }
  return c;
}

ColorF ReadColorF(const Json &j, const std::string &where) {
  const Vec3 v = ReadVec3(j, where);
  return {static_cast<float>(v.x), static_cast<float>(v.y), static_cast<float>(v.z)};
}

SceneObject ParseObject(const Json &j, std::size_t index) {
  const std::string where = "scene.objects[" + std::to_string(index) + "]";
  CheckKeys(j, where, {"primitive", "position", "rotation_euler_deg", "scale", "label", "color", "hue_shift_deg",
                       "background", "keypoints"});
  if (!j.contains("primitive") || !j["primitive"].is_string()) Fail(where, "missing primitive");
  const auto kind = ParsePrimitiveKind(j["primitive"].get<std::string>());
  if (!kind) Fail(where, "unknown primitive '" + j["primitive"].get<std::string>() + "'");
  SceneObject obj;
  obj.mesh = SharedPrimitive(*kind);
  if (j.contains("position")) obj.transform.translation = ReadVec3(j["position"], where + ".position");
  if (j.contains("rotation_euler_deg")) {
    obj.transform.rotation = Quat::FromEulerDeg(ReadVec3(j["rotation_euler_deg"], where + ".rotation_euler_deg"));
  }
  if (j.contains("scale")) {
    obj.transform.scale = j["scale"].is_number() ? Vec3{1, 1, 1} * Number(j["scale"], where + ".scale")
                                                 : ReadVec3(j["scale"], where + ".scale");
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) Fail(where, "label must be a string");
    obj.label = j["label"].get<std::string>();
  }
  if (j.contains("color")) obj.baseColor = ReadColorF(j["color"], where + ".color");
  if (j.contains("hue_shift_deg")) obj.hueShiftDeg = Number(j["hue_shift_deg"], where + ".hue_shift_deg");
  if (j.contains("background")) obj.isBackground = j["background"].get<bool>();
  if (j.contains("keypoints")) {
    auto kp = std::make_shared<KeypointTemplate>();
    for (const auto &node : j["keypoints"]) {
      CheckKeys(node, where + ".keypoints", {"name", "position"});
      kp->nodes.emplace_back(node.at("name").get<std::string>(), ReadVec3(node.at("position"), where + ".keypoints"));
    }
    kp->Validate();
    obj.keypoints = std::move(kp);
  }
  obj.instanceId = static_cast<std::uint32_t>(index + 1);  // provisional; SceneBuilder renumbers
  obj.Validate();
  return obj;
}

DirectionalLight ParseLight(const Json &j, std::size_t index) {
  const std::string where = "scene.lights[" + std::to_string(index) + "]";
  CheckKeys(j, where, {"direction", "color", "intensity", "background_only"});
  DirectionalLight light;
  if (j.contains("direction")) light.direction = Normalized(ReadVec3(j["direction"], where + ".direction"));
  if (j.contains("color")) light.color = ReadColorF(j["color"], where + ".color");
  if (j.contains("intensity")) light.intensity = Number(j["intensity"], where + ".intensity");
  if (j.contains("background_only")) light.backgroundOnly = j["background_only"].get<bool>();
  light.Validate();
  return light;
}

PostProcessSettings ParsePost(const Json &j) {
  CheckKeys(j, "scene.post", {"contrast", "saturation", "blur_sigma"});
  PostProcessSettings post;
  if (j.contains("contrast")) post.contrast = Number(j["contrast"], "scene.post.contrast");
  if (j.contains("saturation")) post.saturation = Number(j["saturation"], "scene.post.saturation");
  if (j.contains("blur_sigma")) post.blurSigma = Number(j["blur_sigma"], "scene.post.blur_sigma");
  return post;
}

LabelConfig ParseLabelList(const Json &j) {
  std::vector<LabelEntry> entries;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "labels[" + std::to_string(i) + "]";
    CheckKeys(j[i], where, {"label", "class_id", "color"});
    LabelEntry e;
    e.label = j[i].at("label").get<std::string>();
    e.classId = static_cast<std::uint32_t>(Unsigned(j[i].at("class_id"), where + ".class_id"));
    const Json &c = j[i].at("color");
    if (!c.is_array() || c.size() != 3) Fail(where, "color must be [r, g, b] bytes");
    for (int k = 0; k < 3; ++k) {
      const auto v = Unsigned(c[k], where + ".color");
      if (v > 255) Fail(where, "color components must be <= 255");
    }
    e.color = {c[0].get<std::uint8_t>(), c[1].get<std::uint8_t>(), c[2].get<std::uint8_t>()};
    entries.push_back(std::move(e));
  }
  return LabelConfig(std::move(entries));
}

const std::set<std::string> kSynthDetRandomizers = {"background_wall", "foreground_objects", "occluders", "lights",
                                                    "post_process"};

}  // namespace

Sampler ParseSampler(const Json &j) {
  if (j.is_number()) return ConstantSampler{j.get<double>()};
  if (!j.is_object() || !j.contains("kind")) Fail("sampler", "expected a number or an object with 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  Sampler s;
  if (kind == "constant") {
    CheckKeys(j, "sampler", {"kind", "value"});
    s = ConstantSampler{Number(j.at("value"), "sampler.value")};
  } else if (kind == "uniform") {
    CheckKeys(j, "sampler", {"kind", "lo", "hi"});
    s = UniformSampler{Number(j.at("lo"), "sampler.lo"), Number(j.at("hi"), "sampler.hi")};
  } else if (kind == "normal") {
    CheckKeys(j, "sampler", {"kind", "mean", "std_dev", "lo", "hi"});
    NormalSampler n;
    n.mean = Number(j.at("mean"), "sampler.mean");
    n.stdDev = Number(j.at("std_dev"), "sampler.std_dev");
    if (j.contains("lo")) n.lo = Number(j["lo"], "sampler.lo");
    if (j.contains("hi")) n.hi = Number(j["hi"], "sampler.hi");
    s = n;
  } else if (kind == "curve") {
    CheckKeys(j, "sampler", {"kind", "points"});
    CurveSampler c;
    for (const auto &p : j.at("points")) {
      if (!p.is_array() || p.size() != 2) Fail("sampler.points", "expected [x, density] pairs");
      c.points.emplace_back(Number(p[0], "sampler.points"), Number(p[1], "sampler.points"));
    }
    s = c;
  } else {
    Fail("sampler", "unknown kind '" + kind + "'");
  }
  try {
    ValidateSampler(s);
  } catch (const Error &e) {
    Fail("sampler", e.what());
  }
  return s;
}

SynthDetConfig ParseSynthDetConfig(const Json &j) {
  SynthDetConfig c;
  CheckKeys(j, "synthdet",
            {"catalog_size", "asset_seed", "foreground_count", "foreground_scale", "placement_width",
             "placement_height", "placement_depth", "jitter_fraction", "group_rotation_deg",
             "background_texture_count", "wall_depth", "wall_spacing", "wall_coverage", "occluder_density",
             "occluder_grid", "occluder_depth", "occluder_scale", "lights", "light1_yaw", "light1_pitch",
             "background_flash_probability", "contrast", "saturation", "blur_probability", "blur_sigma"});
  auto num = [](const Json &v, const char *k) { return Number(v, std::string("synthdet.") + k); };
  auto range = [](const Json &v, const char *k) { return ReadRange(v, std::string("synthdet.") + k); };
  auto u32 = [](const Json &v, const char *k) {
    return static_cast<std::uint32_t>(Unsigned(v, std::string("synthdet.") + k));
  };
  Optional(j, "catalog_size", c.catalogSize, u32);
  Optional(j, "asset_seed", c.assetSeed, [](const Json &v, const char *k) {
    return Unsigned(v, std::string("synthdet.") + k);
  });
  Optional(j, "foreground_count", c.foregroundCount, range);
  Optional(j, "foreground_scale", c.foregroundScale, range);
  Optional(j, "placement_width", c.placementWidth, num);
  Optional(j, "placement_height", c.placementHeight, num);
  Optional(j, "placement_depth", c.placementDepth, num);
  Optional(j, "jitter_fraction", c.jitterFraction, num);
  Optional(j, "group_rotation_deg", c.groupRotationDeg, [](const Json &v, const char *k) {
    return ReadVec3(v, std::string("synthdet.") + k);
  });
  Optional(j, "background_texture_count", c.backgroundTextureCount, u32);
  Optional(j, "wall_depth", c.wallDepth, num);
  Optional(j, "wall_spacing", c.wallSpacing, num);
  Optional(j, "wall_coverage", c.wallCoverage, num);
  Optional(j, "occluder_density", c.occluderDensity, num);
  Optional(j, "occluder_grid", c.occluderGrid, u32);
  Optional(j, "occluder_depth", c.occluderDepth, range);
  Optional(j, "occluder_scale", c.occluderScale, range);
  Optional(j, "light1_yaw", c.light1Yaw, range);
  Optional(j, "light1_pitch", c.light1Pitch, range);
  Optional(j, "background_flash_probability", c.backgroundFlashProbability, num);
  Optional(j, "contrast", c.contrast, range);
  Optional(j, "saturation", c.saturation, range);
  Optional(j, "blur_probability", c.blurProbability, num);
  Optional(j, "blur_sigma", c.blurSigma, range);
  if (j.contains("lights")) {
    const Json &lights = j["lights"];
    if (!lights.is_array() || lights.size() != 4) Fail("synthdet.lights", "expected exactly four light entries");
    for (std::size_t i = 0; i < 4; ++i) {
      const std::string where = "synthdet.lights[" + std::to_string(i) + "]";
      CheckKeys(lights[i], where, {"direction", "intensity", "color"});
      if (lights[i].contains("direction")) c.lights[i].direction = ReadVec3(lights[i]["direction"], where);
      if (lights[i].contains("intensity")) c.lights[i].intensity = ReadRange(lights[i]["intensity"], where);
      if (lights[i].contains("color")) c.lights[i].color = ReadRange(lights[i]["color"], where);
    }
  }
  try {
    c.Validate();
  } catch (const Error &e) {
    Fail("synthdet", e.detail());
  }
  return c;
}

static Scenario BuildScenarioUnchecked(const Json &config, const ConfigOverrides &overrides) {
  CheckKeys(config, "config",
            {"constants", "camera", "labels", "unknown_label_policy", "labelers", "scene", "synthdet", "randomizers"});
  Scenario out;

  if (config.contains("constants")) {
    const Json &c = config["constants"];
    CheckKeys(c, "constants", {"seed", "iterations", "frames_per_iteration"});
    if (c.contains("seed")) out.constants.seed = Unsigned(c["seed"], "constants.seed");
    if (c.contains("iterations")) out.constants.iterationCount = Unsigned(c["iterations"], "constants.iterations");
    if (c.contains("frames_per_iteration")) {
      out.constants.framesPerIteration =
          static_cast<std::uint32_t>(Unsigned(c["frames_per_iteration"], "constants.frames_per_iteration"));
    }
  }
  if (overrides.seed) out.constants.seed = *overrides.seed;
  if (overrides.iterations) out.constants.iterationCount = *overrides.iterations;
  try {
    out.constants.Validate();
  } catch (const Error &e) {
    Fail("constants", e.detail());
  }

  Scene base;
  if (config.contains("camera")) base.camera = ParseCamera(config["camera"]);
  if (overrides.resolution) {
    base.camera.width = overrides.resolution->first;
    base.camera.height = overrides.resolution->second;
  }
  try {
    base.camera.Validate();
  } catch (const Error &e) {
    Fail("camera", e.detail());
  }

  PostProcessSettings post;
  if (config.contains("scene")) {
    const Json &s = config["scene"];
    CheckKeys(s, "scene", {"objects", "lights", "post"});
    if (s.contains("objects")) {
      for (std::size_t i = 0; i < s["objects"].size(); ++i) base.objects.push_back(ParseObject(s["objects"][i], i));
    }
    if (s.contains("lights")) {
      for (std::size_t i = 0; i < s["lights"].size(); ++i) base.lights.push_back(ParseLight(s["lights"][i], i));
    }
    if (s.contains("post")) post = ParsePost(s["post"]);
  }

  // The SynthDet assets are only built when something refers to them.
  std::optional<SynthDetScenario> synthdet;
  const bool wantsCatalog = config.contains("labels") && config["labels"].is_string();
  bool wantsRandomizers = false;
  if (config.contains("randomizers")) {
    for (const auto &r : config["randomizers"]) {
      wantsRandomizers = wantsRandomizers || kSynthDetRandomizers.count(r.value("type", std::string()));
    }
  }
  if (wantsCatalog || wantsRandomizers || config.contains("synthdet")) {
    synthdet = MakeSynthDetScenario(config.contains("synthdet") ? ParseSynthDetConfig(config["synthdet"])
                                                                : SynthDetConfig{});
  }

  if (config.contains("labels")) {
    const Json &l = config["labels"];
    if (l.is_string()) {
      if (l.get<std::string>() != "synthdet_catalog") Fail("labels", "unknown label set '" + l.get<std::string>() + "'");
      out.labels = synthdet->labels;
    } else if (l.is_array()) {
      try {
        out.labels = std::make_shared<const LabelConfig>(ParseLabelList(l));
      } catch (const Error &e) {
        Fail("labels", e.detail());
      }
    } else {
      Fail("labels", "expected \"synthdet_catalog\" or a list of entries");
    }
  } else {
    out.labels = std::make_shared<const LabelConfig>();
  }

  UnknownLabelPolicy policy = UnknownLabelPolicy::kFail;
  if (config.contains("unknown_label_policy")) {
    const std::string p = config["unknown_label_policy"].get<std::string>();
    if (p == "skip") {
      policy = UnknownLabelPolicy::kSkip;
    } else if (p != "fail") {
      Fail("unknown_label_policy", "expected \"fail\" or \"skip\"");
    }
  }

  if (config.contains("labelers")) {
    std::set<std::string> seen;
    for (const auto &name : config["labelers"]) {
      const std::string n = name.get<std::string>();
      const auto kind = ParseLabelerKind(n);
      if (!kind) Fail("labelers", "unknown labeler '" + n + "'");
      if (!seen.insert(n).second) Fail("labelers", "labeler '" + n + "' listed twice");
      out.labelers.push_back(MakeLabeler(*kind, out.labels, policy));
    }
  }

  if (config.contains("randomizers")) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < config["randomizers"].size(); ++i) {
      const Json &r = config["randomizers"][i];
      const std::string where = "randomizers[" + std::to_string(i) + "]";
      CheckKeys(r, where, {"type", "parameters"});
      const std::string type = r.value("type", std::string());
      if (!kSynthDetRandomizers.count(type)) Fail(where, "unknown randomizer type '" + type + "'");
      if (!seen.insert(type).second) Fail(where, "randomizer '" + type + "' listed twice");
      std::shared_ptr<Randomizer> chosen;
      for (const auto &candidate : synthdet->randomizers) {
        if (candidate->kind() == type) chosen = candidate;
      }
      if (r.contains("parameters")) {
        for (const auto &[name, spec] : r["parameters"].items()) {
          std::vector<Sampler> components;
          if (spec.is_array()) {
            for (const auto &c : spec) components.push_back(ParseSampler(c));
          } else {
            components.push_back(ParseSampler(spec));
          }
          try {
            chosen->OverrideParameter(name, std::move(components));
          } catch (const Error &e) {
            Fail(where, e.detail());
          }
        }
      }
      out.randomizers.push_back(std::move(chosen));
    }
  }

  try {
    out.env = SceneBuilder(std::move(base), post);
  } catch (const Error &e) {
    Fail("scene", e.detail());
  }
  return out;
}

Scenario BuildScenario(const Json &config, const ConfigOverrides &overrides) {
  try {
    return BuildScenarioUnchecked(config, overrides);
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kConfig, std::string("config: ") + e.what());
  }
}

Scenario LoadScenario(const std::filesystem::path &path, const ConfigOverrides &overrides) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kConfig, path.string() + ": " + e.what());
  }
  return BuildScenario(j, overrides);
}

}  // namespace perceptforge
