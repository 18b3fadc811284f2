// Copyright 2026 The shadow4d Authors.
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


#include "shadow4d/scene_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "shadow4d/error.hpp"
#include "shadow4d/expr.hpp"

namespace shadow4d {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw StructuralError("scene file: " + what); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad(std::string("missing '") + key + "'");
  return obj.at(key);
}

Rational exact_number(const json& v) {
  if (v.is_number_integer()) return parse_rational(v.dump());
  if (v.is_number_float()) return parse_rational(v.dump());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  bad("expected a number, got " + v.dump());
}

std::array<double, 3> triple(const json& v) {
  if (!v.is_array() || v.size() != 3) bad("grid bounds need three numbers");
  return {exact_number(v[0]).get_d(), exact_number(v[1]).get_d(), exact_number(v[2]).get_d()};
}

// Re-anchors expression parse errors to the scene file's surface entry.
Polynomial parse_surface(const std::string& name, const std::string& expr, const VariableSpace& space) {
  try {
    return parse_expression(expr, space);
  } catch (const ParseError& e) {
    throw ParseError("surface '" + name + "': " + e.message(), e.line(), e.column());
  }
}

}  // namespace

const Hypersurface& SceneFile::surface(std::string_view name) const {
  for (const auto* s : surfaces()) {
    if (s->name == name) return *s;
  }
  throw StructuralError("no surface named '" + std::string(name) + "'");
}

std::vector<const Hypersurface*> SceneFile::surfaces() const {
  std::vector<const Hypersurface*> out;
  for (const auto& s : scene.factors) out.push_back(&s);
  for (const auto& s : scene.receivers) out.push_back(&s);
  return out;
}

namespace {

SceneFile build_scene(const json& doc) {
  SceneFile out;
  out.name = doc.value("name", std::string("scene"));

  std::vector<std::string> vars;
  for (const auto& v : field(doc, "variables")) {
    if (!v.is_string()) bad("variable names must be strings");
    vars.push_back(v.get<std::string>());
  }
  if (vars.empty()) bad("no variables");
  out.scene.space = VariableSpace(vars);

  std::set<std::string> names;
  for (const auto& s : field(doc, "surfaces")) {
    const std::string name = field(s, "name").get<std::string>();
    if (!names.insert(name).second) bad("duplicate surface '" + name + "'");
    const std::string role = s.value("role", std::string("factor"));
    Hypersurface h(name, parse_surface(name, field(s, "expr").get<std::string>(), out.scene.space));
    if (role == "factor") {
      out.scene.factors.push_back(std::move(h));
    } else if (role == "receiver") {
      out.scene.receivers.push_back(std::move(h));
    } else {
      bad("unknown role '" + role + "'");
    }
  }

  if (doc.contains("lights")) {
    for (const auto& l : doc.at("lights")) {
      std::vector<Rational> coords;
      for (const auto& c : field(l, "coords")) coords.push_back(exact_number(c));
      const bool homogeneous = l.value("homogeneous", false);
      const std::size_t expected = vars.size() + (homogeneous ? 1 : 0);
      if (coords.size() != expected) bad("light coordinate count does not match the variables");
      out.scene.lights.push_back(homogeneous ? LightSource(coords) : LightSource::affine(coords));
      out.light_names.push_back(l.value("name", "L" + std::to_string(out.light_names.size())));
    }
  }

  if (doc.contains("camera")) out.scene.camera = PerspectiveCamera(exact_number(field(doc.at("camera"), "d")));

  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    GridSpec spec;
    spec.min = triple(field(g, "min"));
    spec.max = triple(field(g, "max"));
    spec.resolution = g.value("resolution", spec.resolution);
    spec.validate();
    out.grid = spec;
  }

  if (doc.contains("shadows")) {
    for (const auto& pair : doc.at("shadows")) {
      if (!pair.is_array() || pair.size() != 2) bad("shadow entries are [caster, target] pairs");
      out.shadows.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  } else {
    for (const auto& c : out.scene.factors) {
      for (const auto& r : out.scene.receivers) out.shadows.emplace_back(c.name, r.name);
    }
  }
  for (const auto& [c, t] : out.shadows) {
    out.surface(c);
    out.surface(t);
  }
  out.scene.validate();
  return out;
}

}  // namespace

SceneFile parse_scene(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is 1-based offset of the failure.
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("invalid JSON", line, col);
  }
  try {
    return build_scene(doc);
  } catch (const json::exception& e) {
    bad(std::string("malformed entry (") + e.what() + ")");
  }
}

SceneFile load_scene(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scene file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

}  // namespace shadow4d
