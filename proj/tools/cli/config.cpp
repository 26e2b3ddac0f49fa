#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>

#include <toml.hpp>

#include "spherebot/presets.hpp"

namespace spherebot::cli {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view origin) : origin_(origin) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(origin_ + ": " + what);
  }

  const toml::table* section(const toml::table& root, const char* name,
                             bool required) const {
    const toml::node* node = root.get(name);
    if (node == nullptr) {
      if (required) fail(std::string("missing section [") + name + "]");
      return nullptr;
    }
    const toml::table* table = node->as_table();
    if (table == nullptr) fail(std::string("[") + name + "] must be a table");
    return table;
  }

  void only_keys(const toml::table& table, const char* section,
                 std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, value] : table) {
      bool known = false;
      for (std::string_view a : allowed) known = known || key.str() == a;
      if (!known) {
        fail(std::string("unknown key '") + std::string(key.str()) + "' in [" +
             section + "]");
      }
    }
  }

  std::optional<double> number(const toml::table& table, const char* section,
                               const char* key) const {
    const toml::node* node = table.get(key);
    if (node == nullptr) return std::nullopt;
    if (!node->is_number()) fail(key_name(section, key) + " must be a number");
    const double v = node->value<double>().value();
    if (!std::isfinite(v)) fail(key_name(section, key) + " must be finite");
    return v;
  }

  double required_number(const toml::table& table, const char* section,
                         const char* key) const {
    const auto v = number(table, section, key);
    if (!v) fail("missing " + key_name(section, key));
    return *v;
  }

  std::optional<std::size_t> count(const toml::table& table, const char* section,
                                   const char* key) const {
    const toml::node* node = table.get(key);
    if (node == nullptr) return std::nullopt;
    const auto v = node->value<std::int64_t>();
    if (!node->is_integer() || !v || *v < 1) {
      fail(key_name(section, key) + " must be a positive integer");
    }
    return static_cast<std::size_t>(*v);
  }

  std::optional<std::vector<double>> numbers(const toml::table& table,
                                             const char* section, const char* key,
                                             std::size_t expected = 0) const {
    const toml::node* node = table.get(key);
    if (node == nullptr) return std::nullopt;
    const toml::array* arr = node->as_array();
    if (arr == nullptr) fail(key_name(section, key) + " must be an array");
    std::vector<double> out;
    for (const toml::node& item : *arr) {
      if (!item.is_number()) fail(key_name(section, key) + " must hold numbers");
      const double v = item.value<double>().value();
      if (!std::isfinite(v)) fail(key_name(section, key) + " must be finite");
      out.push_back(v);
    }
    if (expected != 0 && out.size() != expected) {
      fail(key_name(section, key) + " must have " + std::to_string(expected) +
           " entries");
    }
    return out;
  }

  std::optional<Vec3> vec3(const toml::table& table, const char* section,
                           const char* key) const {
    const auto v = numbers(table, section, key, 3);
    if (!v) return std::nullopt;
    return Vec3((*v)[0], (*v)[1], (*v)[2]);
  }

  Rotation attitude_matrix(const std::vector<double>& entries,
                           const std::string& where) const {
    std::array<double, 9> a{};
    std::copy(entries.begin(), entries.end(), a.begin());
    try {
      return attitude_from_entries(a);
    } catch (const std::invalid_argument& e) {
      fail(where + ": " + e.what());
    }
  }

 private:
  static std::string key_name(const char* section, const char* key) {
    return std::string(section) + "." + key;
  }

  std::string origin_;
};

toml::table parse_document(std::string_view text, const Reader& reader) {
  try {
    return toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML syntax error at line " << e.source().begin.line << ": "
        << e.description();
    reader.fail(msg.str());
  }
}

}  // namespace

Rotation attitude_from_entries(const std::array<double, 9>& entries) {
  Mat3 m;
  for (int i = 0; i < 9; ++i) {
    if (!std::isfinite(entries[static_cast<std::size_t>(i)])) {
      throw std::invalid_argument("attitude has non-finite entries");
    }
    m(i / 3, i % 3) = entries[static_cast<std::size_t>(i)];
  }
  const double orth = (m.transpose() * m - Mat3::Identity()).norm();
  if (orth > kConfigAttitudeTolerance || m.determinant() <= 0.0) {
    throw std::invalid_argument(
        "attitude is not a rotation matrix (||R^T R - I||_F = " +
        std::to_string(orth) + ", det = " + std::to_string(m.determinant()) + ")");
  }
  return project_so3(m);
}

Rotation named_attitude(std::string_view name) {
  if (name == "identity") return Rotation::identity();
  if (name == "fig2") return fig2_initial_attitude();
  if (name == "fig3") return fig3_initial_attitude();
  throw std::invalid_argument("unknown attitude '" + std::string(name) +
                              "' (expected identity, fig2 or fig3)");
}

Scenario parse_scenario(std::string_view toml_text, std::string_view origin) {
  const Reader rd(origin);
  const toml::table doc = parse_document(toml_text, rd);
  for (const auto& [key, value] : doc) {
    const std::string_view k = key.str();
    if (k != "params" && k != "gains" && k != "initial" && k != "sim" && k != "grid") {
      rd.fail("unknown section [" + std::string(k) + "]");
    }
  }

  const toml::table& params = *rd.section(doc, "params", true);
  rd.only_keys(params, "params", {"radius", "mass", "inertia"});
  const toml::table& gains = *rd.section(doc, "gains", true);
  rd.only_keys(gains, "gains", {"kp", "kv"});
  const toml::table& initial = *rd.section(doc, "initial", true);
  rd.only_keys(initial, "initial", {"x", "y", "omega", "attitude", "axis", "angle"});
  const toml::table* sim = rd.section(doc, "sim", false);

  try {
    const auto inertia = rd.vec3(params, "params", "inertia");
    if (!inertia) rd.fail("missing params.inertia");
    const RobotParams robot(rd.required_number(params, "params", "radius"),
                            rd.number(params, "params", "mass").value_or(1.0),
                            Inertia(*inertia));
    const Gains g(rd.required_number(gains, "gains", "kp"),
                  rd.required_number(gains, "gains", "kv"));

    RobotState s;
    s.x = rd.required_number(initial, "initial", "x");
    s.y = rd.required_number(initial, "initial", "y");
    s.omega = rd.vec3(initial, "initial", "omega").value_or(Vec3::Zero());
    const auto matrix = rd.numbers(initial, "initial", "attitude", 9);
    const auto axis = rd.vec3(initial, "initial", "axis");
    const auto angle = rd.number(initial, "initial", "angle");
    if (matrix && (axis || angle)) {
      rd.fail("give initial.attitude or initial.axis/angle, not both");
    }
    if (axis.has_value() != angle.has_value()) {
      rd.fail("initial.axis and initial.angle must be given together");
    }
    if (matrix) {
      s.attitude = rd.attitude_matrix(*matrix, "initial.attitude");
    } else if (axis) {
      s.attitude = Rotation::about_axis(*axis, *angle);
    }

    SimConfig cfg;
    if (sim != nullptr) {
      rd.only_keys(*sim, "sim",
                   {"dt", "t_final", "record_every", "reproject_every"});
      cfg.dt = rd.number(*sim, "sim", "dt").value_or(cfg.dt);
      cfg.t_final = rd.number(*sim, "sim", "t_final").value_or(cfg.t_final);
      cfg.record_every = rd.count(*sim, "sim", "record_every").value_or(cfg.record_every);
      cfg.reproject_every =
          rd.count(*sim, "sim", "reproject_every").value_or(cfg.reproject_every);
    }

    Scenario sc{robot, g, s, cfg};
    sc.validate();
    return sc;
  } catch (const std::invalid_argument& e) {
    rd.fail(e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read config file '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.string());
}

SweepGrid parse_grid(std::string_view toml_text, std::string_view origin) {
  const Reader rd(origin);
  const toml::table doc = parse_document(toml_text, rd);
  SweepGrid grid;
  const toml::table* section = rd.section(doc, "grid", false);
  if (section == nullptr) return grid;
  rd.only_keys(*section, "grid", {"kp", "kv", "dt", "x0", "y0", "attitude", "omega0"});

  grid.kp = rd.numbers(*section, "grid", "kp").value_or(std::vector<double>{});
  grid.kv = rd.numbers(*section, "grid", "kv").value_or(std::vector<double>{});
  grid.dt = rd.numbers(*section, "grid", "dt").value_or(std::vector<double>{});
  grid.x0 = rd.numbers(*section, "grid", "x0").value_or(std::vector<double>{});
  grid.y0 = rd.numbers(*section, "grid", "y0").value_or(std::vector<double>{});

  if (const toml::node* node = section->get("attitude")) {
    const toml::array* arr = node->as_array();
    if (arr == nullptr) rd.fail("grid.attitude must be an array");
    for (const toml::node& item : *arr) {
      if (const auto name = item.value<std::string>(); name && item.is_string()) {
        try {
          grid.attitude.push_back(named_attitude(*name));
        } catch (const std::invalid_argument& e) {
          rd.fail(std::string("grid.attitude: ") + e.what());
        }
      } else if (const toml::array* m = item.as_array()) {
        std::vector<double> entries;
        for (const toml::node& v : *m) {
          if (!v.is_number()) rd.fail("grid.attitude matrices must hold numbers");
          entries.push_back(v.value<double>().value());
        }
        if (entries.size() != 9) rd.fail("grid.attitude matrices need 9 entries");
        grid.attitude.push_back(rd.attitude_matrix(entries, "grid.attitude"));
      } else {
        rd.fail("grid.attitude entries must be names or 9-entry arrays");
      }
    }
  }
  if (const toml::node* node = section->get("omega0")) {
    const toml::array* arr = node->as_array();
    if (arr == nullptr) rd.fail("grid.omega0 must be an array of 3-vectors");
    for (const toml::node& item : *arr) {
      const toml::array* v = item.as_array();
      if (v == nullptr || v->size() != 3) rd.fail("grid.omega0 entries must be 3-vectors");
      Vec3 w;
      for (int i = 0; i < 3; ++i) {
        const toml::node& c = *v->get(static_cast<std::size_t>(i));
        if (!c.is_number()) rd.fail("grid.omega0 entries must hold numbers");
        w[i] = c.value<double>().value();
      }
      grid.omega0.push_back(w);
    }
  }
  return grid;
}

}  // namespace spherebot::cli
