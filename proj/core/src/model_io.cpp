#include "rpd/model_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "rpd/errors.hpp"

namespace rpd {

namespace {

std::string json_double(double v) {
  std::string s = format_double(v);
  if (s.find_first_of(".eEn") == std::string::npos) {
    s += ".0";
  }
  return s;
}

void write_array(std::ostream& out, std::span<const double> values) {
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) {
      out << ", ";
    }
    out << json_double(values[i]);
  }
  out << ']';
}

std::string quoted(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ParseError("model " + where + ": " + what);
}

const json& field(const json& obj, const std::string& where, const char* key) {
  if (!obj.is_object()) {
    schema_error(where, "expected an object");
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    schema_error(where + "/" + key, "missing field");
  }
  return *it;
}

std::uint64_t get_unsigned(const json& obj, const std::string& where, const char* key) {
  const json& v = field(obj, where, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    schema_error(where + "/" + key, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& where, const char* key) {
  const json& v = field(obj, where, key);
  if (!v.is_boolean()) {
    schema_error(where + "/" + key, "expected a boolean");
  }
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& where, const char* key) {
  const json& v = field(obj, where, key);
  if (!v.is_string()) {
    schema_error(where + "/" + key, "expected a string");
  }
  return v.get<std::string>();
}

std::vector<double> get_doubles(const json& obj, const std::string& where, const char* key,
                                std::size_t expected) {
  const json& v = field(obj, where, key);
  if (!v.is_array() || v.size() != expected) {
    schema_error(where + "/" + key, "expected an array of " + std::to_string(expected) + " numbers");
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      schema_error(where + "/" + key + "/" + std::to_string(i), "expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

CenterPolicy get_policy(const json& obj, const std::string& where, const char* key) {
  try {
    return parse_center_policy(get_string(obj, where, key));
  } catch (const InvalidArgument& e) {
    schema_error(where + "/" + key, e.what());
  }
}

} // namespace

std::string serialize(const RpdModel& model) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"version\": " << kModelFormatVersion << ",\n";
  out << "  \"d\": " << model.dim() << ",\n";
  out << "  \"m\": " << model.directions_per_class() << ",\n";
  out << "  \"ell\": " << model.ell() << ",\n";
  out << "  \"master_seed\": " << model.seed() << ",\n";
  out << "  \"shared_Y\": " << (model.shared_directions() ? "true" : "false") << ",\n";
  out << "  \"policy\": " << quoted(to_string(model.policy())) << ",\n";
  out << "  \"classes\": [";
  for (std::size_t k = 0; k < model.class_count(); ++k) {
    const ClassDescriptor& c = model.class_at(k);
    out << (k == 0 ? "\n" : ",\n");
    out << "    {\n";
    out << "      \"label\": " << c.label << ",\n";
    out << "      \"n\": " << c.count << ",\n";
    out << "      \"directions\": ";
    write_array(out, c.polytope.directions().data());
    out << ",\n      \"offsets\": ";
    write_array(out, c.polytope.offsets());
    out << ",\n      \"central_point\": ";
    write_array(out, c.polytope.center()->point);
    out << ",\n      \"policy\": " << quoted(to_string(c.polytope.center()->policy)) << ",\n";
    out << "      \"fallback_applied\": " << (c.fallback_applied ? "true" : "false") << "\n";
    out << "    }";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

RpdModel deserialize(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("model: malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) {
    schema_error("/", "expected an object");
  }
  const json& version = field(doc, "", "version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kModelFormatVersion) {
    throw UnsupportedVersion("model /version: unsupported version " + version.dump() +
                             " (expected " + std::to_string(kModelFormatVersion) + ")");
  }
  const std::size_t d = get_unsigned(doc, "", "d");
  const std::size_t m = get_unsigned(doc, "", "m");
  const std::size_t ell = get_unsigned(doc, "", "ell");
  const std::uint64_t seed = get_unsigned(doc, "", "master_seed");
  const bool shared = get_bool(doc, "", "shared_Y");
  const CenterPolicy policy =
      doc.contains("policy") ? get_policy(doc, "", "policy") : CenterPolicy::SampleMean;
  if (d == 0 || m == 0 || ell == 0) {
    schema_error("/", "d, m and ell must be positive");
  }
  const json& cls = field(doc, "", "classes");
  if (!cls.is_array() || cls.empty()) {
    schema_error("/classes", "expected a nonempty array");
  }
  std::vector<ClassDescriptor> classes;
  for (std::size_t k = 0; k < cls.size(); ++k) {
    const std::string where = "/classes/" + std::to_string(k);
    const json& c = cls[k];
    ClassDescriptor desc;
    const json& label = field(c, where, "label");
    if (!label.is_number_integer() || label.get<std::int64_t>() < 0) {
      schema_error(where + "/label", "expected a nonnegative integer");
    }
    desc.label = label.get<int>();
    desc.count = get_unsigned(c, where, "n");
    try {
      DirectionSet dirs(d, get_doubles(c, where, "directions", m * d));
      HPolytope poly(std::move(dirs), get_doubles(c, where, "offsets", m));
      desc.polytope = poly.with_center(
          {get_doubles(c, where, "central_point", d), get_policy(c, where, "policy")});
    } catch (const InvalidArgument& e) {
      schema_error(where, e.what());
    }
    desc.fallback_applied = get_bool(c, where, "fallback_applied");
    classes.push_back(std::move(desc));
  }
  try {
    return RpdModel(d, m, ell, seed, shared, policy, std::move(classes));
  } catch (const std::exception& e) {
    schema_error("/", e.what());
  }
}

void save_model(const RpdModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(path.string() + ": cannot open file for writing");
  }
  out << serialize(model);
  if (!out) {
    throw IoError(path.string() + ": write failed");
  }
}

RpdModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path.string() + ": cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

} // namespace rpd
