#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "jordan_mg/problems.hpp"

namespace jmg {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& path, const std::string& what) { throw SchemaError(path + ": " + what); }

void only_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) schema(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema(path + "." + key, "missing field");
  return *it;
}

std::size_t dim_value(const json& dims, const std::string& key) {
  const json& v = field(dims, "dims", key);
  if (!v.is_number_integer()) schema("dims." + key, "expected a positive integer");
  const auto d = v.get<long long>();
  if (d <= 0) schema("dims." + key, "expected a positive integer, got " + std::to_string(d));
  return static_cast<std::size_t>(d);
}

Eigen::VectorXd number_array(const json& data, const std::string& key, std::size_t expected) {
  const std::string path = "data." + key;
  const json& v = field(data, "data", key);
  if (!v.is_array()) schema(path, "expected an array of numbers");
  if (v.size() != expected) {
    schema(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(expected));
  for (std::size_t k = 0; k < expected; ++k) {
    if (!v[k].is_number()) schema(path + "[" + std::to_string(k) + "]", "expected a number");
    out[static_cast<Eigen::Index>(k)] = v[k].get<double>();
  }
  return out;
}

Eigen::MatrixXd number_matrix(const json& data, const std::string& key, std::size_t rows, std::size_t cols) {
  const Eigen::VectorXd flat = number_array(data, key, rows * cols);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = flat[static_cast<Eigen::Index>(i * cols + j)];
    }
  }
  return m;
}

json flat(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back(m(i, j));
  }
  return a;
}

json flat(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

// Builder messages look like "P: column 2 is zero"; prefix them with "data.".
[[noreturn]] void rethrow_as_schema(const InvalidInstance& e) { throw SchemaError(std::string("data.") + e.what()); }

InstanceSpec parse_spec(const json& doc) {
  if (!doc.is_object()) schema("(document)", "expected a JSON object");
  only_keys(doc, "", {"kind", "dims", "data", "seed"});
  const auto kind_it = doc.find("kind");
  if (kind_it == doc.end()) schema("kind", "missing field");
  if (!kind_it->is_string()) schema("kind", "expected a string");
  ProblemKind kind;
  try {
    kind = parse_kind(kind_it->get<std::string>());
  } catch (const std::invalid_argument& e) {
    schema("kind", e.what());
  }
  const auto dims_it = doc.find("dims");
  if (dims_it == doc.end()) schema("dims", "missing field");
  if (!dims_it->is_object()) schema("dims", "expected an object");
  const auto data_it = doc.find("data");
  if (data_it == doc.end()) schema("data", "missing field");
  if (!data_it->is_object()) schema("data", "expected an object");
  const json& dims = *dims_it;
  const json& data = *data_it;

  std::optional<std::uint64_t> seed;
  if (const auto s = doc.find("seed"); s != doc.end()) {
    if (!s->is_number_unsigned()) schema("seed", "expected a nonnegative integer");
    seed = s->get<std::uint64_t>();
  }

  switch (kind) {
    case ProblemKind::Pet: {
      only_keys(dims, "dims", {"m", "n"});
      only_keys(data, "data", {"P", "Y"});
      const std::size_t m = dim_value(dims, "m"), n = dim_value(dims, "n");
      return {PetData{number_matrix(data, "P", m, n), number_array(data, "Y", m)}, seed};
    }
    case ProblemKind::DOptimal: {
      only_keys(dims, "dims", {"m", "n"});
      only_keys(data, "data", {"points"});
      const std::size_t m = dim_value(dims, "m"), n = dim_value(dims, "n");
      return {DOptimalData{number_matrix(data, "points", m, n)}, seed};
    }
    case ProblemKind::QstReal: {
      only_keys(dims, "dims", {"m", "n"});
      if (data.contains("vectors_imag")) {
        schema("data.vectors_imag",
               "complex measurement vectors are not supported (real-vector restriction: only real a_j)");
      }
      if (const auto v = data.find("vectors"); v != data.end() && v->is_array()) {
        for (std::size_t k = 0; k < v->size(); ++k) {
          const json& entry = (*v)[k];
          if (entry.is_array() || entry.is_object()) {
            schema("data.vectors[" + std::to_string(k) + "]",
                   "complex entries are not supported (real-vector restriction: only real a_j)");
          }
        }
      }
      only_keys(data, "data", {"vectors", "counts"});
      const std::size_t m = dim_value(dims, "m"), n = dim_value(dims, "n");
      return {QstData{number_matrix(data, "vectors", m, n), number_array(data, "counts", m)}, seed};
    }
    case ProblemKind::Bqp: {
      only_keys(dims, "dims", {"n"});
      only_keys(data, "data", {"A"});
      const std::size_t n = dim_value(dims, "n");
      return {BqpData{number_matrix(data, "A", n, n)}, seed};
    }
  }
  schema("kind", "unsupported kind");
}

}  // namespace

ProblemInstance parse_instance(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("(document): " + origin + " is not valid JSON: " + e.what());
  }
  const InstanceSpec spec = parse_spec(doc);
  try {
    return build_instance(spec);
  } catch (const InvalidInstance& e) {
    rethrow_as_schema(e);
  }
}

std::string serialize_instance(const InstanceSpec& spec) {
  json doc;
  doc["kind"] = kind_tag(spec.kind());
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PetData>) {
          doc["dims"] = {{"m", d.P.rows()}, {"n", d.P.cols()}};
          doc["data"] = {{"P", flat(d.P)}, {"Y", flat(d.Y)}};
        } else if constexpr (std::is_same_v<T, DOptimalData>) {
          doc["dims"] = {{"m", d.points.rows()}, {"n", d.points.cols()}};
          doc["data"] = {{"points", flat(d.points)}};
        } else if constexpr (std::is_same_v<T, QstData>) {
          doc["dims"] = {{"m", d.vectors.rows()}, {"n", d.vectors.cols()}};
          doc["data"] = {{"vectors", flat(d.vectors)}, {"counts", flat(d.counts)}};
        } else {
          doc["dims"] = {{"n", d.A.rows()}};
          doc["data"] = {{"A", flat(d.A)}};
        }
      },
      spec.data);
  if (spec.seed) doc["seed"] = *spec.seed;
  return doc.dump(1) + "\n";
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.string());
}

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path) {
  if (!instance.spec()) {
    throw std::invalid_argument("save_instance: instance '" + instance.name() + "' has no builder data attached");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path.string());
  out << serialize_instance(*instance.spec());
  if (!out) throw std::runtime_error("error writing instance file " + path.string());
}

}  // namespace jmg
