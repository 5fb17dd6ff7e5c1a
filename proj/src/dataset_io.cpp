#include "robusthalf/dataset_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace robusthalf {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

json p_to_json(double p) {
  if (std::isinf(p)) return json("inf");
  return json(p);
}

double p_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfExponent;
    throw InvalidInput("bad norm exponent in JSON: " + j.dump());
  }
  return j.get<double>();
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const json& arr) {
  if (!arr.is_array() || arr.empty()) throw InvalidInput("expected a nonempty JSON array");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open for reading: " + path.string());
  return in;
}

}  // namespace

void write_dataset_csv(const Dataset& S, const std::filesystem::path& path) {
  S.validate();
  auto out = open_out(path);
  out << "y";
  for (Eigen::Index j = 0; j < S.dim(); ++j) out << ",x" << (j + 1);
  out << "\n";
  for (Eigen::Index i = 0; i < S.size(); ++i) {
    out << S.y[i];
    for (Eigen::Index j = 0; j < S.dim(); ++j) out << "," << format_double(S.X(i, j));
    out << "\n";
  }
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty dataset file: " + path.string());
  // header defines the dimension
  Eigen::Index d = 0;
  {
    std::stringstream hs(line);
    std::string cell;
    if (!std::getline(hs, cell, ',') || cell != "y")
      throw InvalidInput("dataset header must start with 'y': " + path.string());
    while (std::getline(hs, cell, ',')) ++d;
  }
  if (d < 1) throw InvalidInput("dataset has no feature columns: " + path.string());

  std::vector<double> values;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    if (!std::getline(ls, cell, ',')) throw InvalidInput("bad CSV row: " + line);
    int y = std::stoi(cell);
    if (y != 1 && y != -1) throw InvalidInput("label must be -1 or 1, got: " + cell);
    labels.push_back(y);
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!std::getline(ls, cell, ',')) throw InvalidInput("short CSV row: " + line);
      values.push_back(std::stod(cell));
    }
  }
  if (labels.empty()) throw InvalidInput("dataset has no rows: " + path.string());

  Dataset S;
  S.X.resize(static_cast<Eigen::Index>(labels.size()), d);
  S.y.resize(static_cast<Eigen::Index>(labels.size()));
  for (size_t i = 0; i < labels.size(); ++i) {
    S.y[static_cast<Eigen::Index>(i)] = labels[i];
    for (Eigen::Index j = 0; j < d; ++j)
      S.X(static_cast<Eigen::Index>(i), j) = values[i * static_cast<size_t>(d) + j];
  }
  S.validate();
  return S;
}

void write_metadata_json(const DatasetMetadata& meta, const std::filesystem::path& path) {
  json j = json::object();
  if (meta.seed) j["seed"] = *meta.seed;
  if (meta.gamma) j["gamma"] = *meta.gamma;
  if (meta.eta) j["eta"] = *meta.eta;
  if (meta.p) j["p"] = p_to_json(*meta.p);
  if (meta.w_star) j["w_star"] = vector_to_json(*meta.w_star);
  if (meta.bias) j["bias"] = *meta.bias;
  open_out(path) << j.dump(2) << "\n";
}

DatasetMetadata read_metadata_json(const std::filesystem::path& path) {
  json j = json::parse(open_in(path));
  DatasetMetadata meta;
  if (j.contains("seed")) meta.seed = j["seed"].get<uint64_t>();
  if (j.contains("gamma")) meta.gamma = j["gamma"].get<double>();
  if (j.contains("eta")) meta.eta = j["eta"].get<double>();
  if (j.contains("p")) meta.p = p_from_json(j["p"]);
  if (j.contains("w_star")) meta.w_star = vector_from_json(j["w_star"]);
  if (j.contains("bias")) meta.bias = j["bias"].get<double>();
  return meta;
}

void write_model_json(const ModelFile& model, const std::filesystem::path& path) {
  json j;
  j["w"] = vector_to_json(model.h.w);
  j["bias"] = model.h.bias;
  if (model.q) j["q"] = p_to_json(*model.q);
  open_out(path) << j.dump(2) << "\n";
}

ModelFile read_model_json(const std::filesystem::path& path) {
  json j = json::parse(open_in(path));
  if (!j.contains("w")) throw InvalidInput("model file missing 'w': " + path.string());
  ModelFile m{Halfspace(vector_from_json(j["w"]), j.value("bias", 0.0)), std::nullopt};
  if (j.contains("q")) m.q = p_from_json(j["q"]);
  return m;
}

std::shared_ptr<PerturbationSet> adversary_from_json_text(const std::string& text,
                                                          Eigen::Index dim) {
  json j = json::parse(text);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "lp_ball") {
    double p = p_from_json(j.at("p"));
    double gamma = j.at("gamma").get<double>();
    return std::make_shared<NormBallAdversary>(dim, gamma, NormSpec(p));
  }
  if (kind == "polytope") {
    const json& rows = j.at("A");
    if (!rows.is_array() || rows.empty()) throw InvalidInput("polytope: bad A");
    Eigen::Index k = static_cast<Eigen::Index>(rows.size());
    Eigen::Index cols = static_cast<Eigen::Index>(rows[0].size());
    Matrix A(k, cols);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != cols)
        throw InvalidInput("polytope: ragged A");
      for (Eigen::Index jj = 0; jj < cols; ++jj) A(i, jj) = rows[i][jj].get<double>();
    }
    Vector c = vector_from_json(j.at("c"));
    std::optional<double> radius;
    if (j.contains("radius")) radius = j["radius"].get<double>();
    return std::make_shared<PolytopeAdversary>(std::move(A), std::move(c), radius);
  }
  if (kind == "hull") {
    const json& offs = j.at("offsets");
    if (!offs.is_array() || offs.empty()) throw InvalidInput("hull: bad offsets");
    std::vector<Vector> offsets;
    offsets.reserve(offs.size());
    for (const auto& o : offs) offsets.push_back(vector_from_json(o));
    return std::make_shared<HullAdversary>(std::move(offsets));
  }
  throw InvalidInput("unknown adversary kind: " + kind);
}

std::shared_ptr<PerturbationSet> adversary_from_json_file(const std::filesystem::path& path,
                                                          Eigen::Index dim) {
  std::stringstream ss;
  ss << open_in(path).rdbuf();
  return adversary_from_json_text(ss.str(), dim);
}

}  // namespace robusthalf
