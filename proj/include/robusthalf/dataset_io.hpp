#pragma once

#include "robusthalf/perturbation.hpp"
#include "robusthalf/types.hpp"

#include <filesystem>
#include <memory>
#include <optional>

namespace robusthalf {

/// CSV with header y,x1,...,xd; y in {-1, 1}; values as decimal text with
/// round-trip precision.
void write_dataset_csv(const Dataset& S, const std::filesystem::path& path);
Dataset read_dataset_csv(const std::filesystem::path& path);

/// Sidecar metadata object: keys seed, gamma, eta, p ("inf" for the sup
/// norm), w_star, bias. Absent keys stay unset.
void write_metadata_json(const DatasetMetadata& meta, const std::filesystem::path& path);
DatasetMetadata read_metadata_json(const std::filesystem::path& path);

/// Model file: {"w": [...], "bias": number, "q": number or "inf"}.
struct ModelFile {
  Halfspace h;
  std::optional<double> q;
};
void write_model_json(const ModelFile& model, const std::filesystem::path& path);
ModelFile read_model_json(const std::filesystem::path& path);

/// Adversary description:
///   {"kind": "lp_ball", "p": ..., "gamma": ...}
///   {"kind": "polytope", "A": [[...]], "c": [...], "radius": ...}
///   {"kind": "hull", "offsets": [[...]]}
/// lp_ball needs the target dimension; the others carry their own.
std::shared_ptr<PerturbationSet> adversary_from_json_text(const std::string& text,
                                                          Eigen::Index dim);
std::shared_ptr<PerturbationSet> adversary_from_json_file(const std::filesystem::path& path,
                                                          Eigen::Index dim);

}  // namespace robusthalf
