#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sample.hpp"

namespace alseg {

struct ManifestEntry {
    std::string image_path;  // relative paths resolve against the manifest dir
    std::string mask_path;
    int class_label = 0;
    Split split = Split::Train;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    std::string base_dir;
};

// CSV with header `image,mask,label,split`.
DatasetManifest read_manifest(const std::string& path);

// Decodes every entry, normalizes pixels, assigns dense ids in manifest
// order and checks: mask dimensions match, labels dense in [0, C), every
// non-empty split covers every class, and train is non-empty.
Dataset load_dataset(const DatasetManifest& manifest);
Dataset load_dataset(const std::string& manifest_path);

// Per-class stratified split of `train_ids`: floor(n_c * fraction) ids per
// class stay in effective training (clamped so both sides keep at least
// one), the rest form the validation set. Deterministic given the seed.
std::pair<std::vector<int>, std::vector<int>> split_train_valid(
    const std::vector<int>& train_ids, const std::vector<int>& class_labels,
    double fraction, std::uint64_t seed);

}  // namespace alseg
