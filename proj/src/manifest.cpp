#include "manifest.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "common.hpp"
#include "pnm.hpp"
#include "rng.hpp"

namespace fs = std::filesystem;

namespace alseg {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

Split parse_split(const std::string& s, const std::string& path, std::size_t lineno) {
    if (s == "train") return Split::Train;
    if (s == "valid") return Split::Valid;
    if (s == "test") return Split::Test;
    throw IngestError(path + ":" + std::to_string(lineno) +
                      ": unknown split tag '" + s + "'");
}

}  // namespace

DatasetManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("manifest: cannot open " + path);

    DatasetManifest m;
    m.base_dir = fs::path(path).parent_path().string();

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line))
        throw IngestError("manifest: empty file " + path);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "image,mask,label,split")
        throw IngestError("manifest: bad header in " + path +
                          " (expected 'image,mask,label,split')");

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw IngestError(path + ":" + std::to_string(lineno) +
                              ": expected 4 fields, got " + std::to_string(fields.size()));
        ManifestEntry e;
        e.image_path = fields[0];
        e.mask_path = fields[1];
        try {
            e.class_label = std::stoi(fields[2]);
        } catch (const std::exception&) {
            throw IngestError(path + ":" + std::to_string(lineno) +
                              ": bad label '" + fields[2] + "'");
        }
        if (e.class_label < 0)
            throw IngestError(path + ":" + std::to_string(lineno) +
                              ": negative class label");
        e.split = parse_split(fields[3], path, lineno);
        m.entries.push_back(std::move(e));
    }
    if (m.entries.empty()) throw IngestError("manifest: no entries in " + path);
    return m;
}

Dataset load_dataset(const DatasetManifest& manifest) {
    Dataset ds;
    int max_label = 0;
    for (const auto& e : manifest.entries) max_label = std::max(max_label, e.class_label);
    ds.num_classes = max_label + 1;

    auto resolve = [&](const std::string& p) {
        fs::path fp(p);
        if (fp.is_absolute() || manifest.base_dir.empty()) return p;
        return (fs::path(manifest.base_dir) / fp).string();
    };

    int id = 0;
    for (const auto& e : manifest.entries) {
        std::string img_path = resolve(e.image_path);
        std::string mask_path = resolve(e.mask_path);
        ImageTensor img = read_pnm_image(img_path);
        BinaryMask mask = read_pgm_mask(mask_path);
        if (mask.height != img.height || mask.width != img.width)
            throw IngestError("load_dataset: mask " + mask_path + " is " +
                              std::to_string(mask.height) + "x" + std::to_string(mask.width) +
                              " but image " + img_path + " is " +
                              std::to_string(img.height) + "x" + std::to_string(img.width));
        Sample s(id, std::move(img), e.class_label, std::move(mask));
        s.image_path = img_path;
        s.mask_path = mask_path;
        ds.samples.push_back(std::move(s));
        switch (e.split) {
            case Split::Train: ds.train_ids.push_back(id); break;
            case Split::Valid: ds.valid_ids.push_back(id); break;
            case Split::Test: ds.test_ids.push_back(id); break;
        }
        ++id;
    }

    if (ds.train_ids.empty())
        throw IngestError("load_dataset: manifest has no training samples");

    // Every non-empty split must contain each class at least once.
    auto check_split = [&](const std::vector<int>& ids, const char* name) {
        if (ids.empty()) return;
        std::set<int> seen;
        for (int i : ids) seen.insert(ds.at(i).class_label);
        for (int c = 0; c < ds.num_classes; ++c)
            if (!seen.count(c))
                throw IngestError(std::string("load_dataset: split '") + name +
                                  "' has no sample of class " + std::to_string(c));
    };
    check_split(ds.train_ids, "train");
    check_split(ds.valid_ids, "valid");
    check_split(ds.test_ids, "test");
    return ds;
}

Dataset load_dataset(const std::string& manifest_path) {
    return load_dataset(read_manifest(manifest_path));
}

std::pair<std::vector<int>, std::vector<int>> split_train_valid(
    const std::vector<int>& train_ids, const std::vector<int>& class_labels,
    double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ConfigError("split_train_valid: fraction must lie in (0,1)");
    if (class_labels.size() != train_ids.size())
        throw DomainError("split_train_valid: labels do not cover ids");

    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < train_ids.size(); ++i)
        by_class[class_labels[i]].push_back(train_ids[i]);

    std::vector<int> train, valid;
    for (auto& [label, ids] : by_class) {
        if (ids.size() < 2)
            throw IngestError("split_train_valid: class " + std::to_string(label) +
                              " has fewer than 2 samples");
        std::sort(ids.begin(), ids.end());
        std::size_t keep = static_cast<std::size_t>(
            std::floor(static_cast<double>(ids.size()) * fraction));
        keep = std::clamp<std::size_t>(keep, 1, ids.size() - 1);
        Rng rng(derive_seed(seed, seed_tag::split, static_cast<std::uint64_t>(label)));
        rng.shuffle(ids);
        train.insert(train.end(), ids.begin(), ids.begin() + static_cast<long>(keep));
        valid.insert(valid.end(), ids.begin() + static_cast<long>(keep), ids.end());
    }
    std::sort(train.begin(), train.end());
    std::sort(valid.begin(), valid.end());
    return {train, valid};
}

}  // namespace alseg
