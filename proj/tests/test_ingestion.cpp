#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "histogram.hpp"
#include "manifest.hpp"
#include "oracle.hpp"
#include "pnm.hpp"
#include "rng.hpp"
#include "synthetic.hpp"

using namespace alseg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() / name;
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

SyntheticConfig tiny_config(std::uint64_t seed) {
    SyntheticConfig cfg;
    cfg.train_per_class = 4;
    cfg.valid_per_class = 1;
    cfg.test_per_class = 2;
    cfg.height = cfg.width = 16;
    cfg.seed = seed;
    return cfg;
}

// Connected components over 4-neighborhoods, the oracle for the
// single-blob example.
int count_components(const BinaryMask& mask) {
    std::vector<int> label(mask.bits.size(), 0);
    int components = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < mask.bits.size(); ++start) {
        if (!mask.bits[start] || label[start]) continue;
        ++components;
        stack.push_back(start);
        label[start] = components;
        while (!stack.empty()) {
            std::size_t px = stack.back();
            stack.pop_back();
            int y = static_cast<int>(px) / mask.width;
            int x = static_cast<int>(px) % mask.width;
            const int dy[] = {-1, 1, 0, 0}, dx[] = {0, 0, -1, 1};
            for (int d = 0; d < 4; ++d) {
                int ny = y + dy[d], nx = x + dx[d];
                if (ny < 0 || ny >= mask.height || nx < 0 || nx >= mask.width) continue;
                std::size_t np = static_cast<std::size_t>(ny) * mask.width + nx;
                if (mask.bits[np] && !label[np]) {
                    label[np] = components;
                    stack.push_back(np);
                }
            }
        }
    }
    return components;
}

}  // namespace

TEST_CASE("pnm round trip preserves bytes for images and masks") {
    TempDir dir("alseg_pnm_test");
    Rng rng(1);
    ImageTensor img(9, 7, 3);
    for (auto& v : img.values) v = std::lround(rng.uniform() * 255.0) / 255.0;
    std::string ppm = (dir.path / "img.ppm").string();
    write_pnm_image(ppm, img);
    ImageTensor back = read_pnm_image(ppm);
    CHECK(back.height == 9);
    CHECK(back.width == 7);
    CHECK(back.channels == 3);
    for (std::size_t i = 0; i < img.values.size(); ++i)
        CHECK(back.values[i] == img.values[i]);

    BinaryMask mask(9, 7);
    for (auto& b : mask.bits) b = rng.uniform() < 0.3;
    std::string pgm = (dir.path / "mask.pgm").string();
    write_pgm_mask(pgm, mask);
    CHECK(read_pgm_mask(pgm) == mask);
}

TEST_CASE("pgm mask read treats >= 128 as foreground and honors comments") {
    TempDir dir("alseg_pnm_gray");
    std::string path = (dir.path / "soft.pgm").string();
    {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n# antialiased export\n2 2\n255\n";
        unsigned char raster[4] = {0, 127, 128, 255};
        out.write(reinterpret_cast<char*>(raster), 4);
    }
    BinaryMask m = read_pgm_mask(path);
    CHECK_FALSE(m.at(0, 0));
    CHECK_FALSE(m.at(0, 1));
    CHECK(m.at(1, 0));
    CHECK(m.at(1, 1));
}

TEST_CASE("pnm decoder errors name the offending file") {
    TempDir dir("alseg_pnm_err");
    std::string path = (dir.path / "bad.ppm").string();
    {
        std::ofstream out(path, std::ios::binary);
        out << "P6\n4 4\n255\nshort";
    }
    CHECK_THROWS_WITH_AS(read_pnm_image(path),
                         doctest::Contains("bad.ppm"), IngestError);
    CHECK_THROWS_AS(read_pnm_image((dir.path / "missing.ppm").string()), IngestError);
}

TEST_CASE("synthetic config bounds are enforced") {
    SyntheticConfig cfg = tiny_config(1);
    CHECK_NOTHROW(cfg.validate());
    cfg.classes = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.classes = 2;
    cfg.height = 8;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.height = 16;
    cfg.modes_per_class = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.modes_per_class = 1;
    cfg.noise_std = -0.1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.noise_std = 0.0;
    cfg.blob_max = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("synthetic generation is deterministic and respects invariants") {
    SyntheticConfig cfg = tiny_config(33);
    Dataset a = generate_synthetic(cfg);
    Dataset b = generate_synthetic(cfg);
    REQUIRE(a.samples.size() == b.samples.size());
    CHECK(a.samples.size() == 2 * (4 + 1 + 2));
    OracleSimulator oa(a), ob(b);
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].image.values == b.samples[i].image.values);
        CHECK(oa.annotate(a.samples[i].id) == ob.annotate(b.samples[i].id));
        // Foreground fraction stays in the configured band.
        double frac = static_cast<double>(oa.annotate(a.samples[i].id).foreground_count()) /
                      (16.0 * 16.0);
        CHECK(frac >= cfg.fg_min);
        CHECK(frac <= cfg.fg_max);
    }
    // Ids are dense in manifest order.
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        CHECK(a.samples[i].id == static_cast<int>(i));
}

TEST_CASE("blob_count range (1,1) yields a single connected component") {
    SyntheticConfig cfg = tiny_config(5);
    cfg.blob_min = cfg.blob_max = 1;
    cfg.height = cfg.width = 32;
    Dataset ds = generate_synthetic(cfg);
    OracleSimulator oracle(ds);
    for (const auto& s : ds.samples)
        CHECK(count_components(oracle.annotate(s.id)) == 1);
}

TEST_CASE("same-class images are JSD-closer than cross-class images") {
    // Noise and jitter off: every same-class pair shares its two palette
    // colors, every cross-class pair has disjoint support.
    SyntheticConfig cfg;
    cfg.classes = 2;
    cfg.modes_per_class = 1;
    cfg.noise_std = 0.0;
    cfg.color_jitter = 0.0;
    cfg.train_per_class = 6;
    cfg.valid_per_class = 1;
    cfg.test_per_class = 1;
    cfg.height = cfg.width = 16;
    cfg.seed = 12;
    Dataset ds = generate_synthetic(cfg);
    auto descriptors = build_descriptor_index(ds, 32);

    double max_within = 0.0, min_cross = 1e9;
    for (int a : ds.train_ids)
        for (int b : ds.train_ids) {
            if (a >= b) continue;
            double d = jsd(descriptors.at(a), descriptors.at(b));
            if (ds.at(a).class_label == ds.at(b).class_label)
                max_within = std::max(max_within, d);
            else
                min_cross = std::min(min_cross, d);
        }
    CHECK(max_within < min_cross);

    // With default jitter the strict version can tie, but the block means
    // keep the same order.
    SyntheticConfig jittered = cfg;
    jittered.color_jitter = 0.02;
    jittered.noise_std = 0.0;
    Dataset ds2 = generate_synthetic(jittered);
    auto desc2 = build_descriptor_index(ds2, 32);
    double sum_within = 0.0, sum_cross = 0.0;
    int n_within = 0, n_cross = 0;
    for (int a : ds2.train_ids)
        for (int b : ds2.train_ids) {
            if (a >= b) continue;
            double d = jsd(desc2.at(a), desc2.at(b));
            if (ds2.at(a).class_label == ds2.at(b).class_label) {
                sum_within += d;
                ++n_within;
            } else {
                sum_cross += d;
                ++n_cross;
            }
        }
    CHECK(sum_within / n_within < sum_cross / n_cross);
}

TEST_CASE("write + load round trip reproduces identical pixels and masks") {
    TempDir dir("alseg_roundtrip");
    SyntheticConfig cfg = tiny_config(44);
    Dataset ds = generate_synthetic(cfg);
    write_dataset(ds, dir.path.string(), cfg);

    Dataset loaded = load_dataset((dir.path / "manifest.csv").string());
    REQUIRE(loaded.samples.size() == ds.samples.size());
    CHECK(loaded.train_ids == ds.train_ids);
    CHECK(loaded.valid_ids == ds.valid_ids);
    CHECK(loaded.test_ids == ds.test_ids);
    OracleSimulator before(ds), after(loaded);
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        CHECK(loaded.samples[i].image.values == ds.samples[i].image.values);
        CHECK(loaded.samples[i].class_label == ds.samples[i].class_label);
        CHECK(before.annotate(static_cast<int>(i)) == after.annotate(static_cast<int>(i)));
    }
    // config.txt echo exists alongside.
    CHECK(fs::exists(dir.path / "config.txt"));
}

TEST_CASE("a 2-entry manifest loads with dense ids") {
    TempDir dir("alseg_mini_manifest");
    ImageTensor img(4, 4, 1, 0.5);
    BinaryMask mask(4, 4, true);
    write_pnm_image((dir.path / "a.pgm").string(), img);
    write_pnm_image((dir.path / "b.pgm").string(), img);
    write_pgm_mask((dir.path / "a_m.pgm").string(), mask);
    write_pgm_mask((dir.path / "b_m.pgm").string(), mask);
    {
        std::ofstream out(dir.path / "manifest.csv");
        out << "image,mask,label,split\n";
        out << "a.pgm,a_m.pgm,0,train\n";
        out << "b.pgm,b_m.pgm,0,test\n";
    }
    Dataset ds = load_dataset((dir.path / "manifest.csv").string());
    REQUIRE(ds.samples.size() == 2);
    CHECK(ds.samples[0].id == 0);
    CHECK(ds.samples[1].id == 1);
    CHECK(ds.train_ids == std::vector<int>{0});
    CHECK(ds.test_ids == std::vector<int>{1});
}

TEST_CASE("mask/image dimension mismatch is reported with both sizes") {
    TempDir dir("alseg_dim_mismatch");
    write_pnm_image((dir.path / "img.pgm").string(), ImageTensor(64, 64, 1, 0.5));
    write_pgm_mask((dir.path / "mask.pgm").string(), BinaryMask(32, 32));
    {
        std::ofstream out(dir.path / "manifest.csv");
        out << "image,mask,label,split\nimg.pgm,mask.pgm,0,train\n";
    }
    CHECK_THROWS_WITH_AS(load_dataset((dir.path / "manifest.csv").string()),
                         doctest::Contains("32x32"), IngestError);
}

TEST_CASE("manifest validation: header, split tags, class coverage") {
    TempDir dir("alseg_manifest_errors");
    auto write_manifest = [&](const std::string& body) {
        std::ofstream out(dir.path / "manifest.csv");
        out << body;
    };
    write_manifest("img,msk,lbl,spl\n");
    CHECK_THROWS_AS(read_manifest((dir.path / "manifest.csv").string()), IngestError);
    write_manifest("image,mask,label,split\na.pgm,b.pgm,0,験\n");
    CHECK_THROWS_AS(read_manifest((dir.path / "manifest.csv").string()), IngestError);

    // Train split missing class 1 while test has it.
    write_pnm_image((dir.path / "i.pgm").string(), ImageTensor(4, 4, 1, 0.1));
    write_pgm_mask((dir.path / "m.pgm").string(), BinaryMask(4, 4, true));
    write_manifest(
        "image,mask,label,split\n"
        "i.pgm,m.pgm,0,train\n"
        "i.pgm,m.pgm,0,test\n"
        "i.pgm,m.pgm,1,test\n");
    CHECK_THROWS_WITH_AS(load_dataset((dir.path / "manifest.csv").string()),
                         doctest::Contains("train"), IngestError);
}

TEST_CASE("stratified split: 10 ids at 0.8 give one valid sample per class") {
    std::vector<int> ids = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<int> labels = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
    auto [train, valid] = split_train_valid(ids, labels, 0.8, 42);
    CHECK(train.size() == 8);
    CHECK(valid.size() == 2);
    int valid_c0 = 0, valid_c1 = 0;
    for (int id : valid) (id <= 4 ? valid_c0 : valid_c1)++;
    CHECK(valid_c0 == 1);
    CHECK(valid_c1 == 1);

    auto [train2, valid2] = split_train_valid(ids, labels, 0.8, 42);
    CHECK(train == train2);
    CHECK(valid == valid2);
    auto [train3, valid3] = split_train_valid(ids, labels, 0.8, 43);
    CHECK(train != train3);
}

TEST_CASE("84 samples at 0.8 split 67/17 by per-class floors") {
    // Class sizes 40 and 44: floor(40*0.8) + floor(44*0.8) = 32 + 35.
    std::vector<int> ids, labels;
    for (int i = 0; i < 84; ++i) {
        ids.push_back(i);
        labels.push_back(i < 40 ? 0 : 1);
    }
    auto [train, valid] = split_train_valid(ids, labels, 0.8, 7);
    CHECK(train.size() == 67);
    CHECK(valid.size() == 17);
}

TEST_CASE("split rejects classes with fewer than 2 samples") {
    CHECK_THROWS_AS(split_train_valid({0, 1, 2}, {0, 0, 1}, 0.8, 1), IngestError);
    CHECK_THROWS_AS(split_train_valid({0, 1}, {0, 0}, 1.0, 1), ConfigError);
}

TEST_CASE("nearest-neighbor resize keeps corners and rejects bad sizes") {
    ImageTensor img(2, 2, 1);
    img.values = {0.1, 0.2, 0.3, 0.4};
    ImageTensor up = resize_nearest(img, 4, 4);
    CHECK(up.at(0, 0, 0) == 0.1);
    CHECK(up.at(0, 0, 3) == 0.2);
    CHECK(up.at(0, 3, 0) == 0.3);
    CHECK(up.at(0, 3, 3) == 0.4);
    CHECK_THROWS_AS(resize_nearest(img, 0, 4), DomainError);

    BinaryMask m(2, 2);
    m.set(0, 1, true);
    BinaryMask um = resize_nearest(m, 4, 4);
    CHECK(um.at(0, 3));
    CHECK_FALSE(um.at(3, 0));
}
