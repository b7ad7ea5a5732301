#pragma once

#include <optional>
#include <string>
#include <vector>

#include "image.hpp"

namespace alseg {

class OracleSimulator;
class Evaluator;

// Capability token for reading ground-truth masks. Only the oracle
// simulator and the evaluator can mint one, so learner/acquisition/neighbor
// code cannot observe gt_mask even by accident: the access simply does not
// compile without the key.
class GroundTruthKey {
    GroundTruthKey() = default;
    friend class OracleSimulator;
    friend class Evaluator;
};

enum class AnnotationKind { Unlabeled, OracleLabeled, PseudoLabeled };

struct Annotation {
    AnnotationKind kind = AnnotationKind::Unlabeled;
    std::optional<BinaryMask> mask;  // present iff kind != Unlabeled
};

enum class Split { Train, Valid, Test };

struct Sample {
    int id = -1;
    ImageTensor image;
    int class_label = 0;
    Annotation annotation;

    // Paths are kept for reporting (knn-inspect) and empty for in-memory
    // synthetic datasets that were never written out.
    std::string image_path;
    std::string mask_path;

    Sample() = default;
    Sample(int id_, ImageTensor img, int label, BinaryMask gt)
        : id(id_), image(std::move(img)), class_label(label), gt_mask_(std::move(gt)) {
        if (gt_mask_.height != image.height || gt_mask_.width != image.width)
            throw DomainError("Sample " + std::to_string(id_) +
                              ": mask dimensions do not match image");
    }

    const BinaryMask& ground_truth(GroundTruthKey) const { return gt_mask_; }

private:
    BinaryMask gt_mask_;
};

// Immutable after ingestion. Sample ids are dense [0, n) in manifest order,
// i.e. sample id == index into `samples`.
struct Dataset {
    std::vector<Sample> samples;
    std::vector<int> train_ids;
    std::vector<int> valid_ids;
    std::vector<int> test_ids;
    int num_classes = 0;

    const Sample& at(int id) const { return samples.at(static_cast<std::size_t>(id)); }
    Sample& at(int id) { return samples.at(static_cast<std::size_t>(id)); }
};

}  // namespace alseg
