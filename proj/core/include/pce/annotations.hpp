#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pce/error.hpp"

namespace pce {

// Axis-aligned box in continuous pixel coordinates, origin top-left.
struct BoundingBox {
    double x_min = 0;
    double y_min = 0;
    double x_max = 0;
    double y_max = 0;
    int class_id = 0;
    std::optional<double> confidence; // absent for ground truth

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    bool contains(const BoundingBox& inner) const {
        return x_min <= inner.x_min && y_min <= inner.y_min &&
               x_max >= inner.x_max && y_max >= inner.y_max;
    }
};

struct FrameAnnotations {
    int frame_index = 0;
    std::vector<BoundingBox> boxes;
};

// Boxes attached to one coded frame. For merged ground truth there is at
// most one box per class and confidence is absent; the same shape carries
// per-chunk detections, where confidence is required.
struct ChunkLabel {
    int chunk_index = 0;
    std::vector<BoundingBox> boxes;
};
using ChunkDetections = ChunkLabel;

// Known class names. car and person are built in; more can be registered.
class ClassRegistry {
public:
    static ClassRegistry default_classes();

    int add(const std::string& name);           // returns the new id
    int id_of(const std::string& name) const;   // -1 if unknown
    const std::string& name_of(int id) const;
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

// Label file: UTF-8 lines
//   frame_index class_name confidence x_min y_min x_max y_max
// whitespace-separated, confidence `-` for ground truth, `#` starts a
// comment. Boxes are validated (x_min < x_max, y_min < y_max, coordinates
// non-negative); failures name the line number.
std::vector<FrameAnnotations> parse_labels(const std::filesystem::path& path,
                                           const ClassRegistry& classes);
void save_labels(const std::vector<FrameAnnotations>& frames,
                 const std::filesystem::path& path,
                 const ClassRegistry& classes);

// Drops scored boxes below min_confidence; ground-truth boxes (no score)
// pass through.
void filter_by_confidence(std::vector<FrameAnnotations>& frames,
                          double min_confidence);

// Envelope of the class's boxes across the chunk's frames: componentwise
// min of (x_min, y_min) and max of (x_max, y_max) over every frame where
// the class appears; nullopt when it appears in none. Two boxes of the
// class in one frame cannot be told apart without tracking, so that is an
// error.
std::optional<BoundingBox> merge_chunk(std::span<const FrameAnnotations> frames,
                                       int class_id);

// One ChunkLabel per complete chunk of chunk_len frames; annotations of a
// trailing partial chunk are ignored, matching the encoder's chunking.
// total_frames < 0 means "infer from the highest frame index".
std::vector<ChunkLabel> build_chunk_labels(
    const std::vector<FrameAnnotations>& frames, int chunk_len,
    int total_frames = -1);

// Chunk-label / detection file: lines
//   chunk_index class_name confidence x_min y_min x_max y_max
// plus a `# chunks: N` header so empty chunks keep the total count intact.
void save_chunk_labels(const std::vector<ChunkLabel>& labels,
                       const std::filesystem::path& path,
                       const ClassRegistry& classes);
struct ChunkLabelFile {
    std::vector<ChunkLabel> chunks; // sorted by chunk_index, possibly sparse
    int declared_chunks = -1;       // from the header, -1 when absent
};
ChunkLabelFile parse_chunk_labels(const std::filesystem::path& path,
                                  const ClassRegistry& classes);

} // namespace pce
