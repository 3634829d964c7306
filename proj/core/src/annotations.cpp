#include "pce/annotations.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "binary_io.hpp"

namespace pce {

namespace {

constexpr const char* kModule = "annotations";

struct LabelLine {
    int index = 0; // frame or chunk ordinal
    BoundingBox box;
};

double parse_real(const std::string& token, int line_no, const char* what) {
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size()) {
        throw ValidationError(kModule, std::string("line ") +
                                           std::to_string(line_no) +
                                           ": bad " + what + " '" + token +
                                           "'");
    }
    return value;
}

std::optional<LabelLine> parse_line(const std::string& line, int line_no,
                                    const ClassRegistry& classes) {
    const auto hash = line.find('#');
    std::string body = hash == std::string::npos ? line : line.substr(0, hash);
    std::istringstream stream(body);
    std::string index_token, class_token, conf_token;
    if (!(stream >> index_token)) {
        return std::nullopt; // blank or comment-only line
    }
    std::string x0, y0, x1, y1, extra;
    if (!(stream >> class_token >> conf_token >> x0 >> y0 >> x1 >> y1)) {
        throw ValidationError(kModule, "line " + std::to_string(line_no) +
                                           ": expected 7 fields");
    }
    if (stream >> extra) {
        throw ValidationError(kModule, "line " + std::to_string(line_no) +
                                           ": trailing field '" + extra + "'");
    }

    LabelLine parsed;
    const double index_value = parse_real(index_token, line_no, "index");
    parsed.index = static_cast<int>(index_value);
    if (index_value != parsed.index || parsed.index < 0) {
        throw ValidationError(kModule, "line " + std::to_string(line_no) +
                                           ": index must be a non-negative "
                                           "integer, got '" +
                                           index_token + "'");
    }
    const int class_id = classes.id_of(class_token);
    if (class_id < 0) {
        throw ValidationError(kModule, "line " + std::to_string(line_no) +
                                           ": unknown class '" + class_token +
                                           "'");
    }
    parsed.box.class_id = class_id;
    if (conf_token != "-") {
        const double conf = parse_real(conf_token, line_no, "confidence");
        if (conf < 0.0 || conf > 1.0) {
            throw ValidationError(kModule, "line " + std::to_string(line_no) +
                                               ": confidence outside [0,1]");
        }
        parsed.box.confidence = conf;
    }
    parsed.box.x_min = parse_real(x0, line_no, "x_min");
    parsed.box.y_min = parse_real(y0, line_no, "y_min");
    parsed.box.x_max = parse_real(x1, line_no, "x_max");
    parsed.box.y_max = parse_real(y1, line_no, "y_max");
    if (parsed.box.x_min < 0 || parsed.box.y_min < 0) {
        throw ValidationError(kModule, "line " + std::to_string(line_no) +
                                           ": negative coordinate");
    }
    if (parsed.box.x_min >= parsed.box.x_max ||
        parsed.box.y_min >= parsed.box.y_max) {
        throw ValidationError(kModule,
                              "line " + std::to_string(line_no) +
                                  ": inverted box (min must be < max)");
    }
    return parsed;
}

std::string format_box_line(int index, const BoundingBox& box,
                            const ClassRegistry& classes) {
    char buffer[160];
    if (box.confidence) {
        std::snprintf(buffer, sizeof(buffer), "%d %s %.6g %.6g %.6g %.6g %.6g",
                      index, classes.name_of(box.class_id).c_str(),
                      *box.confidence, box.x_min, box.y_min, box.x_max,
                      box.y_max);
    } else {
        std::snprintf(buffer, sizeof(buffer), "%d %s - %.6g %.6g %.6g %.6g",
                      index, classes.name_of(box.class_id).c_str(), box.x_min,
                      box.y_min, box.x_max, box.y_max);
    }
    return buffer;
}

} // namespace

ClassRegistry ClassRegistry::default_classes() {
    ClassRegistry registry;
    registry.add("car");
    registry.add("person");
    return registry;
}

int ClassRegistry::add(const std::string& name) {
    const int existing = id_of(name);
    if (existing >= 0) return existing;
    names_.push_back(name);
    return static_cast<int>(names_.size()) - 1;
}

int ClassRegistry::id_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    return -1;
}

const std::string& ClassRegistry::name_of(int id) const {
    if (id < 0 || id >= size()) {
        throw ParameterError(kModule, "class id " + std::to_string(id) +
                                          " not registered");
    }
    return names_[static_cast<std::size_t>(id)];
}

std::vector<FrameAnnotations> parse_labels(const std::filesystem::path& path,
                                           const ClassRegistry& classes) {
    auto in = detail::open_input(path, kModule);
    std::map<int, FrameAnnotations> by_frame;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto parsed = parse_line(line, line_no, classes);
        if (!parsed) continue;
        auto& entry = by_frame[parsed->index];
        entry.frame_index = parsed->index;
        entry.boxes.push_back(parsed->box);
    }
    std::vector<FrameAnnotations> frames;
    frames.reserve(by_frame.size());
    for (auto& [_, annotations] : by_frame) {
        frames.push_back(std::move(annotations));
    }
    return frames;
}

void save_labels(const std::vector<FrameAnnotations>& frames,
                 const std::filesystem::path& path,
                 const ClassRegistry& classes) {
    auto out = detail::open_output(path, kModule);
    for (const auto& frame : frames) {
        for (const auto& box : frame.boxes) {
            out << format_box_line(frame.frame_index, box, classes) << "\n";
        }
    }
    if (!out) {
        throw IoError(kModule, "write failed for '" + path.string() + "'");
    }
}

void filter_by_confidence(std::vector<FrameAnnotations>& frames,
                          double min_confidence) {
    for (auto& frame : frames) {
        std::erase_if(frame.boxes, [min_confidence](const BoundingBox& box) {
            return box.confidence && *box.confidence < min_confidence;
        });
    }
}

std::optional<BoundingBox> merge_chunk(std::span<const FrameAnnotations> frames,
                                       int class_id) {
    std::optional<BoundingBox> merged;
    for (const auto& frame : frames) {
        const BoundingBox* found = nullptr;
        for (const auto& box : frame.boxes) {
            if (box.class_id != class_id) continue;
            if (found != nullptr) {
                throw AmbiguityError(
                    kModule, "frame " + std::to_string(frame.frame_index) +
                                 " has two boxes of class " +
                                 std::to_string(class_id) +
                                 "; merging needs one object per class");
            }
            found = &box;
        }
        if (found == nullptr) continue;
        if (!merged) {
            merged = *found;
            merged->confidence.reset();
        } else {
            merged->x_min = std::min(merged->x_min, found->x_min);
            merged->y_min = std::min(merged->y_min, found->y_min);
            merged->x_max = std::max(merged->x_max, found->x_max);
            merged->y_max = std::max(merged->y_max, found->y_max);
        }
    }
    return merged;
}

std::vector<ChunkLabel> build_chunk_labels(
    const std::vector<FrameAnnotations>& frames, int chunk_len,
    int total_frames) {
    if (chunk_len < 1) {
        throw ParameterError(kModule, "chunk_len must be >= 1");
    }
    int max_index = -1;
    for (const auto& frame : frames) {
        max_index = std::max(max_index, frame.frame_index);
    }
    if (total_frames < 0) {
        total_frames = max_index + 1;
    } else if (max_index >= total_frames) {
        throw ParameterError(kModule,
                             "frame index " + std::to_string(max_index) +
                                 " beyond declared total of " +
                                 std::to_string(total_frames));
    }
    const int chunk_count = total_frames / chunk_len;

    // Group annotations per chunk; frames of the dropped tail are ignored.
    std::vector<std::vector<FrameAnnotations>> grouped(chunk_count);
    for (const auto& frame : frames) {
        const int chunk = frame.frame_index / chunk_len;
        if (chunk >= chunk_count) continue;
        grouped[static_cast<std::size_t>(chunk)].push_back(frame);
    }

    std::vector<ChunkLabel> labels(static_cast<std::size_t>(chunk_count));
    for (int k = 0; k < chunk_count; ++k) {
        auto& label = labels[static_cast<std::size_t>(k)];
        label.chunk_index = k;
        // Classes present anywhere in this chunk, in id order.
        std::vector<int> classes;
        for (const auto& frame : grouped[static_cast<std::size_t>(k)]) {
            for (const auto& box : frame.boxes) {
                if (std::find(classes.begin(), classes.end(), box.class_id) ==
                    classes.end()) {
                    classes.push_back(box.class_id);
                }
            }
        }
        std::sort(classes.begin(), classes.end());
        for (int class_id : classes) {
            auto merged = merge_chunk(grouped[static_cast<std::size_t>(k)],
                                      class_id);
            if (merged) {
                label.boxes.push_back(*merged);
            }
        }
    }
    return labels;
}

void save_chunk_labels(const std::vector<ChunkLabel>& labels,
                       const std::filesystem::path& path,
                       const ClassRegistry& classes) {
    auto out = detail::open_output(path, kModule);
    out << "# chunks: " << labels.size() << "\n";
    for (const auto& label : labels) {
        for (const auto& box : label.boxes) {
            out << format_box_line(label.chunk_index, box, classes) << "\n";
        }
    }
    if (!out) {
        throw IoError(kModule, "write failed for '" + path.string() + "'");
    }
}

ChunkLabelFile parse_chunk_labels(const std::filesystem::path& path,
                                  const ClassRegistry& classes) {
    auto in = detail::open_input(path, kModule);
    ChunkLabelFile file;
    std::map<int, ChunkLabel> by_chunk;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.rfind("# chunks:", 0) == 0) {
            try {
                file.declared_chunks = std::stoi(line.substr(9));
            } catch (const std::exception&) {
                throw ValidationError(kModule,
                                      "line " + std::to_string(line_no) +
                                          ": malformed chunk-count header");
            }
            continue;
        }
        const auto parsed = parse_line(line, line_no, classes);
        if (!parsed) continue;
        auto& entry = by_chunk[parsed->index];
        entry.chunk_index = parsed->index;
        entry.boxes.push_back(parsed->box);
    }
    file.chunks.reserve(by_chunk.size());
    for (auto& [_, label] : by_chunk) {
        file.chunks.push_back(std::move(label));
    }
    if (file.declared_chunks >= 0) {
        for (const auto& chunk : file.chunks) {
            if (chunk.chunk_index >= file.declared_chunks) {
                throw ValidationError(
                    kModule, "chunk index " + std::to_string(chunk.chunk_index) +
                                 " beyond declared count " +
                                 std::to_string(file.declared_chunks));
            }
        }
    }
    return file;
}

} // namespace pce
