#include "pce/video_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string>
#include <vector>

#include "binary_io.hpp"

namespace pce {

namespace fs = std::filesystem;

namespace {

constexpr const char* kModule = "video-io";
constexpr const char* kVideoMagic = "PCEV1";

Video load_raw_container(const fs::path& path) {
    auto in = detail::open_input(path, kModule);
    detail::expect_magic(in, kVideoMagic, kModule);
    const uint32_t height = detail::read_u32_le(in, 5, kModule, "height");
    const uint32_t width = detail::read_u32_le(in, 9, kModule, "width");
    const uint32_t frames = detail::read_u32_le(in, 13, kModule, "frame count");
    if (height == 0 || width == 0 || frames == 0) {
        throw FormatError(kModule, "zero dimension in header of '" +
                                       path.string() + "'");
    }
    const std::size_t expected =
        static_cast<std::size_t>(height) * width * frames;
    std::vector<uint8_t> pixels(expected);
    in.read(reinterpret_cast<char*>(pixels.data()),
            static_cast<std::streamsize>(expected));
    if (static_cast<std::size_t>(in.gcount()) != expected) {
        throw DimensionError(
            kModule, "payload of '" + path.string() + "' holds " +
                         std::to_string(in.gcount()) + " bytes, header " +
                         std::to_string(height) + "x" + std::to_string(width) +
                         "x" + std::to_string(frames) + " requires " +
                         std::to_string(expected));
    }
    if (in.get() != std::ifstream::traits_type::eof()) {
        throw DimensionError(kModule, "trailing bytes after declared payload in '" +
                                          path.string() + "'");
    }
    return Video(static_cast<int>(height), static_cast<int>(width),
                 static_cast<int>(frames), std::move(pixels));
}

void save_raw_container(const Video& video, const fs::path& path) {
    auto out = detail::open_output(path, kModule);
    out.write(kVideoMagic, 5);
    detail::write_u32_le(out, static_cast<uint32_t>(video.height()));
    detail::write_u32_le(out, static_cast<uint32_t>(video.width()));
    detail::write_u32_le(out, static_cast<uint32_t>(video.frame_count()));
    out.write(reinterpret_cast<const char*>(video.pixels().data()),
              static_cast<std::streamsize>(video.pixels().size()));
    if (!out) {
        throw IoError(kModule, "write failed for '" + path.string() + "'");
    }
}

// Reads one whitespace-delimited PGM header token, skipping '#' comments.
// `offset` tracks the absolute byte position for error messages.
std::string next_pgm_token(std::istream& in, std::size_t& offset,
                           const fs::path& path) {
    std::string token;
    int c;
    while ((c = in.get()) != std::ifstream::traits_type::eof()) {
        ++offset;
        if (c == '#') {
            while ((c = in.get()) != std::ifstream::traits_type::eof()) {
                ++offset;
                if (c == '\n') break;
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!token.empty()) return token;
            continue;
        }
        token.push_back(static_cast<char>(c));
    }
    if (token.empty()) {
        throw FormatError(kModule, "truncated header at byte offset " +
                                       std::to_string(offset) + " in '" +
                                       path.string() + "'");
    }
    return token;
}

int parse_pgm_int(const std::string& token, std::size_t offset,
                  const fs::path& path) {
    if (token.empty() ||
        !std::all_of(token.begin(), token.end(),
                     [](unsigned char ch) { return std::isdigit(ch); })) {
        throw FormatError(kModule, "non-numeric header token '" + token +
                                       "' at byte offset " +
                                       std::to_string(offset - token.size()) +
                                       " in '" + path.string() + "'");
    }
    return std::stoi(token);
}

} // namespace

Frame load_pgm(const fs::path& path) {
    auto in = detail::open_input(path, kModule);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (in.gcount() != 2 || magic[0] != 'P' || magic[1] != '5') {
        throw FormatError(kModule, "bad magic (expected 'P5') at byte offset 0 in '" +
                                       path.string() + "'");
    }
    std::size_t offset = 2;
    const int width = parse_pgm_int(next_pgm_token(in, offset, path), offset, path);
    const int height = parse_pgm_int(next_pgm_token(in, offset, path), offset, path);
    const int maxval = parse_pgm_int(next_pgm_token(in, offset, path), offset, path);
    if (width < 1 || height < 1) {
        throw FormatError(kModule, "zero dimension in header of '" +
                                       path.string() + "'");
    }
    if (maxval != 255) {
        throw FormatError(kModule, "unsupported maxval " +
                                       std::to_string(maxval) + " in '" +
                                       path.string() + "' (only 255)");
    }
    const std::size_t expected =
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<uint8_t> pixels(expected);
    in.read(reinterpret_cast<char*>(pixels.data()),
            static_cast<std::streamsize>(expected));
    if (static_cast<std::size_t>(in.gcount()) != expected) {
        throw DimensionError(kModule,
                             "raster of '" + path.string() + "' holds " +
                                 std::to_string(in.gcount()) +
                                 " bytes, header requires " +
                                 std::to_string(expected));
    }
    return Frame(height, width, std::move(pixels));
}

void save_pgm(const Frame& frame, const fs::path& path) {
    auto out = detail::open_output(path, kModule);
    out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.pixels.data()),
              static_cast<std::streamsize>(frame.pixels.size()));
    if (!out) {
        throw IoError(kModule, "write failed for '" + path.string() + "'");
    }
}

Video load_video(const fs::path& path, VideoFormat format) {
    if (format == VideoFormat::RawContainer) {
        return load_raw_container(path);
    }

    if (!fs::is_directory(path)) {
        throw IoError(kModule, "'" + path.string() +
                                   "' is not a directory of PGM frames");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
            files.push_back(entry.path());
        }
    }
    if (files.empty()) {
        throw IoError(kModule, "no .pgm files in '" + path.string() + "'");
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) {
                  return a.filename().string() < b.filename().string();
              });

    Frame first = load_pgm(files.front());
    std::vector<uint8_t> pixels;
    pixels.reserve(first.pixel_count() * files.size());
    pixels.insert(pixels.end(), first.pixels.begin(), first.pixels.end());
    for (std::size_t i = 1; i < files.size(); ++i) {
        Frame f = load_pgm(files[i]);
        if (f.width != first.width || f.height != first.height) {
            throw DimensionError(
                kModule, "'" + files[i].filename().string() + "' is " +
                             std::to_string(f.height) + "x" +
                             std::to_string(f.width) + ", sequence began " +
                             std::to_string(first.height) + "x" +
                             std::to_string(first.width));
        }
        pixels.insert(pixels.end(), f.pixels.begin(), f.pixels.end());
    }
    return Video(first.height, first.width, static_cast<int>(files.size()),
                 std::move(pixels));
}

void save_video(const Video& video, const fs::path& path, VideoFormat format) {
    if (format == VideoFormat::RawContainer) {
        save_raw_container(video, path);
        return;
    }

    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec || !fs::is_directory(path)) {
        throw IoError(kModule, "cannot create directory '" + path.string() + "'");
    }
    for (int t = 0; t < video.frame_count(); ++t) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%06d.pgm", t);
        save_pgm(video.frame(t), path / name);
    }
}

} // namespace pce
