#pragma once

// Little-endian stream helpers shared by the container readers/writers.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include "pce/error.hpp"

namespace pce::detail {

inline std::ofstream open_output(const std::filesystem::path& path,
                                 const char* module) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(module, "cannot open '" + path.string() + "' for writing");
    }
    return out;
}

inline std::ifstream open_input(const std::filesystem::path& path,
                                const char* module) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(module, "cannot open '" + path.string() + "' for reading");
    }
    return in;
}

inline void write_u32_le(std::ostream& out, uint32_t v) {
    const unsigned char bytes[4] = {
        static_cast<unsigned char>(v & 0xff),
        static_cast<unsigned char>((v >> 8) & 0xff),
        static_cast<unsigned char>((v >> 16) & 0xff),
        static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

inline void write_u64_le(std::ostream& out, uint64_t v) {
    write_u32_le(out, static_cast<uint32_t>(v & 0xffffffffu));
    write_u32_le(out, static_cast<uint32_t>(v >> 32));
}

inline void write_u16_le(std::ostream& out, uint16_t v) {
    const unsigned char bytes[2] = {
        static_cast<unsigned char>(v & 0xff),
        static_cast<unsigned char>((v >> 8) & 0xff)};
    out.write(reinterpret_cast<const char*>(bytes), 2);
}

// Readers report the byte offset of the failure so format errors can name it.
inline uint32_t read_u32_le(std::istream& in, std::size_t offset,
                            const char* module, const char* field) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    if (in.gcount() != 4) {
        throw FormatError(module, std::string("truncated header: ") + field +
                                      " at byte offset " +
                                      std::to_string(offset));
    }
    return static_cast<uint32_t>(bytes[0]) |
           (static_cast<uint32_t>(bytes[1]) << 8) |
           (static_cast<uint32_t>(bytes[2]) << 16) |
           (static_cast<uint32_t>(bytes[3]) << 24);
}

inline uint64_t read_u64_le(std::istream& in, std::size_t offset,
                            const char* module, const char* field) {
    const uint64_t lo = read_u32_le(in, offset, module, field);
    const uint64_t hi = read_u32_le(in, offset + 4, module, field);
    return lo | (hi << 32);
}

inline uint16_t read_u16_le(std::istream& in, std::size_t offset,
                            const char* module, const char* field) {
    unsigned char bytes[2];
    in.read(reinterpret_cast<char*>(bytes), 2);
    if (in.gcount() != 2) {
        throw FormatError(module, std::string("truncated payload: ") + field +
                                      " at byte offset " +
                                      std::to_string(offset));
    }
    return static_cast<uint16_t>(static_cast<uint16_t>(bytes[0]) |
                                 (static_cast<uint16_t>(bytes[1]) << 8));
}

inline void expect_magic(std::istream& in, const std::string& magic,
                         const char* module) {
    std::string got(magic.size(), '\0');
    in.read(got.data(), static_cast<std::streamsize>(magic.size()));
    if (in.gcount() != static_cast<std::streamsize>(magic.size()) ||
        got != magic) {
        std::size_t offset = 0;
        while (offset < magic.size() &&
               offset < static_cast<std::size_t>(in.gcount()) &&
               got[offset] == magic[offset]) {
            ++offset;
        }
        throw FormatError(module, "bad magic (expected '" + magic +
                                      "') at byte offset " +
                                      std::to_string(offset));
    }
}

} // namespace pce::detail
