#include "faclkit/io.hpp"

#include "faclkit/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numeric>
#include <regex>
#include <sstream>

namespace faclkit {

static_assert(std::endian::native == std::endian::little,
              "NPY and IDX conversion assumes a little-endian host");

namespace {

std::vector<char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const char* p) {
    const auto* b = reinterpret_cast<const unsigned char*>(p);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
           std::uint32_t{b[3]};
}

void write_be32(std::ostream& os, std::uint32_t v) {
    const std::array<char, 4> b{static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                                static_cast<char>(v >> 8), static_cast<char>(v)};
    os.write(b.data(), 4);
}

constexpr std::uint32_t kIdxImageMagic = 0x00000803;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + path.string() + "'");
    return out;
}

} // namespace

// --------------------------------------------------------------------------- IDX

std::vector<std::size_t> read_idx_header(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    std::array<char, 16> header{};
    in.read(header.data(), header.size());
    if (in.gcount() != 16) throw FormatError("IDX file truncated in header: " + path.string());
    const std::uint32_t magic = read_be32(header.data());
    if (magic != kIdxImageMagic) {
        std::ostringstream os;
        os << "IDX bad magic 0x" << std::hex << magic << " in " << path.string()
           << " (expected 0x00000803)";
        throw FormatError(os.str());
    }
    return {read_be32(header.data() + 4), read_be32(header.data() + 8),
            read_be32(header.data() + 12)};
}

std::vector<DigitSprite> load_digit_corpus(const std::filesystem::path& path) {
    const auto dims = read_idx_header(path);
    const std::size_t count = dims[0], rows = dims[1], cols = dims[2];
    if (rows == 0 || cols == 0) throw FormatError("IDX image dimensions must be positive");
    const std::vector<char> bytes = slurp(path);
    const std::size_t need = 16 + count * rows * cols;
    if (bytes.size() < need) {
        throw FormatError("IDX file truncated: expected " + std::to_string(need) + " bytes, found " +
                          std::to_string(bytes.size()));
    }
    std::vector<DigitSprite> sprites;
    sprites.reserve(count);
    const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + 16);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> values(rows * cols);
        for (std::size_t k = 0; k < values.size(); ++k) {
            values[k] = static_cast<double>(data[i * rows * cols + k]) / 255.0;
        }
        sprites.push_back({Field(rows, cols, std::move(values)), i});
    }
    return sprites;
}

void write_idx_images(const std::filesystem::path& path, const std::vector<Field>& images) {
    if (images.empty()) throw ValidationError("write_idx_images: no images");
    for (const auto& im : images) require_same_shape(im, images.front(), "write_idx_images");
    auto out = open_out(path);
    write_be32(out, kIdxImageMagic);
    write_be32(out, static_cast<std::uint32_t>(images.size()));
    write_be32(out, static_cast<std::uint32_t>(images.front().rows()));
    write_be32(out, static_cast<std::uint32_t>(images.front().cols()));
    std::vector<char> buf(images.front().size());
    for (const auto& im : images) {
        for (std::size_t k = 0; k < buf.size(); ++k) {
            const double v = std::clamp(im.values()[k], 0.0, 1.0);
            buf[k] = static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0)));
        }
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    if (!out) throw FormatError("write failed: " + path.string());
}

// --------------------------------------------------------------------------- NPY

std::size_t NpyArray::element_count() const noexcept {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

void write_npy(const std::filesystem::path& path, const NpyArray& array) {
    if (array.data.size() != array.element_count()) {
        throw DimensionError("write_npy: data size does not match shape");
    }
    std::string dict = "{'descr': '<f4', 'fortran_order': False, 'shape': (";
    for (std::size_t i = 0; i < array.shape.size(); ++i) {
        dict += std::to_string(array.shape[i]);
        if (array.shape.size() == 1 || i + 1 < array.shape.size()) dict += ",";
        if (i + 1 < array.shape.size()) dict += " ";
    }
    dict += "), }";
    // magic(6) + version(2) + len(2) + dict + padding + '\n' is a multiple of 64.
    const std::size_t unpadded = 10 + dict.size() + 1;
    dict.append((64 - unpadded % 64) % 64, ' ');
    dict += '\n';
    if (dict.size() > 0xFFFF) throw FormatError("write_npy: header too long for v1.0");

    auto out = open_out(path);
    out.write("\x93NUMPY\x01\x00", 8);
    const auto len = static_cast<std::uint16_t>(dict.size());
    const std::array<char, 2> lenb{static_cast<char>(len & 0xFF), static_cast<char>(len >> 8)};
    out.write(lenb.data(), 2);
    out.write(dict.data(), static_cast<std::streamsize>(dict.size()));
    out.write(reinterpret_cast<const char*>(array.data.data()),
              static_cast<std::streamsize>(array.data.size() * sizeof(float)));
    if (!out) throw FormatError("write failed: " + path.string());
}

NpyArray read_npy(const std::filesystem::path& path) {
    const std::vector<char> bytes = slurp(path);
    if (bytes.size() < 10 || std::memcmp(bytes.data(), "\x93NUMPY", 6) != 0) {
        throw FormatError("not an NPY file: " + path.string());
    }
    const auto major = static_cast<unsigned char>(bytes[6]);
    std::size_t header_len = 0;
    std::size_t offset = 0;
    if (major == 1) {
        header_len = static_cast<unsigned char>(bytes[8]) |
                     (static_cast<std::size_t>(static_cast<unsigned char>(bytes[9])) << 8);
        offset = 10;
    } else if (major == 2 || major == 3) {
        if (bytes.size() < 12) throw FormatError("NPY header truncated: " + path.string());
        for (int i = 3; i >= 0; --i) {
            header_len = (header_len << 8) | static_cast<unsigned char>(bytes[8 + i]);
        }
        offset = 12;
    } else {
        throw FormatError("unsupported NPY version " + std::to_string(major));
    }
    if (bytes.size() < offset + header_len) throw FormatError("NPY header truncated: " + path.string());
    const std::string header(bytes.data() + offset, header_len);

    static const std::regex descr_re(R"('descr'\s*:\s*'([^']*)')");
    static const std::regex order_re(R"('fortran_order'\s*:\s*(True|False))");
    static const std::regex shape_re(R"('shape'\s*:\s*\(([^)]*)\))");
    std::smatch m;
    if (!std::regex_search(header, m, descr_re)) throw FormatError("NPY header lacks descr");
    const std::string descr = m[1];
    if (descr != "<f4" && descr != "<f8") {
        throw FormatError("NPY dtype '" + descr + "' unsupported (expected '<f4')");
    }
    if (!std::regex_search(header, m, order_re)) throw FormatError("NPY header lacks fortran_order");
    if (m[1] == "True") throw FormatError("NPY fortran_order arrays are not supported");
    if (!std::regex_search(header, m, shape_re)) throw FormatError("NPY header lacks shape");

    NpyArray array;
    std::stringstream dims(m[1].str());
    std::string item;
    while (std::getline(dims, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        if (!std::all_of(item.begin(), item.end(), ::isdigit)) {
            throw FormatError("NPY shape entry '" + item + "' is not an integer");
        }
        array.shape.push_back(std::stoull(item));
    }

    const std::size_t count = array.element_count();
    const std::size_t width = descr == "<f4" ? 4 : 8;
    const std::size_t data_start = offset + header_len;
    if (bytes.size() < data_start + count * width) {
        throw FormatError("NPY data truncated: expected " + std::to_string(count * width) +
                          " bytes in " + path.string());
    }
    array.data.resize(count);
    const char* src = bytes.data() + data_start;
    if (width == 4) {
        std::memcpy(array.data.data(), src, count * 4);
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            double d;
            std::memcpy(&d, src + 8 * i, 8);
            array.data[i] = static_cast<float>(d);
        }
    }
    return array;
}

// --------------------------------------------------------------------------- sequences

void write_sequences(const std::filesystem::path& path, const std::vector<Sequence>& sequences) {
    if (sequences.empty()) throw ValidationError("write_sequences: empty sequence list");
    const auto& first = sequences.front();
    NpyArray array;
    array.shape = {sequences.size(), first.length(), first.rows(), first.cols()};
    array.data.reserve(array.element_count());
    for (const auto& s : sequences) {
        if (s.length() != first.length() || s.rows() != first.rows() || s.cols() != first.cols()) {
            throw DimensionError("write_sequences: sequences must share length and frame shape");
        }
        for (const auto& f : s.frames()) {
            for (double v : f.values()) array.data.push_back(static_cast<float>(v));
        }
    }
    write_npy(path, array);
}

std::vector<Sequence> read_sequences(const std::filesystem::path& path) {
    const NpyArray array = read_npy(path);
    if (array.shape.size() != 4) {
        throw FormatError("sequence file must be 4-D [count, length, rows, cols], got " +
                          std::to_string(array.shape.size()) + "-D");
    }
    const std::size_t count = array.shape[0], length = array.shape[1];
    const std::size_t rows = array.shape[2], cols = array.shape[3];
    if (count == 0 || length == 0 || rows == 0 || cols == 0) {
        throw FormatError("sequence file has an empty dimension");
    }
    std::vector<Sequence> out;
    out.reserve(count);
    const float* p = array.data.data();
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<Field> frames;
        frames.reserve(length);
        for (std::size_t t = 0; t < length; ++t) {
            frames.emplace_back(rows, cols, std::vector<double>(p, p + rows * cols));
            p += rows * cols;
        }
        out.emplace_back(std::move(frames));
    }
    return out;
}

void write_field(const std::filesystem::path& path, const Field& field) {
    require_non_empty(field, "write_field");
    NpyArray array;
    array.shape = {field.rows(), field.cols()};
    array.data.assign(field.values().begin(), field.values().end());
    write_npy(path, array);
}

Field read_field(const std::filesystem::path& path) {
    const NpyArray array = read_npy(path);
    if (array.shape.size() < 2) throw FormatError("field file must be at least 2-D");
    for (std::size_t i = 0; i + 2 < array.shape.size(); ++i) {
        if (array.shape[i] != 1) throw FormatError("field file has a non-unit leading dimension");
    }
    const std::size_t rows = array.shape[array.shape.size() - 2];
    const std::size_t cols = array.shape.back();
    return Field(rows, cols, std::vector<double>(array.data.begin(), array.data.end()));
}

void write_fields(const std::filesystem::path& path, const std::vector<Field>& fields) {
    if (fields.empty()) throw ValidationError("write_fields: no fields");
    NpyArray array;
    array.shape = {fields.size(), fields.front().rows(), fields.front().cols()};
    for (const auto& f : fields) {
        require_same_shape(f, fields.front(), "write_fields");
        array.data.insert(array.data.end(), f.values().begin(), f.values().end());
    }
    write_npy(path, array);
}

std::vector<Field> read_fields(const std::filesystem::path& path) {
    const NpyArray array = read_npy(path);
    if (array.shape.size() == 2) {
        return {Field(array.shape[0], array.shape[1],
                      std::vector<double>(array.data.begin(), array.data.end()))};
    }
    if (array.shape.size() != 3) throw FormatError("field stack must be 3-D [count, rows, cols]");
    std::vector<Field> out;
    const std::size_t n = array.shape[1] * array.shape[2];
    for (std::size_t i = 0; i < array.shape[0]; ++i) {
        const float* p = array.data.data() + i * n;
        out.emplace_back(array.shape[1], array.shape[2], std::vector<double>(p, p + n));
    }
    return out;
}

} // namespace faclkit
