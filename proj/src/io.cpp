#include "superpca/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace superpca {

namespace {

std::ifstream open_input(const std::string& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) throw FormatError(path + ": cannot open for reading");
    return in;
}

std::ofstream open_output(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw FormatError(path + ": cannot open for writing");
    return out;
}

std::uint32_t float_bits_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

void store_float_le(float v, unsigned char* p) {
    const std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
    p[0] = static_cast<unsigned char>(bits & 0xff);
    p[1] = static_cast<unsigned char>(bits >> 8 & 0xff);
    p[2] = static_cast<unsigned char>(bits >> 16 & 0xff);
    p[3] = static_cast<unsigned char>(bits >> 24 & 0xff);
}

}  // namespace

HsiCube read_hsif(const std::string& path) {
    std::ifstream in = open_input(path, std::ios::binary);

    std::string header;
    if (!std::getline(in, header))
        throw FormatError(path + ": missing header line");
    const std::size_t header_end = header.size() + 1;  // includes the newline

    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(header);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": malformed JSON header: " + e.what());
    }
    if (!meta.is_object()) throw FormatError(path + ": header is not a JSON object");

    for (const char* key : {"rows", "cols", "bands", "dtype", "interleave", "byteorder"})
        if (!meta.contains(key)) throw FormatError(path + ": header missing field '" + key + "'");

    if (meta["dtype"] != "f32")
        throw FormatError(path + ": unsupported dtype '" + meta["dtype"].dump() + "', expected \"f32\"");
    if (meta["interleave"] != "bsq")
        throw FormatError(path + ": unsupported interleave '" + meta["interleave"].dump() +
                          "', expected \"bsq\"");
    if (meta["byteorder"] != "le")
        throw FormatError(path + ": unsupported byteorder '" + meta["byteorder"].dump() +
                          "', expected \"le\"");

    const long long rows = meta["rows"].is_number_integer() ? meta["rows"].get<long long>() : -1;
    const long long cols = meta["cols"].is_number_integer() ? meta["cols"].get<long long>() : -1;
    const long long bands = meta["bands"].is_number_integer() ? meta["bands"].get<long long>() : -1;
    if (rows < 1 || cols < 1 || bands < 1)
        throw FormatError(path + ": rows/cols/bands must be positive integers");

    const std::size_t count = static_cast<std::size_t>(rows * cols * bands);
    const std::size_t payload = count * 4;
    std::vector<unsigned char> bytes(payload);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(payload));
    const std::size_t got = static_cast<std::size_t>(in.gcount());
    if (got < payload) {
        std::ostringstream msg;
        msg << path << ": truncated payload at byte offset " << header_end + got << " (expected "
            << payload << " payload bytes, got " << got << ")";
        throw FormatError(msg.str());
    }
    char extra;
    if (in.read(&extra, 1)) {
        std::ostringstream msg;
        msg << path << ": trailing data at byte offset " << header_end + payload;
        throw FormatError(msg.str());
    }

    HsiCube cube(static_cast<int>(rows), static_cast<int>(cols), static_cast<int>(bands));
    for (std::size_t i = 0; i < count; ++i)
        cube.data[i] = std::bit_cast<float>(float_bits_le(bytes.data() + i * 4));
    return cube;
}

void write_hsif(const HsiCube& cube, const std::string& path) {
    std::ofstream out = open_output(path, std::ios::binary);
    out << "{\"rows\":" << cube.rows << ",\"cols\":" << cube.cols << ",\"bands\":" << cube.bands
        << ",\"dtype\":\"f32\",\"interleave\":\"bsq\",\"byteorder\":\"le\"}\n";
    std::vector<unsigned char> bytes(cube.data.size() * 4);
    for (std::size_t i = 0; i < cube.data.size(); ++i)
        store_float_le(static_cast<float>(cube.data[i]), bytes.data() + i * 4);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError(path + ": write failed");
}

LabelMap read_labels(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ": empty file");

    int rows = 0, cols = 0;
    {
        std::istringstream head(line);
        if (!(head >> rows >> cols) || rows < 1 || cols < 1)
            throw FormatError(path + ": line 1: expected \"rows cols\"");
        std::string rest;
        if (head >> rest) throw FormatError(path + ": line 1: unexpected token '" + rest + "'");
    }

    LabelMap map(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!std::getline(in, line))
            throw FormatError(path + ": line " + std::to_string(r + 2) + ": missing row");
        std::istringstream row(line);
        for (int c = 0; c < cols; ++c) {
            int v;
            if (!(row >> v)) {
                std::string tok;
                std::istringstream retry(line);
                for (int skip = 0; skip < c && retry >> tok; ++skip) {}
                retry >> tok;
                throw FormatError(path + ": line " + std::to_string(r + 2) +
                                  (tok.empty() ? ": missing value" : ": bad token '" + tok + "'"));
            }
            if (v < 0)
                throw FormatError(path + ": line " + std::to_string(r + 2) + ": negative label");
            map.labels[static_cast<std::size_t>(r) * cols + c] = v;
        }
        std::string rest;
        if (row >> rest)
            throw FormatError(path + ": line " + std::to_string(r + 2) + ": unexpected token '" +
                              rest + "'");
    }
    return map;
}

void write_labels(const LabelMap& map, const std::string& path) {
    std::ofstream out = open_output(path);
    out << map.rows << ' ' << map.cols << '\n';
    for (int r = 0; r < map.rows; ++r) {
        for (int c = 0; c < map.cols; ++c) {
            if (c) out << ' ';
            out << map.at(r, c);
        }
        out << '\n';
    }
    if (!out) throw FormatError(path + ": write failed");
}

HsiCube read_text_cube(const std::string& path) {
    std::ifstream in = open_input(path);
    int rows = 0, cols = 0, bands = 0;
    if (!(in >> rows >> cols >> bands) || rows < 1 || cols < 1 || bands < 1)
        throw FormatError(path + ": expected header \"rows cols bands\"");
    HsiCube cube(rows, cols, bands);
    for (std::size_t i = 0; i < cube.value_count(); ++i) {
        if (!(in >> cube.data[i]))
            throw FormatError(path + ": bad or missing value at index " + std::to_string(i));
        if (!std::isfinite(cube.data[i]))
            throw FormatError(path + ": non-finite value at index " + std::to_string(i));
    }
    double extra;
    if (in >> extra) throw FormatError(path + ": trailing values beyond rows*cols*bands");
    return cube;
}

void write_text_cube(const HsiCube& cube, const std::string& path) {
    std::ofstream out = open_output(path);
    out.precision(9);
    out << cube.rows << ' ' << cube.cols << ' ' << cube.bands << '\n';
    const std::size_t plane = cube.plane();
    for (int b = 0; b < cube.bands; ++b) {
        for (std::size_t p = 0; p < plane; ++p) {
            if (p) out << ' ';
            out << cube.data[plane * b + p];
        }
        out << '\n';
    }
    if (!out) throw FormatError(path + ": write failed");
}

const std::array<std::array<unsigned char, 3>, 17>& label_palette() {
    // entry 0 = unlabeled (black), then 16 class colors
    static const std::array<std::array<unsigned char, 3>, 17> palette = {{
        {0, 0, 0},        // 0  unlabeled
        {230, 25, 75},    // 1  red
        {60, 180, 75},    // 2  green
        {255, 225, 25},   // 3  yellow
        {0, 130, 200},    // 4  blue
        {245, 130, 48},   // 5  orange
        {145, 30, 180},   // 6  purple
        {70, 240, 240},   // 7  cyan
        {240, 50, 230},   // 8  magenta
        {210, 245, 60},   // 9  lime
        {250, 190, 212},  // 10 pink
        {0, 128, 128},    // 11 teal
        {220, 190, 255},  // 12 lavender
        {170, 110, 40},   // 13 brown
        {255, 250, 200},  // 14 beige
        {128, 0, 0},      // 15 maroon
        {170, 255, 195},  // 16 mint
    }};
    return palette;
}

void render_map(const LabelMap& map, const std::string& path) {
    const auto& palette = label_palette();
    for (int v : map.labels)
        if (v < 0 || v >= static_cast<int>(palette.size()))
            throw FormatError(path + ": palette exhausted, label " + std::to_string(v) +
                              " exceeds the 16 available class colors");

    std::ofstream out = open_output(path, std::ios::binary);
    out << "P6\n" << map.cols << ' ' << map.rows << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(map.cols) * 3);
    for (int r = 0; r < map.rows; ++r) {
        for (int c = 0; c < map.cols; ++c) {
            const auto& rgb = palette[map.at(r, c)];
            row[static_cast<std::size_t>(c) * 3 + 0] = rgb[0];
            row[static_cast<std::size_t>(c) * 3 + 1] = rgb[1];
            row[static_cast<std::size_t>(c) * 3 + 2] = rgb[2];
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw FormatError(path + ": write failed");
}

LabelMap to_label_map(const RegionMap& map) {
    LabelMap out(map.rows, map.cols);
    out.labels.assign(map.labels.begin(), map.labels.end());
    return out;
}

RegionMap region_map_from_labels(const LabelMap& map, bool connected) {
    RegionMap out;
    out.rows = map.rows;
    out.cols = map.cols;
    out.connected = connected;
    out.labels.assign(map.labels.begin(), map.labels.end());
    int max_label = -1;
    for (int v : out.labels) max_label = std::max(max_label, v);
    out.region_count = max_label + 1;
    // region maps must be exhaustive and compact
    std::vector<char> seen(static_cast<std::size_t>(out.region_count), 0);
    for (int v : out.labels) seen[v] = 1;
    for (char s : seen)
        if (!s) throw FormatError("region map has empty region ids");
    return out;
}

}  // namespace superpca
