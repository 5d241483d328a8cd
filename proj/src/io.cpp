#include "sphoc/io.hpp"

#include <fmt/format.h>

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sphoc/error.hpp"

namespace sphoc::io {
namespace {

std::uint32_t to_little(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    return ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) | (v >> 24);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    const std::uint32_t le = to_little(v);
    char bytes[4];
    std::memcpy(bytes, &le, 4);
    out.write(bytes, 4);
}

std::uint32_t get_u32(const char* bytes) {
    std::uint32_t v;
    std::memcpy(&v, bytes, 4);
    return to_little(v);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return lines;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view field, std::size_t line_no, std::string_view column) {
    field = trim(field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        parse_fail(line_no, fmt::format("bad {} value '{}'", column, field));
    return v;
}

}  // namespace

void write_tensor(std::ostream& out, const SoftPhocTensor& tensor) {
    out.write(kTensorMagic.data(), kTensorMagic.size());
    put_u32(out, static_cast<std::uint32_t>(tensor.height()));
    put_u32(out, static_cast<std::uint32_t>(tensor.width()));
    put_u32(out, static_cast<std::uint32_t>(SoftPhocTensor::channels()));
    const auto data = tensor.data();
    std::vector<char> payload(data.size() * 4);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::uint32_t le = to_little(std::bit_cast<std::uint32_t>(static_cast<float>(data[i])));
        std::memcpy(payload.data() + 4 * i, &le, 4);
    }
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw Error(ErrorCode::IoError, "failed to write tensor");
}

void write_tensor(const std::filesystem::path& path, const SoftPhocTensor& tensor) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    write_tensor(out, tensor);
}

SoftPhocTensor read_tensor(std::istream& in) {
    char header[20];
    if (!in.read(header, sizeof header)) throw Error(ErrorCode::BadTensorFile, "truncated header");
    if (std::memcmp(header, kTensorMagic.data(), kTensorMagic.size()) != 0)
        throw Error(ErrorCode::BadTensorFile, "bad magic");
    const std::uint32_t height = get_u32(header + 8);
    const std::uint32_t width = get_u32(header + 12);
    const std::uint32_t channels = get_u32(header + 16);
    if (channels != kNumClasses)
        throw Error(ErrorCode::BadTensorFile, fmt::format("expected {} channels, got {}", kNumClasses, channels));
    const std::uint64_t count = std::uint64_t{height} * width * channels;
    if (count > (std::uint64_t{1} << 32)) throw Error(ErrorCode::BadTensorFile, "tensor too large");

    std::vector<char> payload(static_cast<std::size_t>(count) * 4);
    if (!in.read(payload.data(), static_cast<std::streamsize>(payload.size())))
        throw Error(ErrorCode::BadTensorFile, "payload shorter than header declares");
    if (in.peek() != std::char_traits<char>::eof())
        throw Error(ErrorCode::BadTensorFile, "trailing bytes after payload");

    SoftPhocTensor tensor(height, width);
    auto data = tensor.data();
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = static_cast<double>(std::bit_cast<float>(get_u32(payload.data() + 4 * i)));
    return tensor;
}

SoftPhocTensor read_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return read_tensor(in);
}

SoftPhocTensor quantize_to_float(const SoftPhocTensor& tensor) {
    SoftPhocTensor out = tensor;
    for (double& v : out.data()) v = static_cast<double>(static_cast<float>(v));
    return out;
}

std::vector<WordAnnotation> parse_annotation(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::vector<WordAnnotation> words;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view rest = lines[i];
        if (is_blank(rest)) continue;

        std::array<double, 8> coords{};
        for (std::size_t f = 0; f < 8; ++f) {
            const std::size_t comma = rest.find(',');
            if (comma == std::string_view::npos)
                parse_fail(line_no, fmt::format("expected 8 coordinates and a transcription, found {} fields", f + 1));
            const std::string_view field = trim(rest.substr(0, comma));
            long value = 0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
                parse_fail(line_no, fmt::format("coordinate {} is not an integer: '{}'", f + 1, field));
            coords[f] = static_cast<double>(value);
            rest.remove_prefix(comma + 1);
        }
        const std::string_view transcription = trim(rest);
        if (transcription == "###") continue;
        if (transcription.empty()) parse_fail(line_no, "empty transcription");

        WordAnnotation word;
        for (std::size_t v = 0; v < 4; ++v) word.quad[v] = {coords[2 * v], coords[2 * v + 1]};
        word.transcription = std::string(transcription);
        try {
            require_valid_quad(word.quad);
        } catch (const Error&) {
            parse_fail(line_no, "degenerate or self-intersecting quadrilateral");
        }
        words.push_back(std::move(word));
    }
    return words;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<WordAnnotation> read_annotation(const std::filesystem::path& path) {
    return parse_annotation(read_file(path));
}

SceneAnnotation read_scene(const std::filesystem::path& path, int image_width, int image_height) {
    SceneAnnotation scene{image_width, image_height, read_annotation(path)};
    clamp_to_image(scene);
    return scene;
}

std::vector<std::string> parse_queries(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::vector<std::string> queries;
    for (std::string_view line : split_lines(text)) {
        line = trim(line);
        if (!line.empty()) queries.emplace_back(line);
    }
    return queries;
}

std::string format_record(const SpotRecord& record) {
    if (!record.detection)
        return fmt::format("{}\tnot-found\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-", record.query);
    const LineSegment& s = record.detection->segment;
    std::string line = fmt::format("{}\tfound\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.9f}", record.query,
                                   s.x1, s.y1, s.x2, s.y2, s.rho, s.theta, record.detection->dtw_distance);
    if (record.box) {
        const BoundingBox& b = *record.box;
        line += fmt::format("\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}", b.center.x, b.center.y, b.width, b.height);
    } else {
        line += "\t-\t-\t-\t-";
    }
    return line;
}

void write_records(std::ostream& out, const std::vector<SpotRecord>& records) {
    out << kDetectionHeader << '\n';
    for (const SpotRecord& r : records) out << format_record(r) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "failed to write detections");
}

std::vector<SpotRecord> parse_records(std::string_view text) {
    static constexpr std::string_view kColumns[] = {"query", "status", "x1",      "y1",      "x2",     "y2",    "rho",
                                                    "theta", "dtw",    "bbox_cx", "bbox_cy", "bbox_w", "bbox_h"};
    std::vector<SpotRecord> records;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const std::string_view line = lines[i];
        if (is_blank(line) || line.front() == '#') continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        if (fields.size() != std::size(kColumns))
            parse_fail(line_no, fmt::format("expected {} tab-separated columns, found {}", std::size(kColumns), fields.size()));

        SpotRecord record;
        record.query = std::string(fields[0]);
        if (record.query.empty()) parse_fail(line_no, "empty query");
        if (fields[1] == "not-found") {
            records.push_back(std::move(record));
            continue;
        }
        if (fields[1] != "found") parse_fail(line_no, fmt::format("unknown status '{}'", fields[1]));

        double v[11];
        for (std::size_t c = 0; c < 7; ++c) v[c] = parse_double(fields[c + 2], line_no, kColumns[c + 2]);
        Detection detection;
        detection.query = record.query;
        detection.segment = LineSegment{v[0], v[1], v[2], v[3], v[4], v[5], 0};
        detection.dtw_distance = v[6];
        record.detection = detection;
        if (fields[9] != "-") {
            for (std::size_t c = 7; c < 11; ++c) v[c] = parse_double(fields[c + 2], line_no, kColumns[c + 2]);
            record.box = BoundingBox{{v[7], v[8]}, v[9], v[10]};
        }
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace sphoc::io
