#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphoc/annotation.hpp"
#include "sphoc/bbox.hpp"
#include "sphoc/spotting.hpp"
#include "sphoc/tensor.hpp"

namespace sphoc::io {

// Tensor file: 8-byte magic "SPHOC\0v1", then height, width, channels as
// little-endian u32, then height*width*channels little-endian f32,
// row-major, channel-fastest.
inline constexpr std::array<char, 8> kTensorMagic{'S', 'P', 'H', 'O', 'C', '\0', 'v', '1'};

/// Values are narrowed to float32 on write.
void write_tensor(std::ostream& out, const SoftPhocTensor& tensor);
void write_tensor(const std::filesystem::path& path, const SoftPhocTensor& tensor);
/// Throws Error{BadTensorFile} on a malformed header or truncated payload.
SoftPhocTensor read_tensor(std::istream& in);
SoftPhocTensor read_tensor(const std::filesystem::path& path);

/// Rounds every value through float32, matching what write_tensor stores.
SoftPhocTensor quantize_to_float(const SoftPhocTensor& tensor);

/// ICDAR-style ground truth: "x1,y1,...,x4,y4,transcription" per line. A UTF-8
/// BOM and CRLF endings are accepted; "###" words and blank lines are skipped.
/// Throws Error{ParseError} naming the 1-based line number.
std::vector<WordAnnotation> parse_annotation(std::string_view text);
SceneAnnotation read_scene(const std::filesystem::path& path, int image_width, int image_height);
std::vector<WordAnnotation> read_annotation(const std::filesystem::path& path);

/// One query per non-blank line.
std::vector<std::string> parse_queries(std::string_view text);

/// One row of spot output.
struct SpotRecord {
    std::string query;
    std::optional<Detection> detection;
    std::optional<BoundingBox> box;
};

// Detection file: tab-separated, one record per line, '#' comment lines.
// Columns: query status x1 y1 x2 y2 rho theta dtw bbox_cx bbox_cy bbox_w bbox_h
// status is "found" or "not-found"; a not-found row has "-" in every numeric column.
inline constexpr std::string_view kDetectionHeader =
    "# query\tstatus\tx1\ty1\tx2\ty2\trho\ttheta\tdtw\tbbox_cx\tbbox_cy\tbbox_w\tbbox_h";

std::string format_record(const SpotRecord& record);
void write_records(std::ostream& out, const std::vector<SpotRecord>& records);
std::vector<SpotRecord> parse_records(std::string_view text);

std::string read_file(const std::filesystem::path& path);

}  // namespace sphoc::io
