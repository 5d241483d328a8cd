#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sphoc {

inline constexpr std::size_t kNumClasses = 38;
inline constexpr std::size_t kNumCharClasses = kNumClasses - 1;

/// Channel index in the 38-class space: 0 background, 1-26 a-z, 27-36 0-9, 37 other.
struct CharClassId {
    std::uint8_t index = 0;

    constexpr auto operator<=>(const CharClassId&) const = default;
};

inline constexpr CharClassId kBackground{0};
inline constexpr CharClassId kPunctuation{37};

/// Case-insensitive for ASCII letters; everything outside [a-z0-9] maps to kPunctuation.
CharClassId classify_char(char32_t c) noexcept;

/// Decodes UTF-8. Malformed sequences decode to U+FFFD, one per offending byte.
std::u32string decode_utf8(std::string_view utf8);

/// One class per Unicode scalar. Throws Error{EmptyTranscription} on "".
std::vector<CharClassId> transcription_to_classes(std::string_view utf8);

/// Lowercases ASCII letters only; used for transcription matching.
std::string fold_case(std::string_view s);

}  // namespace sphoc
