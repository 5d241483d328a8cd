#include "sphoc/alphabet.hpp"

#include "sphoc/error.hpp"

namespace sphoc {

CharClassId classify_char(char32_t c) noexcept {
    if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
    if (c >= U'a' && c <= U'z') return CharClassId{static_cast<std::uint8_t>(1 + (c - U'a'))};
    if (c >= U'0' && c <= U'9') return CharClassId{static_cast<std::uint8_t>(27 + (c - U'0'))};
    return kPunctuation;
}

std::u32string decode_utf8(std::string_view utf8) {
    constexpr char32_t kReplacement = 0xFFFD;
    std::u32string out;
    out.reserve(utf8.size());
    std::size_t i = 0;
    while (i < utf8.size()) {
        const auto lead = static_cast<unsigned char>(utf8[i]);
        std::size_t extra = 0;
        char32_t cp = 0;
        if (lead < 0x80) {
            cp = lead;
        } else if ((lead & 0xE0) == 0xC0) {
            extra = 1;
            cp = lead & 0x1F;
        } else if ((lead & 0xF0) == 0xE0) {
            extra = 2;
            cp = lead & 0x0F;
        } else if ((lead & 0xF8) == 0xF0) {
            extra = 3;
            cp = lead & 0x07;
        } else {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        if (i + extra >= utf8.size() && extra > 0) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t k = 1; k <= extra; ++k) {
            const auto cont = static_cast<unsigned char>(utf8[i + k]);
            if ((cont & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (cont & 0x3F);
        }
        // Reject overlong forms, surrogates and out-of-range scalars.
        static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
        if (!ok || cp < kMinForLength[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += extra + 1;
    }
    return out;
}

std::vector<CharClassId> transcription_to_classes(std::string_view utf8) {
    if (utf8.empty()) throw Error(ErrorCode::EmptyTranscription, "transcription has no characters");
    const std::u32string scalars = decode_utf8(utf8);
    std::vector<CharClassId> classes;
    classes.reserve(scalars.size());
    for (char32_t c : scalars) classes.push_back(classify_char(c));
    return classes;
}

std::string fold_case(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

}  // namespace sphoc
