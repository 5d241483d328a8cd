#pragma once

#include <string>
#include <vector>

#include "sphoc/geometry.hpp"

namespace sphoc {

struct WordAnnotation {
    Quad quad;
    std::string transcription;
};

struct SceneAnnotation {
    int image_width = 0;
    int image_height = 0;
    std::vector<WordAnnotation> words;
};

/// Clamps every vertex into [0, image_width] x [0, image_height].
void clamp_to_image(SceneAnnotation& scene);

}  // namespace sphoc
