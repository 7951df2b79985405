#pragma once

namespace cv2design {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cv2design
