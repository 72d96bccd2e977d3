#ifndef AXISPROBE_VERSION_HPP
#define AXISPROBE_VERSION_HPP

namespace axisprobe {

inline constexpr const char* kToolName = "axisprobe";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace axisprobe

#endif
