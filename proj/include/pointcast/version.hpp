#ifndef POINTCAST_VERSION_HPP
#define POINTCAST_VERSION_HPP

namespace pointcast {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pointcast

#endif
