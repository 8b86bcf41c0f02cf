#ifndef PHASEQUANT_VERSION_HPP
#define PHASEQUANT_VERSION_HPP

namespace phasequant {

inline constexpr const char* kVersion = "0.1.0";

} // namespace phasequant

#endif
