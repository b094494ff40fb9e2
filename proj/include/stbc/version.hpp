#ifndef STBC_VERSION_HPP
#define STBC_VERSION_HPP

namespace stbc {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace stbc

#endif  // STBC_VERSION_HPP
