#ifndef RCX_VERSION_HPP
#define RCX_VERSION_HPP

#ifndef RCX_VERSION
#define RCX_VERSION "0.3.0"
#endif

namespace rcx {
inline constexpr const char* kVersion = RCX_VERSION;
}

#endif  // RCX_VERSION_HPP
