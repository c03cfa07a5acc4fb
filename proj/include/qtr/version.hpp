#ifndef QTR_VERSION_HPP
#define QTR_VERSION_HPP

namespace qtr {

inline constexpr const char kVersion[] = "0.1.0";

}  // namespace qtr

#endif  // QTR_VERSION_HPP
