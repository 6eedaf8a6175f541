// zel — error types and always-on contract checks.
// SPDX-License-Identifier: MIT
#ifndef ZEL_ERROR_HPP
#define ZEL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zel {

/// Malformed textual input.  |position| is a 0-based offset into the input.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// An operation was called outside its documented domain.
class precondition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A broken internal invariant: an exact division that was not exact, a
/// triangular system that was not triangular, an overflowed coefficient.
/// These indicate a bug (or an input far outside the supported scale) and
/// are never downgraded to a warning.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Contract checks stay active in release builds; all interesting failure
// modes here are algebraic, not performance-related.
#define ZEL_CHECK(cond, msg)                           \
    do {                                               \
        if (!(cond)) throw ::zel::internal_error(msg); \
    } while (0)

#define ZEL_REQUIRE(cond, msg)                             \
    do {                                                   \
        if (!(cond)) throw ::zel::precondition_error(msg); \
    } while (0)

} // namespace zel

#endif // ZEL_ERROR_HPP
