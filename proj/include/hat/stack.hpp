#pragma once

#include <cstddef>
#include <functional>

namespace hat {

// The provers recurse through continuations, so deep searches need more
// than the default thread stack.
inline constexpr std::size_t kSearchStackBytes = std::size_t{1} << 30;

// Runs fn on a fresh thread with the given stack size and waits for it.
// An exception thrown by fn is rethrown in the caller.
void run_with_stack(const std::function<void()>& fn, std::size_t bytes = kSearchStackBytes);

}  // namespace hat
