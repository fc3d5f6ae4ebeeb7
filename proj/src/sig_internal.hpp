#pragma once

namespace pdwm {
// One-time libsodium init, shared by the sign and verify translation units.
void sodium_ready();
}  // namespace pdwm
