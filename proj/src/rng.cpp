// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include "stablewalk/rng.hpp"

namespace stablewalk::detail {

double normal_slow_path(RngState& rng, int layer, double u) noexcept {
    const auto& z = kZiggurat;
    for (;;) {
        if (layer == 0) {
            // Tail beyond R.
            double x = 0.0;
            double y = 0.0;
            do {
                x = std::log(uniform_open(rng)) / ZigguratTables::kR;
                y = std::log(uniform_open(rng));
            } while (-2.0 * y < x * x);
            return u < 0.0 ? x - ZigguratTables::kR : ZigguratTables::kR - x;
        }
        const double x = u * z.x[layer];
        const double f0 = std::exp(-0.5 * (z.x[layer] * z.x[layer] - x * x));
        const double f1 = std::exp(-0.5 * (z.x[layer + 1] * z.x[layer + 1] - x * x));
        if (f1 + uniform01(rng) * (f0 - f1) < 1.0) return x;

        const std::uint64_t bits = rng();
        layer = static_cast<int>(bits & 0x7f);
        u = 2.0 * (static_cast<double>(bits >> 11) * 0x1.0p-53) - 1.0;
        if (std::fabs(u) < z.ratio[layer]) return u * z.x[layer];
    }
}

}  // namespace stablewalk::detail
