#pragma once

#include <cmath>
#include <string>

#include "isorec/errors.hpp"

namespace isorec {

/// Loss families under which the isotonic minimizer is evaluated. All of
/// them are Bregman losses, so they share the same minimizer; gamma
/// deviance and QLIKE additionally require strictly positive responses
/// and fitted values.
enum class LossKind {
    Squared,
    GammaDeviance,
    Qlike,
};

inline const char* to_string(LossKind kind) {
    switch (kind) {
        case LossKind::Squared: return "squared";
        case LossKind::GammaDeviance: return "gamma-deviance";
        case LossKind::Qlike: return "qlike";
    }
    return "?";
}

inline bool requires_positive(LossKind kind) {
    return kind == LossKind::GammaDeviance || kind == LossKind::Qlike;
}

/// Per-sample loss L(y, mu). The gamma/QLIKE branch is the Bregman
/// divergence of phi(x) = -log x, which is nonnegative and zero iff
/// y == mu; gamma deviance is twice QLIKE.
inline double sample_loss(LossKind kind, double y, double mu) {
    switch (kind) {
        case LossKind::Squared: {
            const double d = y - mu;
            return d * d;
        }
        case LossKind::Qlike: {
            const double r = y / mu;
            return r - std::log(r) - 1.0;
        }
        case LossKind::GammaDeviance: {
            const double r = y / mu;
            return 2.0 * (r - std::log(r) - 1.0);
        }
    }
    return 0.0;
}

}  // namespace isorec
