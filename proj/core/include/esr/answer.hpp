#pragma once

namespace esr {

/// Outcome of a dichotomic property measurement.
enum class Answer { Yes, No };

}  // namespace esr
