#pragma once

#include <stdexcept>
#include <string>

namespace aabeta {

/// Base class for all library failures.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A size or range policy was violated (bad n, out-of-range message, ...).
struct size_error : error {
    using error::error;
};

/// A bounded retry budget was exhausted (prime sampling, key assembly).
struct retry_exhausted : error {
    using error::error;
};

/// A key or ciphertext file does not match the expected grammar.
struct parse_error : error {
    using error::error;
};

/// Block decoding failed: missing sentinel or malformed padding.
/// Usually means corruption or decryption under the wrong key.
struct codec_error : error {
    using error::error;
};

/// An attack was refused or aborted because it exceeds its work limit.
struct work_budget_error : error {
    using error::error;
};

} // namespace aabeta
